#include "dslit/quadrature.hpp"

#include <cmath>

#include "dslit/errors.hpp"

namespace dslit {

namespace {

// One composite Simpson pass with n intervals (n even).
template <typename T, typename F>
T simpson(const F& f, double a, double b, long n) {
    const double h = (b - a) / double(n);
    T sum = f(a) + f(b);
    T odd{};
    T even{};
    for (long i = 1; i < n; i += 2) odd += f(a + h * double(i));
    for (long i = 2; i < n; i += 2) even += f(a + h * double(i));
    return (sum + 4.0 * odd + 2.0 * even) * (h / 3.0);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
    long n = opts.initial_intervals;
    if (n % 2) ++n;
    double prev = simpson<double>(f, a, b, n);
    for (int pass = 0; pass < opts.max_doublings; ++pass) {
        n *= 2;
        const double cur = simpson<double>(f, a, b, n);
        const double est = std::abs(cur - prev) / 15.0;
        if (est <= opts.abs_tolerance) return {cur, est, n + 1};
        prev = cur;
    }
    throw QuadratureUnresolved("Simpson quadrature did not reach tolerance within node budget");
}

ComplexQuadratureResult integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureOptions& opts) {
    long n = opts.initial_intervals;
    if (n % 2) ++n;
    std::complex<double> prev = simpson<std::complex<double>>(f, a, b, n);
    for (int pass = 0; pass < opts.max_doublings; ++pass) {
        n *= 2;
        const std::complex<double> cur = simpson<std::complex<double>>(f, a, b, n);
        const double est = std::abs(cur - prev) / 15.0;
        if (est <= opts.abs_tolerance) return {cur, est, n + 1};
        prev = cur;
    }
    throw QuadratureUnresolved("Simpson quadrature did not reach tolerance within node budget");
}

}  // namespace dslit
