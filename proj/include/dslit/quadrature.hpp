#pragma once

#include <complex>
#include <functional>

namespace dslit {

struct QuadratureOptions {
    int initial_intervals = 1024;   // must be even
    int max_doublings = 10;         // caps the node count at initial * 2^max
    double abs_tolerance = 1e-8;    // on the Richardson estimate |I_2n - I_n|/15
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long nodes = 0;
};

struct ComplexQuadratureResult {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    long nodes = 0;
};

// Composite Simpson with interval doubling until the error estimate drops
// below tolerance. Throws QuadratureUnresolved if the budget runs out.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

ComplexQuadratureResult integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureOptions& opts = {});

}  // namespace dslit
