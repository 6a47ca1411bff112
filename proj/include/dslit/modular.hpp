#pragma once

#include "dslit/doubleslit.hpp"

namespace dslit {

// Split of the half separation X = X_n + delta_X at an evaluation point (x, t):
// the X_n part contributes an exact multiple of 2 pi to the relative phase and
// is unobservable there; only delta_X carries physics.
struct ModularDecomposition {
    double X = 0.0;        // total half separation
    double X_n = 0.0;      // 2 pi n / kappa, kappa = x D t / (sigma0^2 sigma^2)
    double delta_X = 0.0;  // remainder, |delta_X * kappa| < 2 pi
    long n = 0;
    double phase_term = 0.0;       // full X part of phi12 at the point
    double remainder_phase = 0.0;  // -delta_X * kappa, in (-2 pi, 0]
};

enum class ShiftConvention { halved, unhalved };

struct MomentumShift {
    double value = 0.0;
    int sign = +1;  // which slit was opened second
};

// Defined for symmetric setups only (v_x must be 0); throws UndefinedSplit at
// x = 0 or t = 0 where the phase term vanishes and no split exists.
ModularDecomposition decompose(const SlitConfig& cfg, double x, double t);

// Momentum kick from opening the second slit, restricted to the delta_X part:
// +-m delta_X sigma_dot/sigma (= +-m delta_X D^2 t / (sigma^2 sigma0^2)).
// The halved convention carries the 1/2 from +-(hbar/2) d(phi12)/dx; unhalved
// doubles it.
MomentumShift momentum_shift(const SlitConfig& cfg, const ModularDecomposition& d, double t,
                             int sign = +1,
                             ShiftConvention convention = ShiftConvention::halved);

// Time derivative of the shift: +-m delta_X (sigma_ddot/sigma - (sigma_dot/sigma)^2),
// with sigma_ddot = u0^2 sigma0^2 / sigma^3. Crosses zero at t = sigma0/u0.
double momentum_shift_rate(const SlitConfig& cfg, const ModularDecomposition& d, double t,
                           int sign = +1,
                           ShiftConvention convention = ShiftConvention::halved);

// Long-time asymptote +-m delta_X / t of the shift.
double large_time_shift(const SlitConfig& cfg, const ModularDecomposition& d, double t,
                        int sign = +1,
                        ShiftConvention convention = ShiftConvention::halved);

}  // namespace dslit
