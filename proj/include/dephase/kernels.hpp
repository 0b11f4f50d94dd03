#pragma once

// Integrand kernels for the decoherence factors, written to avoid
// cancellation at small arguments.

#include <cmath>

namespace dephase::kernels {

inline constexpr double kCothLaurentBelow = 1e-4;
inline constexpr double kSinSeriesBelow = 1e-3;

/// (1 - cos(w t)) / w^2 computed as 2 sin^2(w t / 2) / w^2.
inline double one_minus_cos_over_sq(double omega, double t) {
    const double s = std::sin(0.5 * omega * t);
    return 2.0 * s * s / (omega * omega);
}

/// coth(beta w / 2); Laurent form 2/x + x/6 for x = beta w < 1e-4.
inline double coth_half(double beta, double omega) {
    const double x = beta * omega;
    if (x < kCothLaurentBelow) {
        return 2.0 / x + x / 6.0;
    }
    if (x > 40.0) {
        return 1.0;  // 1 + 2 e^-x rounds to 1
    }
    return 1.0 / std::tanh(0.5 * x);
}

/// sin(x) - x; series -x^3/6 (1 - x^2/20) for |x| < 1e-3.
inline double sin_minus_x(double x) {
    if (std::abs(x) < kSinSeriesBelow) {
        const double x2 = x * x;
        return -x * x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) - x;
}

}  // namespace dephase::kernels
