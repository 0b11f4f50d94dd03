#pragma once

// Negativity N = sum over negative eigenvalues |L_i| of the partial
// transpose (maximum 1/2 for two qubits in this convention).

#include <array>
#include <string_view>

#include "dephase/decoherence.hpp"
#include "dephase/dynamics.hpp"

namespace dephase {

enum class NegativityMethod { ClosedForm, XStateSpectrum, NumericPT };

std::string_view method_name(NegativityMethod method);

struct NegativityResult {
    double value = 0.0;
    std::array<double, 4> eigenvalues{};  ///< spectrum of the partial transpose
    NegativityMethod method = NegativityMethod::NumericPT;
};

/// Eigenvalues whose magnitude is below this are treated as zero.
inline constexpr double kZeroEigenvalue = 1e-13;

/// Partial-transpose spectrum of the dephased x-state, in the order
///   L1,2 = (1 - A)/8 +- sqrt((1 - A)^2 + 16 e^{-8 gamma} sin^2 4 Delta) / 8
///   L3,4 = (3 + A)/8 +- sqrt((3 + A)^2 + 16 e^{-8 gamma} cos^2 4 Delta - 8 (1 + A)) / 8
/// with A = e^{-16 gamma}. Only L2 can be negative.
std::array<double, 4> x_state_pt_eigenvalues(double gamma, double delta);

/// Negativity of the dephased x-state, |L2| when L2 < 0. A divergent gamma
/// gives 0.
NegativityResult x_state_negativity(double gamma, double delta, bool gamma_divergent = false);
NegativityResult x_state_negativity(const DecoherenceFactors& df);

/// rho^{T_B}: swaps rho[(m1,m2),(n1,n2)] with rho[(m1,n2),(n1,m2)].
Eigen::Matrix4cd partial_transpose(const Eigen::Matrix4cd& rho);

/// Negativity of any two-spin state from the Jacobi spectrum of its partial
/// transpose. Validates the state first.
NegativityResult negativity(const TwoSpinState& state);

/// sum (|L| - L) / 2 with near-zero eigenvalues ignored.
double negativity_from_spectrum(const std::array<double, 4>& eigenvalues);

}  // namespace dephase
