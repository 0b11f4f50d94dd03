#pragma once

// Reduced two-spin density matrix under pure dephasing.
//
// Basis order: |1,1>, |1,-1>, |-1,1>, |-1,-1> (spin labels m = +1 / -1),
// so basis_index(m1, m2) = (m1 == 1 ? 0 : 2) + (m2 == 1 ? 0 : 1).

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "dephase/decoherence.hpp"

namespace dephase {

using cdouble = std::complex<double>;

/// Spin labels (m1, m2) of basis vector i.
std::array<int, 2> basis_labels(int i);

/// Product of two Bloch-sphere spin states.
struct InitialProductState {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;

    /// Throws ConfigError for theta outside [0, pi] or phi outside [0, 2 pi).
    void validate() const;

    /// Both spins along +x.
    static InitialProductState x_state() { return {M_PI / 2, M_PI / 2, 0.0, 0.0}; }
};

struct GeneralInitialState {
    std::array<cdouble, 4> c{};

    /// Throws InvalidStateError unless sum |c|^2 = 1 to 1e-12.
    void validate() const;
};

struct TwoSpinState {
    Eigen::Matrix4cd rho;
};

struct FieldConfig {
    double h = 0.0;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Amplitudes cos(theta/2) for m = +1 and e^{i phi} sin(theta/2) for m = -1,
/// multiplied across the two spins.
GeneralInitialState bloch_product_to_general(const InitialProductState& init);

/// All four amplitudes equal to 1/2.
GeneralInitialState x_projected_state();

/// rho[m][n] = c_m c_n^* exp(-i h t (M - N) / 2) exp(-(M - N)^2 gamma)
///             exp(-i (M^2 - N^2) Delta),  M = m1 + m2, N = n1 + n2.
/// A divergent gamma zeroes every element with M != N.
TwoSpinState evolve(const GeneralInitialState& init, const DecoherenceFactors& df,
                    const FieldConfig& field, double t);

/// Projector onto U |psi> with U = diag(e^{-4 i Delta}, 1, 1, e^{-4 i Delta}).
TwoSpinState evolve_ideal(const GeneralInitialState& init, double delta);

/// Tr rho^2.
double purity(const TwoSpinState& state);

/// Throws InvalidStateError if the state is not Hermitian, unit-trace and
/// positive semidefinite within the tolerances above.
void validate_state(const TwoSpinState& state);

}  // namespace dephase
