#include "dephase/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>

#include "dephase/error.hpp"

namespace dephase {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (i != j) {
                s += a(i, j) * a(i, j);
            }
        }
    }
    return std::sqrt(s);
}

}  // namespace

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& input) {
    if (input.rows() != input.cols()) {
        throw ComputeError("eigenvalue solver needs a square matrix");
    }
    if (!input.allFinite()) {
        throw ComputeError("eigenvalue solver got a non-finite matrix entry");
    }
    Eigen::MatrixXd a = 0.5 * (input + input.transpose());
    const Eigen::Index n = a.rows();
    const double threshold = 1e-13 * std::max(1.0, a.norm());

    bool converged = off_diagonal_norm(a) < threshold;
    for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                // Rotation angle from the stable tangent formula.
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
        converged = off_diagonal_norm(a) < threshold;
    }
    if (!converged) {
        throw EigenNonConvergence("Jacobi eigenvalue iteration did not converge");
    }
    Eigen::VectorXd ev = a.diagonal();
    std::sort(ev.data(), ev.data() + ev.size());
    return ev;
}

std::array<double, 4> hermitian_eigenvalues(const Eigen::Matrix4cd& h) {
    Eigen::MatrixXd big(8, 8);
    const Eigen::Matrix4d re = h.real();
    const Eigen::Matrix4d im = h.imag();
    big << re, -im, im, re;
    const Eigen::VectorXd ev = symmetric_eigenvalues(big);
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) {
        out[i] = 0.5 * (ev(2 * i) + ev(2 * i + 1));
    }
    return out;
}

}  // namespace dephase
