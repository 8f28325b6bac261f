#pragma once

#include "ffml/core.hpp"

#include <cmath>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

namespace ffml {

/// Nodes and weights of an n-point rule on [-1, 1].
template <typename Scalar>
struct QuadratureRule {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
};

/// Gauss-Jacobi rule for the weight (1 - x)^alpha (1 + x)^beta, alpha, beta > -1,
/// built from the eigen-decomposition of the Jacobi matrix (Golub-Welsch).
template <typename Scalar>
[[nodiscard]] QuadratureRule<Scalar> gauss_jacobi(Eigen::Index n, Scalar alpha, Scalar beta) {
    if (n < 1) {
        throw DomainError("gauss_jacobi needs at least one node");
    }
    if (!(alpha > -1) || !(beta > -1)) {
        throw DomainError("gauss_jacobi needs alpha, beta > -1");
    }
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Scalar ab = alpha + beta;
    Matrix jacobi = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Scalar k = Scalar(i);
        const Scalar denom = (2 * k + ab) * (2 * k + ab + 2);
        jacobi(i, i) = (i == 0) ? (beta - alpha) / (ab + 2) : (beta * beta - alpha * alpha) / denom;
        if (i + 1 < n) {
            const Scalar j = k + 1;
            Scalar offdiag2;
            if (i == 0) {
                offdiag2 = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) * (2 + ab) * (3 + ab));
            } else {
                const Scalar c = 2 * j + ab;
                offdiag2 = 4 * j * (j + alpha) * (j + beta) * (j + ab) / (c * c * (c + 1) * (c - 1));
            }
            jacobi(i, i + 1) = jacobi(i + 1, i) = std::sqrt(offdiag2);
        }
    }
    const Scalar mass = std::pow(Scalar(2), ab + 1) * gamma(alpha + 1) * gamma(beta + 1) / gamma(ab + 2);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);
    QuadratureRule<Scalar> rule;
    rule.nodes = solver.eigenvalues();
    rule.weights = mass * solver.eigenvectors().row(0).transpose().array().square();
    return rule;
}

} // namespace ffml
