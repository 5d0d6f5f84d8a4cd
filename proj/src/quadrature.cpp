#include "igdyn/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace igdyn {

namespace {

// Golub-Welsch: nodes are the eigenvalues of the symmetric tridiagonal Jacobi
// matrix of the orthogonal-polynomial recurrence, weights are mu0 * v0^2.
QuadratureRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0) {
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) J(i, i) = diag[i];
    for (int i = 0; i + 1 < n; ++i) {
        J(i, i + 1) = offdiag[i];
        J(i + 1, i) = offdiag[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success) throw std::runtime_error("quadrature: eigensolve failed");
    QuadratureRule rule;
    rule.nodes = es.eigenvalues();
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

} // namespace

QuadratureRule gauss_hermite(int order) {
    if (order < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
    // Probabilists' Hermite recurrence He_{k+1} = x He_k - k He_{k-1}.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd off(order > 1 ? order - 1 : 0);
    for (int k = 1; k < order; ++k) off[k - 1] = std::sqrt(static_cast<double>(k));
    return golub_welsch(diag, off, 1.0);
}

QuadratureRule gauss_legendre(int order, double a, double b) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd off(order > 1 ? order - 1 : 0);
    for (int k = 1; k < order; ++k) {
        const double kk = static_cast<double>(k);
        off[k - 1] = kk / std::sqrt(4.0 * kk * kk - 1.0);
    }
    QuadratureRule rule = golub_welsch(diag, off, 2.0);
    // affine map [-1,1] -> [a,b]
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < order; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

} // namespace igdyn
