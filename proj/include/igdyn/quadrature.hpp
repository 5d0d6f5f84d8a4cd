#pragma once

#include <Eigen/Dense>
#include <vector>

namespace igdyn {

/// One-dimensional quadrature rule: sum_i weights[i] * f(nodes[i]).
struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
    int order() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Hermite rule for the standard normal weight e^{-u^2/2}/sqrt(2*pi).
/// Weights sum to 1; exact for polynomials of degree <= 2*order - 1.
QuadratureRule gauss_hermite(int order);

/// Gauss-Legendre rule on [a, b]; exact for polynomials of degree <= 2*order - 1.
QuadratureRule gauss_legendre(int order, double a = -1.0, double b = 1.0);

} // namespace igdyn
