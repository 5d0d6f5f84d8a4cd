#pragma once

#include <functional>

#include "igdyn/models.hpp"
#include "igdyn/tensor.hpp"

namespace igdyn {

/// How metric derivatives are obtained: the model's closed forms, or central
/// finite differences of the metric values (evaluated in extended precision).
enum class Backend { analytic, finite_diff };

struct FdOptions {
    /// Base step; the actual per-coordinate step is h * max(1, |theta_k|).
    double h = 1e-5;
};

/// Smooth vector field (upper-index components) used for Killing candidates
/// and section planes.
struct VectorField {
    int dim = 0;
    std::function<VectorXd(const VectorXd&)> eval;
};

/// Christoffel symbols of the Levi-Civita connection, stored Gamma(rho, mu, nu)
/// with the upper index first; symmetric in (mu, nu).
Tensor3 christoffel(const MetricField& model, const VectorXd& theta,
                    Backend backend = Backend::analytic, FdOptions fd = {},
                    bool check_domain = true);

/// Riemann tensor stored R(alpha, beta, mu, nu) =
///   d_mu Gamma^alpha_{nu beta} - d_nu Gamma^alpha_{mu beta}
///   + Gamma^alpha_{mu lam} Gamma^lam_{nu beta} - Gamma^alpha_{nu lam} Gamma^lam_{mu beta};
/// antisymmetric in the last two indices. With this arrangement the unit
/// sphere has positive scalar curvature and g^{mu rho} g^{nu sigma}
/// R_{mu nu rho sigma} equals the Ricci scalar.
Tensor4 riemann(const MetricField& model, const VectorXd& theta,
                Backend backend = Backend::analytic, FdOptions fd = {});

/// Fully lowered Riemann tensor R_{alpha beta mu nu} = g_{alpha lam} R^lam_{beta mu nu}.
Tensor4 riemann_lowered(const MetricField& model, const VectorXd& theta,
                        Backend backend = Backend::analytic, FdOptions fd = {});

/// Ricci tensor R_{mu nu} (contraction of the Riemann tensor on its first
/// and third slots), computed without materializing the full rank-4 array.
MatrixXd ricci_tensor(const MetricField& model, const VectorXd& theta,
                      Backend backend = Backend::analytic, FdOptions fd = {});

/// Scalar curvature R = g^{mu nu} R_{mu nu}.
double ricci_scalar(const MetricField& model, const VectorXd& theta,
                    Backend backend = Backend::analytic, FdOptions fd = {});

/// Sectional curvature of the plane spanned by u and v; independent of the
/// basis chosen for the plane. Throws DegeneratePlane when u, v are (nearly)
/// linearly dependent.
double sectional_curvature(const MetricField& model, const VectorXd& theta,
                           const VectorXd& u, const VectorXd& v,
                           Backend backend = Backend::analytic, FdOptions fd = {});

/// Projective (anisotropy) tensor
///   W_{mu nu rho sigma} = R_{mu nu rho sigma} - R/(n(n-1)) (g_{mu rho} g_{nu sigma} - g_{mu sigma} g_{nu rho});
/// vanishes on constant-curvature spaces.
Tensor4 weyl_projective(const MetricField& model, const VectorXd& theta,
                        Backend backend = Backend::analytic, FdOptions fd = {});

/// Symmetrized covariant derivative D_mu K_nu + D_nu K_mu (the Lie derivative
/// of the metric along K); the zero matrix iff K is a Killing field at theta.
MatrixXd killing_residual(const MetricField& model, const VectorXd& theta, const VectorField& K,
                          Backend backend = Backend::analytic, FdOptions fd = {});

/// g-orthonormal frame built by Gram-Schmidt on the coordinate basis, in
/// coordinate order (deterministic).
std::vector<VectorXd> orthonormal_frame(const MatrixXd& g);

/// Metric, Christoffel symbols and their coordinate derivatives at one point;
/// the working set of the geodesic and Jacobi-field integrators.
struct ConnectionData {
    MatrixXd g;
    Tensor3 gamma;                // Gamma(rho, mu, nu)
    std::vector<Tensor3> dgamma;  // dgamma[k](rho, mu, nu) = d_k Gamma
};

/// check_domain=false skips point validation (integrator trial stages may
/// probe slightly outside the admissible box; callers guard positivity).
ConnectionData connection_data(const MetricField& model, const VectorXd& theta,
                               Backend backend = Backend::analytic, FdOptions fd = {},
                               bool check_domain = true);

/// Everything derived from the metric at one point.
struct CurvatureBundle {
    Tensor3 christoffel;
    Tensor4 riemann;         // upper-first storage
    MatrixXd ricci;
    double scalar = 0.0;
    Tensor4 weyl_projective; // fully lowered
    double weyl_max_abs = 0.0;
};

CurvatureBundle curvature_bundle(const MetricField& model, const VectorXd& theta,
                                 Backend backend = Backend::analytic, FdOptions fd = {});

} // namespace igdyn
