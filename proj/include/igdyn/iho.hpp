#pragma once

#include <span>
#include <vector>

#include "igdyn/dynamics.hpp"
#include "igdyn/models.hpp"

namespace igdyn {

/// Physical-time trajectory of uncoupled inverted oscillators.
struct NewtonianTrajectory {
    std::vector<double> taus;
    std::vector<VectorXd> thetas;
    std::vector<VectorXd> velocities;
};

/// Exact hyperbolic solutions of theta_j'' = omega_j^2 theta_j:
///   theta_j(tau) = Xi_j cosh(omega_j tau) + (v_j / omega_j) sinh(omega_j tau);
/// zero-frequency axes degrade to free motion Xi_j + v_j tau.
NewtonianTrajectory newtonian_reference(const VectorXd& omega, const VectorXd& Xi, const VectorXd& v0,
                                        std::span<const double> tau_grid);

/// Pure-growing branch theta_j = Xi_j exp(omega_j tau) (v_j = Xi_j omega_j).
NewtonianTrajectory newtonian_reference(const VectorXd& omega, const VectorXd& Xi,
                                        std::span<const double> tau_grid);

/// Closed-form scalar curvature of the two-oscillator kinetic metric:
///   [4(t1^2 w1^4 + t2^2 w2^4) - 4(t1^2 + t2^2) w1^2 w2^2 - 8(w1^2 + w2^2)]
///   / (t1^2 w1^2 + t2^2 w2^2 + 2)^3.
double ricci_scalar_iho_2set(double omega1, double omega2, double theta1, double theta2);

/// Published closed form of the equal-frequency anisotropy component:
///   [8 w^4 (t1^2 + t2^2) + 2 w^6 (t1^4 + t2^4) + 4 w^6 t1^2 t2^2]
///   / (t1^2 w^2 + t2^2 w^2 + 2)^3.
double weyl_1212_iho(double omega, double theta1, double theta2);

/// Geodesic initial state on the kinetic metric for fixed unit energy: the
/// physical velocity is rescaled along its direction so T = 1 - Phi(theta0)
/// (equivalently the affine norm g(theta', theta') equals 2), then converted
/// to the arclength parameterization theta' = thetadot / (1 - Phi).
GeodesicState jacobi_launch(const JacobiIHOModel& model, const VectorXd& theta0,
                            const VectorXd& velocity_direction);

/// Converts an arclength-parameterized geodesic of the kinetic metric to
/// physical time via d tau = ds / (1 - Phi), resampled on a uniform tau grid
/// of n_out points.
NewtonianTrajectory maupertuis_reparametrize(const JacobiIHOModel& model, const GeodesicTrajectory& traj,
                                             int n_out);

/// Inverse map: physical-time trajectory to the arclength parameterization
/// (s(tau) cumulative, theta' = thetadot / (1 - Phi)).
GeodesicTrajectory jacobi_from_newtonian(const JacobiIHOModel& model, const NewtonianTrajectory& traj);

} // namespace igdyn
