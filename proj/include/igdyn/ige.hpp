#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "igdyn/dynamics.hpp"
#include "igdyn/models.hpp"

namespace igdyn {

/// sqrt(det g) at a point: the statistical volume density.
double volume_density(const MetricField& model, const ParameterPoint& point);

/// Swept-volume magnitude between tau = 0 and tau along the closed-form
/// geodesic, for N particles (3N identical pairs): the per-pair iterated
/// integral of sqrt(2)/sigma^2 has the closed form
///   sqrt(2) |mu(tau) - mu(0)| |1/sigma(tau) - 1/sigma(0)|,
/// and the total is its 3N-th power.
double delta_volume_gaussian(const ClosedFormGeodesicParams& p, int n_particles, double tau);

/// Same, parameterized by an explicit pair count.
double delta_volume_gaussian_pairs(const ClosedFormGeodesicParams& p, int n_pairs, double tau);

/// Time-averaged volume <dV>(tau) = (1/tau) Integral_0^tau dV, cumulative
/// trapezoid on the given grid; the first entry is the right-limit dV(0).
/// Throws GridTooCoarse below ~100 samples per unit tau.
std::vector<double> average_volume(std::span<const double> taus, std::span<const double> delta_v);

struct VolumeSeries {
    std::vector<double> taus;
    std::vector<double> delta_v;
    std::vector<double> avg_v;
    std::string model_id;
    std::string sweep_params;
};

struct IGEReport {
    std::vector<double> entropy; // S(tau) = log <dV>(tau) over the window samples
    double fitted_slope = 0.0;
    double predicted_slope = 0.0;
    double relative_error = 0.0;
    double r_squared = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
};

/// S(tau) = log <dV>(tau); least-squares slope over the window compared with
/// the predicted growth rate.
IGEReport ige(std::span<const double> taus, std::span<const double> avg_v,
              double window_lo, double window_hi, double predicted_slope);

/// Swept volume of the inverted-oscillator flow started at the origin with
/// amplitudes Xi: theta_j(tau) = Xi_j exp(omega_j tau) (growing branch).
/// For the 2-oscillator model this is the exact polynomial integral
///   |theta1 theta2| (1 + (omega1^2 theta1^2 + omega2^2 theta2^2) / 6);
/// for the 3n-dimensional variant it is the asymptotic product form.
double delta_volume_iho(const JacobiIHOModel& model, const VectorXd& Xi, double tau);

/// log of the 3n-variant product form (overflow-safe).
double log_delta_volume_iho_product(const JacobiIHOModel& model, const VectorXd& Xi, double tau);

/// 3n frequencies drawn iid from the linear density rho(omega) = omega on
/// [0, sqrt(2)] (the normalization of rho fixes the cutoff; xi * Omega must
/// equal sqrt(2) within 1e-9 or InconsistentCutoff is thrown). Deterministic
/// under the seed.
VectorXd sample_frequency_spectrum(int n, double xi, double Omega, std::uint64_t seed);

/// Entropy report for the n-set continuum asymptotics: the averaged-volume
/// law with exponent (3/2) n xi Omega, evaluated in log space on tau_grid and
/// slope-fitted over the window. Omega = sum of the given frequencies; xi
/// defaults to sqrt(2)/Omega (pass xi explicitly to study scaled spectra).
IGEReport ige_iho_appendix(int n, const VectorXd& frequencies, double Xi,
                           std::span<const double> tau_grid, double window_lo, double window_hi,
                           double xi = -1.0);

} // namespace igdyn
