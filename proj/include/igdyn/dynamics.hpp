#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "igdyn/geometry.hpp"
#include "igdyn/models.hpp"
#include "igdyn/ode.hpp"

namespace igdyn {

struct GeodesicState {
    double tau = 0.0;
    VectorXd theta;
    VectorXd velocity;
};

/// Accepted integration states of one geodesic, with affine-conservation
/// bookkeeping. tau is strictly increasing; the kinetic form g(v, v) is
/// constant along the curve up to integrator tolerance.
struct GeodesicTrajectory {
    std::vector<GeodesicState> states;
    std::string integrator;
    std::string model_id;
    int dim = 0;
    double kinetic_initial = 0.0;
    double kinetic_max_drift = 0.0; // max relative drift of g(v,v)
    bool domain_exit = false;       // stopped at a STDDEV floor
    double exit_tau = 0.0;

    double tau_begin() const { return states.front().tau; }
    double tau_end() const { return states.back().tau; }
};

/// Integrates d^2 Theta / d tau^2 + Gamma(Theta)(v, v) = 0 from `initial` to
/// tau_end. Integration stops early (domain_exit) when a STDDEV coordinate
/// reaches sigma_floor.
GeodesicTrajectory integrate_geodesic(const MetricField& model, const GeodesicState& initial,
                                      double tau_end, StepControl ctl = {}, double sigma_floor = 1e-8);

/// Parameters of the closed-form (mu, sigma) geodesic family: mu and sigma
/// evolve with rate lambda and amplitude Lambda, mean offset C.
struct ClosedFormGeodesicParams {
    double Lambda = 1.0;
    double lambda = 1.0;
    double C = 0.0;
};

/// Closed-form geodesic of the Gaussian pair manifold:
///   D(tau)   = exp(-2 lambda tau) + Lambda^2 / (8 lambda^2)
///   mu(tau)  = (Lambda^2 / 2 lambda) / D + C
///   sigma    = Lambda exp(-lambda tau) / D   (> 0 for all tau)
std::pair<double, double> closed_form_geodesic(const ClosedFormGeodesicParams& p, double tau);

/// Analytic (mu', sigma') of the closed form.
std::pair<double, double> closed_form_geodesic_velocity(const ClosedFormGeodesicParams& p, double tau);

/// State of the product manifold with every pair on the same closed-form
/// geodesic.
GeodesicState closed_form_state(const ClosedFormGeodesicParams& p, int n_pairs, double tau);

/// Densely sampled closed-form trajectory (analytic states; usable as a JLC
/// host with interpolation error ~ (spacing)^4).
GeodesicTrajectory sample_closed_form_trajectory(const ClosedFormGeodesicParams& p, int n_pairs,
                                                 double tau0, double tau1, int n_samples);

/// Cubic Hermite interpolation of a trajectory: theta from (theta, v) pairs,
/// v from (v, a) pairs with accelerations recomputed from the model.
class TrajectoryInterpolant {
public:
    TrajectoryInterpolant(const MetricField& model, const GeodesicTrajectory& traj);

    VectorXd theta(double tau) const;
    VectorXd velocity(double tau) const;
    double tau_begin() const { return taus_.front(); }
    double tau_end() const { return taus_.back(); }

private:
    int segment(double tau) const;
    std::vector<double> taus_;
    std::vector<VectorXd> theta_, vel_, accel_;
};

/// Max residual of the geodesic equation over segment midpoints, using
/// finite differences of the dense output (a diagnostic, not a solver path).
double geodesic_residual(const MetricField& model, const GeodesicTrajectory& traj);

/// Jacobi field along a host geodesic: J, its covariant derivative DJ/Dtau,
/// and the intensity series ||J||(tau) = sqrt(g(J, J)).
struct JacobiField {
    std::vector<double> taus;
    std::vector<VectorXd> J;
    std::vector<VectorXd> DJ;
    std::vector<double> intensity;
    std::string model_id;
};

/// Integrates the Jacobi-Levi-Civita system
///   D^2 J / D tau^2 + R(J; v, v) = 0
/// expanded to first order in (J, U = DJ/Dtau), with Gamma and the Riemann
/// tensor evaluated at Hermite-interpolated host states.
JacobiField integrate_jlc(const MetricField& model, const GeodesicTrajectory& host,
                          const VectorXd& J0, const VectorXd& DJ0, StepControl ctl = {});

/// Closed-form unstable Jacobi amplitude on a constant-curvature space:
/// J(tau) = omega0 sinh(sqrt(-K) tau) / sqrt(-K), for K < 0.
double isotropic_jacobi_solution(double K, double omega0, double tau);

struct RateFit {
    double lambda_J = 0.0;
    double r_squared = 0.0;
    double intercept = 0.0;
    double prefactor = 0.0; // exp(intercept): measured amplitude, reported only
};

/// Least-squares slope of ln||J|| over taus in [tau_lo, tau_hi].
RateFit lyapunov_estimate(std::span<const double> taus, std::span<const double> intensity,
                          double tau_lo, double tau_hi);

} // namespace igdyn
