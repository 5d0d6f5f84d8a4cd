#include "igdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "igdyn/fit.hpp"

namespace igdyn {

namespace {

// Trial stages of the adaptive integrator may probe outside the admissible
// region (e.g. sigma <= 0); signalling NaN makes the controller shrink the
// step instead of silently crossing the singular locus.
bool state_admissible(const MetricField& model, const VectorXd& theta) {
    for (int k = 0; k < model.dimension(); ++k) {
        if (!std::isfinite(theta[k])) return false;
        if (model.label(k) == CoordLabel::stddev && theta[k] <= 0.0) return false;
    }
    return true;
}

VectorXd geodesic_accel(const MetricField& model, const VectorXd& theta, const VectorXd& v) {
    const int d = model.dimension();
    if (!state_admissible(model, theta))
        return VectorXd::Constant(d, std::numeric_limits<double>::quiet_NaN());
    const Tensor3 Gam = christoffel(model, theta, Backend::analytic, {}, /*check_domain=*/false);
    VectorXd a = VectorXd::Zero(d);
    for (int r = 0; r < d; ++r) {
        double s = 0.0;
        for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n) s += Gam(r, m, n) * v[m] * v[n];
        a[r] = -s;
    }
    return a;
}

double kinetic_form(const MetricField& model, const VectorXd& theta, const VectorXd& v) {
    MatrixXd g(model.dimension(), model.dimension());
    model.eval_metric(theta, g);
    return v.dot(g * v);
}

// Hermite basis on [0,1]: p(s) = h00 y0 + h10 h m0 + h01 y1 + h11 h m1
void hermite_eval(double s, double& h00, double& h10, double& h01, double& h11) {
    const double s2 = s * s, s3 = s2 * s;
    h00 = 2 * s3 - 3 * s2 + 1;
    h10 = s3 - 2 * s2 + s;
    h01 = -2 * s3 + 3 * s2;
    h11 = s3 - s2;
}

} // namespace

GeodesicTrajectory integrate_geodesic(const MetricField& model, const GeodesicState& initial,
                                      double tau_end, StepControl ctl, double sigma_floor) {
    const int d = model.dimension();
    if (initial.theta.size() != d || initial.velocity.size() != d)
        throw DimensionMismatch(model.id() + ": geodesic initial state has wrong dimension");
    if (!(tau_end > initial.tau))
        throw DomainError("integrate_geodesic: tau_end must exceed the initial tau");
    model.check_coords(initial.theta);

    GeodesicTrajectory traj;
    traj.dim = d;
    traj.model_id = model.id();
    {
        std::ostringstream os;
        os << "dopri5(rtol=" << ctl.rtol << ",atol=" << ctl.atol << ")";
        traj.integrator = os.str();
    }
    traj.kinetic_initial = kinetic_form(model, initial.theta, initial.velocity);

    VectorXd y0(2 * d);
    y0.head(d) = initial.theta;
    y0.tail(d) = initial.velocity;

    auto rhs = [&](double, const VectorXd& y, VectorXd& dy) {
        dy.head(d) = y.tail(d);
        dy.tail(d) = geodesic_accel(model, y.head(d), y.tail(d));
    };

    const double kin_ref = std::max(std::abs(traj.kinetic_initial), 1e-300);
    auto record = [&](double tau, const VectorXd& y) {
        GeodesicState st;
        st.tau = tau;
        st.theta = y.head(d);
        st.velocity = y.tail(d);
        const double kin = kinetic_form(model, st.theta, st.velocity);
        traj.kinetic_max_drift =
            std::max(traj.kinetic_max_drift, std::abs(kin - traj.kinetic_initial) / kin_ref);
        traj.states.push_back(std::move(st));
    };

    auto hits_floor = [&](const VectorXd& theta) {
        for (int k = 0; k < d; ++k)
            if (model.label(k) == CoordLabel::stddev && theta[k] <= sigma_floor) return true;
        return false;
    };

    integrate_dopri5(rhs, initial.tau, y0, tau_end, ctl, [&](double tau, const VectorXd& y, const VectorXd&) {
        if (!traj.states.empty() && hits_floor(y.head(d))) {
            // bisect between the last recorded state and this one for the
            // crossing time using Hermite interpolation of the segment
            const GeodesicState& prev = traj.states.back();
            double lo = prev.tau, hi = tau;
            const VectorXd a0 = geodesic_accel(model, prev.theta, prev.velocity);
            const VectorXd a1 = geodesic_accel(model, y.head(d), y.tail(d));
            const double h = tau - prev.tau;
            auto theta_at = [&](double t) {
                const double s = (t - prev.tau) / h;
                double h00, h10, h01, h11;
                hermite_eval(s, h00, h10, h01, h11);
                return VectorXd(h00 * prev.theta + h10 * h * prev.velocity + h01 * y.head(d) +
                                h11 * h * y.tail(d));
            };
            for (int it = 0; it < 80 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                (hits_floor(theta_at(mid)) ? hi : lo) = mid;
            }
            GeodesicState st;
            st.tau = lo;
            const double s = (lo - prev.tau) / h;
            double h00, h10, h01, h11;
            hermite_eval(s, h00, h10, h01, h11);
            st.theta = h00 * prev.theta + h10 * h * prev.velocity + h01 * y.head(d) + h11 * h * y.tail(d);
            // velocity from the derivative Hermite on (v, a)
            st.velocity = h00 * prev.velocity + h10 * h * a0 + h01 * VectorXd(y.tail(d)) + h11 * h * a1;
            if (st.tau > prev.tau) traj.states.push_back(std::move(st));
            traj.domain_exit = true;
            traj.exit_tau = traj.states.back().tau;
            return false;
        }
        record(tau, y);
        return true;
    });
    return traj;
}

std::pair<double, double> closed_form_geodesic(const ClosedFormGeodesicParams& p, double tau) {
    if (!(p.Lambda > 0.0) || !(p.lambda > 0.0))
        throw DomainError("closed_form_geodesic: Lambda and lambda must be > 0");
    const double b = p.Lambda * p.Lambda / (8.0 * p.lambda * p.lambda);
    const double D = std::exp(-2.0 * p.lambda * tau) + b;
    const double mu = p.Lambda * p.Lambda / (2.0 * p.lambda) / D + p.C;
    const double sigma = p.Lambda * std::exp(-p.lambda * tau) / D;
    return {mu, sigma};
}

std::pair<double, double> closed_form_geodesic_velocity(const ClosedFormGeodesicParams& p, double tau) {
    const double b = p.Lambda * p.Lambda / (8.0 * p.lambda * p.lambda);
    const double e2 = std::exp(-2.0 * p.lambda * tau);
    const double D = e2 + b;
    const double mu_dot = p.Lambda * p.Lambda * e2 / (D * D);
    const double sigma_dot = p.Lambda * p.lambda * std::exp(-p.lambda * tau) * (e2 - b) / (D * D);
    return {mu_dot, sigma_dot};
}

GeodesicState closed_form_state(const ClosedFormGeodesicParams& p, int n_pairs, double tau) {
    const auto [mu, sigma] = closed_form_geodesic(p, tau);
    const auto [mu_dot, sigma_dot] = closed_form_geodesic_velocity(p, tau);
    GeodesicState st;
    st.tau = tau;
    st.theta.resize(2 * n_pairs);
    st.velocity.resize(2 * n_pairs);
    for (int q = 0; q < n_pairs; ++q) {
        st.theta[2 * q] = mu;
        st.theta[2 * q + 1] = sigma;
        st.velocity[2 * q] = mu_dot;
        st.velocity[2 * q + 1] = sigma_dot;
    }
    return st;
}

GeodesicTrajectory sample_closed_form_trajectory(const ClosedFormGeodesicParams& p, int n_pairs,
                                                 double tau0, double tau1, int n_samples) {
    if (n_samples < 2 || !(tau1 > tau0))
        throw DomainError("sample_closed_form_trajectory: bad sampling range");
    GeodesicTrajectory traj;
    traj.dim = 2 * n_pairs;
    traj.model_id = "gaussian_product[pairs=" + std::to_string(n_pairs) + "]";
    traj.integrator = "closed_form";
    traj.kinetic_initial = 2.0 * p.lambda * p.lambda * n_pairs;
    traj.kinetic_max_drift = 0.0;
    traj.states.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double tau = tau0 + (tau1 - tau0) * i / (n_samples - 1);
        traj.states.push_back(closed_form_state(p, n_pairs, tau));
    }
    return traj;
}

TrajectoryInterpolant::TrajectoryInterpolant(const MetricField& model, const GeodesicTrajectory& traj) {
    if (traj.states.size() < 2) throw DomainError("TrajectoryInterpolant: needs >= 2 states");
    taus_.reserve(traj.states.size());
    theta_.reserve(traj.states.size());
    vel_.reserve(traj.states.size());
    accel_.reserve(traj.states.size());
    for (const auto& st : traj.states) {
        taus_.push_back(st.tau);
        theta_.push_back(st.theta);
        vel_.push_back(st.velocity);
        accel_.push_back(geodesic_accel(model, st.theta, st.velocity));
    }
}

int TrajectoryInterpolant::segment(double tau) const {
    auto it = std::upper_bound(taus_.begin(), taus_.end(), tau);
    int i = static_cast<int>(it - taus_.begin()) - 1;
    return std::clamp(i, 0, static_cast<int>(taus_.size()) - 2);
}

VectorXd TrajectoryInterpolant::theta(double tau) const {
    const int i = segment(tau);
    const double h = taus_[i + 1] - taus_[i];
    const double s = (tau - taus_[i]) / h;
    double h00, h10, h01, h11;
    hermite_eval(s, h00, h10, h01, h11);
    return h00 * theta_[i] + h10 * h * vel_[i] + h01 * theta_[i + 1] + h11 * h * vel_[i + 1];
}

VectorXd TrajectoryInterpolant::velocity(double tau) const {
    const int i = segment(tau);
    const double h = taus_[i + 1] - taus_[i];
    const double s = (tau - taus_[i]) / h;
    double h00, h10, h01, h11;
    hermite_eval(s, h00, h10, h01, h11);
    return h00 * vel_[i] + h10 * h * accel_[i] + h01 * vel_[i + 1] + h11 * h * accel_[i + 1];
}

double geodesic_residual(const MetricField& model, const GeodesicTrajectory& traj) {
    TrajectoryInterpolant interp(model, traj);
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < traj.states.size(); ++i) {
        const double mid = 0.5 * (traj.states[i].tau + traj.states[i + 1].tau);
        const double dt = 1e-4 * std::max(1.0, std::abs(mid));
        if (mid - dt < traj.tau_begin() || mid + dt > traj.tau_end()) continue;
        const VectorXd vdot = (interp.velocity(mid + dt) - interp.velocity(mid - dt)) / (2.0 * dt);
        const VectorXd resid = vdot - geodesic_accel(model, interp.theta(mid), interp.velocity(mid));
        worst = std::max(worst, resid.cwiseAbs().maxCoeff());
    }
    return worst;
}

JacobiField integrate_jlc(const MetricField& model, const GeodesicTrajectory& host,
                          const VectorXd& J0, const VectorXd& DJ0, StepControl ctl) {
    const int d = model.dimension();
    if (host.dim != d) throw DimensionMismatch("integrate_jlc: host dimension mismatch");
    if (J0.size() != d || DJ0.size() != d)
        throw DimensionMismatch("integrate_jlc: initial Jacobi data has wrong dimension");
    TrajectoryInterpolant interp(model, host);

    auto rhs = [&](double tau, const VectorXd& y, VectorXd& dy) {
        const VectorXd th = interp.theta(tau);
        const VectorXd v = interp.velocity(tau);
        ConnectionData conn;
        try {
            conn = connection_data(model, th, Backend::analytic, {}, /*check_domain=*/false);
        } catch (const Error& e) {
            throw CurvatureEvaluationFailed(std::string("integrate_jlc: curvature evaluation failed at tau = ") +
                                            std::to_string(tau) + ": " + e.what());
        }
        const Tensor3& Gam = conn.gamma;
        const auto J = y.head(d);
        const auto U = y.tail(d);

        // B(r, m) = R(r, s, m, n) v^s v^n, assembled from dGamma and Gamma
        // contractions without materializing the rank-4 tensor:
        //   B = [dGam_m(r,n,s) - dGam_n(r,m,s)] v^s v^n + Gam(r,m,l) q_l - P Q
        // with q_l = Gam(l,n,s) v^n v^s, P(r,l) = Gam(r,n,l) v^n,
        //      Q(l,m) = Gam(l,m,s) v^s.
        VectorXd q = VectorXd::Zero(d);
        MatrixXd P(d, d);
        for (int l = 0; l < d; ++l)
            for (int n = 0; n < d; ++n) {
                double pn = 0.0;
                for (int s = 0; s < d; ++s) pn += Gam(l, n, s) * v[s];
                q[l] += pn * v[n];
                P(l, n) = pn; // P(r, l) = Gam(r, l, s) v^s = Gam(r, s, l) v^s
            }
        MatrixXd B(d, d);
        for (int r = 0; r < d; ++r)
            for (int m = 0; m < d; ++m) {
                double t1 = 0.0, t2 = 0.0;
                for (int n = 0; n < d; ++n) {
                    double in1 = 0.0, in2 = 0.0;
                    for (int s = 0; s < d; ++s) {
                        in1 += conn.dgamma[m](r, n, s) * v[s];
                        in2 += conn.dgamma[n](r, m, s) * v[s];
                    }
                    t1 += in1 * v[n];
                    t2 += in2 * v[n];
                }
                double t3 = 0.0, t4 = 0.0;
                for (int l = 0; l < d; ++l) {
                    t3 += Gam(r, m, l) * q[l];
                    t4 += P(r, l) * P(l, m);
                }
                B(r, m) = t1 - t2 + t3 - t4;
            }

        // dJ/dtau = U - Gamma(v, J);  dU/dtau = -Gamma(v, U) - B J
        for (int r = 0; r < d; ++r) {
            double gvj = 0.0, gvu = 0.0, bj = 0.0;
            for (int m = 0; m < d; ++m) {
                for (int n = 0; n < d; ++n) {
                    gvj += Gam(r, m, n) * v[m] * J[n];
                    gvu += Gam(r, m, n) * v[m] * U[n];
                }
                bj += B(r, m) * J[m];
            }
            dy[r] = U[r] - gvj;
            dy[d + r] = -gvu - bj;
        }
    };

    JacobiField jf;
    jf.model_id = model.id();
    VectorXd y0(2 * d);
    y0.head(d) = J0;
    y0.tail(d) = DJ0;

    integrate_dopri5(rhs, host.tau_begin(), y0, host.tau_end(), ctl,
                     [&](double tau, const VectorXd& y, const VectorXd&) {
                         const VectorXd th = interp.theta(tau);
                         MatrixXd g(d, d);
                         model.eval_metric(th, g);
                         const VectorXd J = y.head(d);
                         jf.taus.push_back(tau);
                         jf.J.push_back(J);
                         jf.DJ.push_back(y.tail(d));
                         jf.intensity.push_back(std::sqrt(std::max(0.0, J.dot(g * J))));
                         return true;
                     });
    return jf;
}

double isotropic_jacobi_solution(double K, double omega0, double tau) {
    if (!(K < 0.0)) throw NonNegativeCurvature("isotropic_jacobi_solution: requires K < 0");
    const double s = std::sqrt(-K);
    return omega0 * std::sinh(s * tau) / s;
}

RateFit lyapunov_estimate(std::span<const double> taus, std::span<const double> intensity,
                          double tau_lo, double tau_hi) {
    if (taus.size() != intensity.size())
        throw DimensionMismatch("lyapunov_estimate: series lengths differ");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (taus[i] < tau_lo || taus[i] > tau_hi) continue;
        if (!(intensity[i] > 0.0))
            throw NonPositiveIntensity("lyapunov_estimate: intensity must be > 0 on the fit window");
        xs.push_back(taus[i]);
        ys.push_back(std::log(intensity[i]));
    }
    if (xs.size() < 10)
        throw WindowTooShort("lyapunov_estimate: fewer than 10 samples in the fit window");
    const LineFit f = fit_line(xs, ys);
    RateFit out;
    out.lambda_J = f.slope;
    out.intercept = f.intercept;
    out.r_squared = f.r_squared;
    out.prefactor = std::exp(f.intercept);
    return out;
}

} // namespace igdyn
