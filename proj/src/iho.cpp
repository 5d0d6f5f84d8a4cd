#include "igdyn/iho.hpp"

#include <algorithm>
#include <cmath>

namespace igdyn {

NewtonianTrajectory newtonian_reference(const VectorXd& omega, const VectorXd& Xi, const VectorXd& v0,
                                        std::span<const double> tau_grid) {
    const int n = static_cast<int>(omega.size());
    if (Xi.size() != n || v0.size() != n)
        throw DimensionMismatch("newtonian_reference: omega/Xi/v0 lengths differ");
    for (int j = 0; j < n; ++j)
        if (!std::isfinite(Xi[j]) || !std::isfinite(v0[j]))
            throw DomainError("newtonian_reference: non-finite initial data");
    NewtonianTrajectory out;
    out.taus.assign(tau_grid.begin(), tau_grid.end());
    out.thetas.reserve(out.taus.size());
    out.velocities.reserve(out.taus.size());
    for (double tau : out.taus) {
        VectorXd th(n), vel(n);
        for (int j = 0; j < n; ++j) {
            const double w = omega[j];
            if (w == 0.0) { // free motion
                th[j] = Xi[j] + v0[j] * tau;
                vel[j] = v0[j];
            } else {
                th[j] = Xi[j] * std::cosh(w * tau) + (v0[j] / w) * std::sinh(w * tau);
                vel[j] = Xi[j] * w * std::sinh(w * tau) + v0[j] * std::cosh(w * tau);
            }
        }
        out.thetas.push_back(std::move(th));
        out.velocities.push_back(std::move(vel));
    }
    return out;
}

NewtonianTrajectory newtonian_reference(const VectorXd& omega, const VectorXd& Xi,
                                        std::span<const double> tau_grid) {
    VectorXd v0(omega.size());
    for (int j = 0; j < omega.size(); ++j) v0[j] = Xi[j] * omega[j];
    return newtonian_reference(omega, Xi, v0, tau_grid);
}

double ricci_scalar_iho_2set(double omega1, double omega2, double theta1, double theta2) {
    const double w1 = omega1 * omega1, w2 = omega2 * omega2;
    const double t1 = theta1 * theta1, t2 = theta2 * theta2;
    const double num = 4.0 * (t1 * w1 * w1 + t2 * w2 * w2) - 4.0 * (t1 + t2) * w1 * w2 - 8.0 * (w1 + w2);
    const double den = t1 * w1 + t2 * w2 + 2.0;
    return num / (den * den * den);
}

double weyl_1212_iho(double omega, double theta1, double theta2) {
    const double w2 = omega * omega;
    const double t1 = theta1 * theta1, t2 = theta2 * theta2;
    const double num = 8.0 * w2 * w2 * (t1 + t2) + 2.0 * w2 * w2 * w2 * (t1 * t1 + t2 * t2) +
                       4.0 * w2 * w2 * w2 * t1 * t2;
    const double den = t1 * w2 + t2 * w2 + 2.0;
    return num / (den * den * den);
}

GeodesicState jacobi_launch(const JacobiIHOModel& model, const VectorXd& theta0,
                            const VectorXd& velocity_direction) {
    const int n = model.dimension();
    if (theta0.size() != n || velocity_direction.size() != n)
        throw DimensionMismatch("jacobi_launch: dimension mismatch");
    const double dir_norm = velocity_direction.norm();
    if (!(dir_norm > 0.0)) throw DomainError("jacobi_launch: velocity direction must be nonzero");
    const double F = model.conformal_factor(theta0);
    // unit energy: T = 1/2 |thetadot|^2 = F, i.e. |thetadot| = sqrt(2 F)
    const VectorXd thetadot = velocity_direction * (std::sqrt(2.0 * F) / dir_norm);
    GeodesicState st;
    st.tau = 0.0;
    st.theta = theta0;
    st.velocity = thetadot / F; // arclength parameterization: g(theta',theta') = 2
    return st;
}

namespace {

// cumulative integral of integrand(s) over the trajectory's s-grid with
// Simpson on each segment, integrand evaluated on Hermite-interpolated states
std::vector<double> cumulative_time(const JacobiIHOModel& model, const GeodesicTrajectory& traj,
                                    const TrajectoryInterpolant& interp) {
    std::vector<double> tau(traj.states.size(), 0.0);
    for (std::size_t i = 1; i < traj.states.size(); ++i) {
        const double s0 = traj.states[i - 1].tau, s1 = traj.states[i].tau;
        const double sm = 0.5 * (s0 + s1);
        const double f0 = 1.0 / model.conformal_factor(traj.states[i - 1].theta);
        const double fm = 1.0 / model.conformal_factor(interp.theta(sm));
        const double f1 = 1.0 / model.conformal_factor(traj.states[i].theta);
        tau[i] = tau[i - 1] + (s1 - s0) / 6.0 * (f0 + 4.0 * fm + f1);
    }
    return tau;
}

} // namespace

NewtonianTrajectory maupertuis_reparametrize(const JacobiIHOModel& model, const GeodesicTrajectory& traj,
                                             int n_out) {
    if (traj.dim != model.dimension())
        throw DimensionMismatch("maupertuis_reparametrize: trajectory/model dimension mismatch");
    if (n_out < 2) throw DomainError("maupertuis_reparametrize: n_out must be >= 2");
    TrajectoryInterpolant interp(model, traj);
    const std::vector<double> tau_nodes = cumulative_time(model, traj, interp);
    const double tau_end = tau_nodes.back();

    NewtonianTrajectory out;
    out.taus.reserve(n_out);
    out.thetas.reserve(n_out);
    out.velocities.reserve(n_out);
    std::size_t seg = 0;
    for (int i = 0; i < n_out; ++i) {
        const double tau = tau_end * i / (n_out - 1);
        while (seg + 2 < tau_nodes.size() && tau_nodes[seg + 1] < tau) ++seg;
        // invert tau(s) on the segment by bisection (tau is strictly increasing)
        double lo = traj.states[seg].tau, hi = traj.states[seg + 1].tau;
        const double tau_lo = tau_nodes[seg];
        auto tau_at = [&](double s) {
            // Simpson from the segment start to s
            const double sm = 0.5 * (traj.states[seg].tau + s);
            const double f0 = 1.0 / model.conformal_factor(traj.states[seg].theta);
            const double fm = 1.0 / model.conformal_factor(interp.theta(sm));
            const double f1 = 1.0 / model.conformal_factor(interp.theta(s));
            return tau_lo + (s - traj.states[seg].tau) / 6.0 * (f0 + 4.0 * fm + f1);
        };
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (tau_at(mid) < tau ? lo : hi) = mid;
        }
        const double s = 0.5 * (lo + hi);
        const VectorXd th = interp.theta(s);
        const double F = model.conformal_factor(th);
        out.taus.push_back(tau);
        out.thetas.push_back(th);
        out.velocities.push_back(interp.velocity(s) * F); // d theta / d tau = theta' F
    }
    return out;
}

GeodesicTrajectory jacobi_from_newtonian(const JacobiIHOModel& model, const NewtonianTrajectory& traj) {
    if (traj.taus.size() < 2) throw DomainError("jacobi_from_newtonian: needs >= 2 samples");
    GeodesicTrajectory out;
    out.dim = model.dimension();
    out.model_id = model.id();
    out.integrator = "reparametrized";
    double s = 0.0;
    for (std::size_t i = 0; i < traj.taus.size(); ++i) {
        if (i > 0) {
            // Simpson for s(tau) on the step, midpoint state by Hermite of theta
            const double dt = traj.taus[i] - traj.taus[i - 1];
            const VectorXd& th0 = traj.thetas[i - 1];
            const VectorXd& th1 = traj.thetas[i];
            const VectorXd& v0 = traj.velocities[i - 1];
            const VectorXd& v1 = traj.velocities[i];
            const VectorXd thm =
                0.5 * (th0 + th1) + 0.125 * dt * (v0 - v1); // cubic Hermite midpoint
            const double f0 = model.conformal_factor(th0);
            const double fm = model.conformal_factor(thm);
            const double f1 = model.conformal_factor(th1);
            s += dt / 6.0 * (f0 + 4.0 * fm + f1);
        }
        GeodesicState st;
        st.tau = s;
        st.theta = traj.thetas[i];
        st.velocity = traj.velocities[i] / model.conformal_factor(traj.thetas[i]);
        out.states.push_back(std::move(st));
    }
    const MatrixXd g = [&] {
        MatrixXd m(out.dim, out.dim);
        model.eval_metric(out.states.front().theta, m);
        return m;
    }();
    out.kinetic_initial = out.states.front().velocity.dot(g * out.states.front().velocity);
    return out;
}

} // namespace igdyn
