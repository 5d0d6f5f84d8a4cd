#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "igdyn/errors.hpp"

namespace igdyn {

struct StepControl {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 1e-3;
    double max_step = std::numeric_limits<double>::infinity();
    long max_steps = 5000000;
};

/// Adaptive Dormand-Prince 5(4) with FSAL and a PI step controller.
///
/// rhs(t, y, dydt) fills the derivative; on_step(t, y, dydt) is called at the
/// initial point and after every accepted step and may return false to stop
/// early. Throws StepUnderflow when the controller collapses the step.
template <class RHS, class StepCb>
void integrate_dopri5(RHS&& rhs, double t0, const Eigen::VectorXd& y0, double t1,
                      const StepControl& ctl, StepCb&& on_step) {
    using Eigen::VectorXd;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // embedded 4th-order error coefficients (b - bhat)
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const int n = static_cast<int>(y0.size());
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    double t = t0;
    VectorXd y = y0;
    VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);

    rhs(t, y, k1);
    if (!on_step(t, y, k1)) return;
    if (t0 == t1) return;

    double h = std::min(std::abs(ctl.initial_step), std::abs(t1 - t0)) * dir;
    if (h == 0.0) h = 1e-6 * dir;
    double err_prev = 1.0;
    bool rejected = false;

    for (long step = 0; step < ctl.max_steps; ++step) {
        if (std::abs(h) > ctl.max_step) h = ctl.max_step * dir;
        bool last = false;
        if ((t + h - t1) * dir >= 0.0) {
            h = t1 - t;
            last = true;
        }
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
            throw StepUnderflow("integrate_dopri5: step size underflow at t = " + std::to_string(t));

        ytmp = y + h * (a21 * k1);
        rhs(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + h, ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + h, ynew, k7);
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double errnorm = 0.0;
        for (int i = 0; i < n; ++i) {
            const double sc = ctl.atol + ctl.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double q = err[i] / sc;
            errnorm += q * q;
        }
        errnorm = std::sqrt(errnorm / n);

        if (errnorm <= 1.0 || !std::isfinite(errnorm)) {
            if (!std::isfinite(errnorm)) {
                // non-finite state: shrink hard and retry
                h *= 0.1;
                rejected = true;
                continue;
            }
            t += h;
            y.swap(ynew);
            k1.swap(k7); // FSAL
            if (!on_step(t, y, k1)) return;
            if (last) return;
            // PI controller
            const double e = std::max(errnorm, 1e-10);
            double fac = 0.9 * std::pow(e, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
            fac = std::clamp(fac, 0.2, rejected ? 1.0 : 5.0);
            err_prev = e;
            h *= fac;
            rejected = false;
        } else {
            h *= std::clamp(0.9 * std::pow(errnorm, -0.2), 0.1, 0.9);
            rejected = true;
        }
    }
    throw StepUnderflow("integrate_dopri5: step budget exhausted");
}

} // namespace igdyn
