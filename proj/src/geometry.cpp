#include "igdyn/geometry.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace igdyn {

namespace {

template <class Real>
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Metric with first and second derivatives at a point, in working precision.
template <class Real>
struct Derivs {
    Mat<Real> g, ginv;
    std::vector<Mat<Real>> dg;               // dg[k](i,j) = d_k g_ij
    std::vector<std::vector<Mat<Real>>> ddg; // ddg[k][l] = d_k d_l g
};

template <class Real>
Mat<Real> invert_metric(const Mat<Real>& g, const std::string& who) {
    Eigen::FullPivLU<Mat<Real>> lu(g);
    if (!lu.isInvertible()) throw SingularMetric(who + ": metric inversion failed");
    return lu.inverse();
}

Derivs<double> analytic_derivs(const MetricField& model, const VectorXd& theta) {
    const int d = model.dimension();
    Derivs<double> out;
    out.g.resize(d, d);
    model.eval_metric(theta, out.g);
    out.ginv = invert_metric<double>(out.g, model.id());
    out.dg.assign(d, MatrixXd(d, d));
    out.ddg.assign(d, std::vector<MatrixXd>(d, MatrixXd(d, d)));
    for (int k = 0; k < d; ++k) model.eval_metric_derivative(theta, k, out.dg[k]);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l <= k; ++l) {
            model.eval_metric_second_derivative(theta, k, l, out.ddg[k][l]);
            if (l != k) out.ddg[l][k] = out.ddg[k][l];
        }
    return out;
}

// Central differences of the metric values, carried out in extended
// precision so the second differences stay truncation-limited at small h.
Derivs<long double> fd_derivs(const MetricField& model, const VectorXd& theta, const FdOptions& fd) {
    const int d = model.dimension();
    VectorXl x(d);
    for (int k = 0; k < d; ++k) x[k] = static_cast<long double>(theta[k]);
    std::vector<long double> h(d);
    for (int k = 0; k < d; ++k) {
        h[k] = static_cast<long double>(fd.h) * std::max<long double>(1.0L, std::abs(x[k]));
        const Bounds b = model.bounds(k);
        if (theta[k] - 2.0 * static_cast<double>(h[k]) < b.lo || theta[k] + 2.0 * static_cast<double>(h[k]) > b.hi)
            throw BoundaryTooClose(model.id() + ": coordinate " + std::to_string(k) +
                                   " is within 2h of its domain boundary");
    }

    auto eval = [&](const VectorXl& p) {
        MatrixXl g(d, d);
        model.eval_metric(p, g);
        return g;
    };

    Derivs<long double> out;
    out.g = eval(x);
    out.ginv = invert_metric<long double>(out.g, model.id());
    out.dg.assign(d, MatrixXl(d, d));
    out.ddg.assign(d, std::vector<MatrixXl>(d, MatrixXl(d, d)));

    std::vector<MatrixXl> plus(d), minus(d);
    for (int k = 0; k < d; ++k) {
        VectorXl xp = x, xm = x;
        xp[k] += h[k];
        xm[k] -= h[k];
        plus[k] = eval(xp);
        minus[k] = eval(xm);
        out.dg[k] = (plus[k] - minus[k]) / (2.0L * h[k]);
    }
    for (int k = 0; k < d; ++k) {
        out.ddg[k][k] = (plus[k] - 2.0L * out.g + minus[k]) / (h[k] * h[k]);
        for (int l = 0; l < k; ++l) {
            VectorXl xpp = x, xpm = x, xmp = x, xmm = x;
            xpp[k] += h[k]; xpp[l] += h[l];
            xpm[k] += h[k]; xpm[l] -= h[l];
            xmp[k] -= h[k]; xmp[l] += h[l];
            xmm[k] -= h[k]; xmm[l] -= h[l];
            out.ddg[k][l] = (eval(xpp) - eval(xpm) - eval(xmp) + eval(xmm)) / (4.0L * h[k] * h[l]);
            out.ddg[l][k] = out.ddg[k][l];
        }
    }
    return out;
}

template <class Real>
Tensor3T<Real> christoffel_from(const Derivs<Real>& D) {
    const int d = static_cast<int>(D.g.rows());
    Tensor3T<Real> Gam(d);
    for (int r = 0; r < d; ++r)
        for (int m = 0; m < d; ++m)
            for (int n = m; n < d; ++n) {
                Real v = 0;
                for (int l = 0; l < d; ++l)
                    v += D.ginv(r, l) * (D.dg[m](l, n) + D.dg[n](m, l) - D.dg[l](m, n));
                v *= Real(0.5);
                Gam(r, m, n) = v;
                Gam(r, n, m) = v;
            }
    return Gam;
}

// dGam[k](r, m, n) = d_k Gamma^r_{mn}
template <class Real>
std::vector<Tensor3T<Real>> dchristoffel_from(const Derivs<Real>& D) {
    const int d = static_cast<int>(D.g.rows());
    // d_k g^{-1} = -g^{-1} (d_k g) g^{-1}
    std::vector<Mat<Real>> dginv(d);
    for (int k = 0; k < d; ++k) dginv[k] = -D.ginv * D.dg[k] * D.ginv;

    std::vector<Tensor3T<Real>> dGam(d, Tensor3T<Real>(d));
    for (int k = 0; k < d; ++k)
        for (int r = 0; r < d; ++r)
            for (int m = 0; m < d; ++m)
                for (int n = m; n < d; ++n) {
                    Real v = 0;
                    for (int l = 0; l < d; ++l) {
                        v += dginv[k](r, l) * (D.dg[m](l, n) + D.dg[n](m, l) - D.dg[l](m, n));
                        v += D.ginv(r, l) * (D.ddg[k][m](l, n) + D.ddg[k][n](m, l) - D.ddg[k][l](m, n));
                    }
                    v *= Real(0.5);
                    dGam[k](r, m, n) = v;
                    dGam[k](r, n, m) = v;
                }
    return dGam;
}

template <class Real>
Tensor4T<Real> riemann_from(const Tensor3T<Real>& Gam, const std::vector<Tensor3T<Real>>& dGam) {
    const int d = Gam.dim();
    Tensor4T<Real> R(d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int m = 0; m < d; ++m)
                for (int n = 0; n < d; ++n) {
                    Real v = dGam[m](a, n, b) - dGam[n](a, m, b);
                    for (int l = 0; l < d; ++l)
                        v += Gam(a, m, l) * Gam(l, n, b) - Gam(a, n, l) * Gam(l, m, b);
                    R(a, b, m, n) = v;
                }
    return R;
}

// Ricci without the rank-4 intermediate: Ric_{bn} = R^m_{b m n}.
template <class Real>
Mat<Real> ricci_from(const Tensor3T<Real>& Gam, const std::vector<Tensor3T<Real>>& dGam) {
    const int d = Gam.dim();
    Vec<Real> trace(d); // t_l = Gamma^m_{m l}
    for (int l = 0; l < d; ++l) {
        Real t = 0;
        for (int m = 0; m < d; ++m) t += Gam(m, m, l);
        trace[l] = t;
    }
    Mat<Real> Ric(d, d);
    for (int b = 0; b < d; ++b)
        for (int n = 0; n < d; ++n) {
            Real v = 0;
            for (int m = 0; m < d; ++m) v += dGam[m](m, n, b) - dGam[n](m, m, b);
            for (int l = 0; l < d; ++l) {
                v += trace[l] * Gam(l, n, b);
                for (int m = 0; m < d; ++m) v -= Gam(m, n, l) * Gam(l, m, b);
            }
            Ric(b, n) = v;
        }
    return Ric;
}

template <class Real>
Tensor3 to_double(const Tensor3T<Real>& t) {
    Tensor3 out(t.dim());
    for (int i = 0; i < t.dim(); ++i)
        for (int j = 0; j < t.dim(); ++j)
            for (int k = 0; k < t.dim(); ++k) out(i, j, k) = static_cast<double>(t(i, j, k));
    return out;
}

template <class Real>
Tensor4 to_double(const Tensor4T<Real>& t) {
    Tensor4 out(t.dim());
    for (int i = 0; i < t.dim(); ++i)
        for (int j = 0; j < t.dim(); ++j)
            for (int k = 0; k < t.dim(); ++k)
                for (int l = 0; l < t.dim(); ++l) out(i, j, k, l) = static_cast<double>(t(i, j, k, l));
    return out;
}

template <class F>
auto dispatch(const MetricField& model, const VectorXd& theta, Backend backend, const FdOptions& fd, const F& f,
              bool check_domain = true) {
    if (check_domain) model.check_coords(theta);
    if (backend == Backend::analytic) {
        return f(analytic_derivs(model, theta));
    }
    return f(fd_derivs(model, theta, fd));
}

} // namespace

Tensor3 christoffel(const MetricField& model, const VectorXd& theta, Backend backend, FdOptions fd,
                    bool check_domain) {
    return dispatch(model, theta, backend, fd,
                    [&](const auto& D) { return to_double(christoffel_from(D)); }, check_domain);
}

Tensor4 riemann(const MetricField& model, const VectorXd& theta, Backend backend, FdOptions fd) {
    return dispatch(model, theta, backend, fd, [&](const auto& D) {
        const auto Gam = christoffel_from(D);
        const auto dGam = dchristoffel_from(D);
        return to_double(riemann_from(Gam, dGam));
    });
}

Tensor4 riemann_lowered(const MetricField& model, const VectorXd& theta, Backend backend, FdOptions fd) {
    return dispatch(model, theta, backend, fd, [&](const auto& D) {
        const auto Gam = christoffel_from(D);
        const auto dGam = dchristoffel_from(D);
        const auto R = riemann_from(Gam, dGam);
        const int d = R.dim();
        using Real = std::decay_t<decltype(D.g(0, 0))>;
        Tensor4T<Real> Rlow(d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                for (int m = 0; m < d; ++m)
                    for (int n = 0; n < d; ++n) {
                        Real v = 0;
                        for (int r = 0; r < d; ++r) v += D.g(a, r) * R(r, b, m, n);
                        Rlow(a, b, m, n) = v;
                    }
        return to_double(Rlow);
    });
}

MatrixXd ricci_tensor(const MetricField& model, const VectorXd& theta, Backend backend, FdOptions fd) {
    return dispatch(model, theta, backend, fd, [&](const auto& D) {
        const auto Gam = christoffel_from(D);
        const auto dGam = dchristoffel_from(D);
        return MatrixXd(ricci_from(Gam, dGam).template cast<double>());
    });
}

double ricci_scalar(const MetricField& model, const VectorXd& theta, Backend backend, FdOptions fd) {
    return dispatch(model, theta, backend, fd, [&](const auto& D) {
        const auto Gam = christoffel_from(D);
        const auto dGam = dchristoffel_from(D);
        const auto Ric = ricci_from(Gam, dGam);
        return static_cast<double>((D.ginv.array() * Ric.array()).sum());
    });
}

double sectional_curvature(const MetricField& model, const VectorXd& theta,
                           const VectorXd& u, const VectorXd& v, Backend backend, FdOptions fd) {
    const int d = model.dimension();
    if (u.size() != d || v.size() != d)
        throw DimensionMismatch("sectional_curvature: section vectors have wrong length");
    const Tensor4 Rlow = riemann_lowered(model, theta, backend, fd);
    MatrixXd g(d, d);
    model.eval_metric(theta, g);
    const double uu = u.dot(g * u), vv = v.dot(g * v), uv = u.dot(g * v);
    const double denom = uu * vv - uv * uv;
    if (std::abs(denom) < 1e-14)
        throw DegeneratePlane("sectional_curvature: section vectors are (nearly) linearly dependent");
    double num = 0.0;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int m = 0; m < d; ++m)
                for (int n = 0; n < d; ++n) num += Rlow(a, b, m, n) * u[a] * v[b] * u[m] * v[n];
    return num / denom;
}

Tensor4 weyl_projective(const MetricField& model, const VectorXd& theta, Backend backend, FdOptions fd) {
    const int d = model.dimension();
    if (d < 2) throw DimensionMismatch("weyl_projective: needs dimension >= 2");
    const Tensor4 Rlow = riemann_lowered(model, theta, backend, fd);
    const double scal = ricci_scalar(model, theta, backend, fd);
    MatrixXd g(d, d);
    model.eval_metric(theta, g);
    const double c = scal / (static_cast<double>(d) * (d - 1));
    Tensor4 W(d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int m = 0; m < d; ++m)
                for (int n = 0; n < d; ++n)
                    W(a, b, m, n) = Rlow(a, b, m, n) - c * (g(a, m) * g(b, n) - g(a, n) * g(b, m));
    return W;
}

ConnectionData connection_data(const MetricField& model, const VectorXd& theta, Backend backend,
                               FdOptions fd, bool check_domain) {
    if (check_domain) model.check_coords(theta);
    ConnectionData out;
    if (backend == Backend::analytic) {
        const auto D = analytic_derivs(model, theta);
        out.g = D.g;
        out.gamma = to_double(christoffel_from(D));
        const auto dGam = dchristoffel_from(D);
        out.dgamma.reserve(dGam.size());
        for (const auto& t : dGam) out.dgamma.push_back(to_double(t));
    } else {
        const auto D = fd_derivs(model, theta, fd);
        out.g = D.g.cast<double>();
        out.gamma = to_double(christoffel_from(D));
        const auto dGam = dchristoffel_from(D);
        out.dgamma.reserve(dGam.size());
        for (const auto& t : dGam) out.dgamma.push_back(to_double(t));
    }
    return out;
}

MatrixXd killing_residual(const MetricField& model, const VectorXd& theta, const VectorField& K,
                          Backend backend, FdOptions fd) {
    const int d = model.dimension();
    if (K.dim != d) throw DimensionMismatch("killing_residual: vector field dimension mismatch");
    const Tensor3 Gam = christoffel(model, theta, backend, fd);
    MatrixXd g(d, d);
    model.eval_metric(theta, g);

    const VectorXd Kup = K.eval(theta);
    const VectorXd Klow = g * Kup;

    // dK[m][l] = d_m K^l by central differences of the field
    MatrixXd dKup(d, d);
    for (int m = 0; m < d; ++m) {
        const double h = 1e-6 * std::max(1.0, std::abs(theta[m]));
        VectorXd tp = theta, tm = theta;
        tp[m] += h;
        tm[m] -= h;
        dKup.row(m) = ((K.eval(tp) - K.eval(tm)) / (2.0 * h)).transpose();
    }
    for (int m = 0; m < d; ++m)
        for (int l = 0; l < d; ++l)
            if (!std::isfinite(dKup(m, l)))
                throw DomainError("killing_residual: vector field is not smooth at the given point");

    // D_m K_n = d_m (K_n) - Gamma^r_{mn} K_r
    MatrixXd dg(d, d);
    MatrixXd DK(d, d);
    for (int m = 0; m < d; ++m) {
        model.eval_metric_derivative(theta, m, dg);
        for (int n = 0; n < d; ++n) {
            double v = 0.0;
            for (int l = 0; l < d; ++l) v += dg(n, l) * Kup[l] + g(n, l) * dKup(m, l);
            for (int r = 0; r < d; ++r) v -= Gam(r, m, n) * Klow[r];
            DK(m, n) = v;
        }
    }
    return DK + DK.transpose();
}

std::vector<VectorXd> orthonormal_frame(const MatrixXd& g) {
    const int d = static_cast<int>(g.rows());
    std::vector<VectorXd> frame;
    frame.reserve(d);
    for (int k = 0; k < d; ++k) {
        VectorXd e = VectorXd::Zero(d);
        e[k] = 1.0;
        for (const VectorXd& f : frame) e -= f.dot(g * e) * f;
        const double norm2 = e.dot(g * e);
        if (norm2 <= 0.0) throw SingularMetric("orthonormal_frame: metric is not positive-definite");
        frame.push_back(e / std::sqrt(norm2));
    }
    return frame;
}

CurvatureBundle curvature_bundle(const MetricField& model, const VectorXd& theta, Backend backend, FdOptions fd) {
    CurvatureBundle out;
    out.christoffel = christoffel(model, theta, backend, fd);
    out.riemann = riemann(model, theta, backend, fd);
    out.ricci = ricci_tensor(model, theta, backend, fd);
    MatrixXd g(model.dimension(), model.dimension());
    model.eval_metric(theta, g);
    const MatrixXd ginv = g.inverse();
    out.scalar = (ginv.array() * out.ricci.array()).sum();
    out.weyl_projective = weyl_projective(model, theta, backend, fd);
    out.weyl_max_abs = out.weyl_projective.max_abs();
    return out;
}

} // namespace igdyn
