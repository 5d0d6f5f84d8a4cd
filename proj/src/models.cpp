#include "igdyn/models.hpp"

#include <cmath>
#include <sstream>

namespace igdyn {

std::string to_string(CoordLabel label) {
    switch (label) {
        case CoordLabel::mean: return "MEAN";
        case CoordLabel::stddev: return "STDDEV";
        case CoordLabel::lagrangian: return "LAGRANGIAN";
    }
    return "?";
}

void ParameterPoint::validate() const {
    const int d = dim();
    if (static_cast<int>(labels.size()) != d || static_cast<int>(bounds.size()) != d)
        throw DimensionMismatch("ParameterPoint: labels/bounds length does not match coords");
    for (int k = 0; k < d; ++k) {
        if (!std::isfinite(coords[k]))
            throw DomainError("ParameterPoint: non-finite coordinate " + std::to_string(k));
        if (labels[k] == CoordLabel::stddev && coords[k] <= 0.0)
            throw DomainError("ParameterPoint: STDDEV coordinate " + std::to_string(k) + " must be > 0");
        if (!bounds[k].contains(coords[k]))
            throw DomainError("ParameterPoint: coordinate " + std::to_string(k) + " = " +
                              std::to_string(coords[k]) + " outside its domain");
    }
}

// ---------------------------------------------------------------------------
// DensityModel
// ---------------------------------------------------------------------------

double DensityModel::pdf(const VectorXd& x, const VectorXd& theta) const {
    return std::exp(log_pdf(x, theta));
}

std::vector<DensityBlock> DensityModel::independent_blocks() const {
    // one block spanning everything unless the model overrides
    return {DensityBlock{0, microstate_dimension(), 0, -1}};
}

// ---------------------------------------------------------------------------
// MetricField
// ---------------------------------------------------------------------------

Bounds MetricField::bounds(int k) const {
    DomainOptions d;
    if (label(k) == CoordLabel::stddev) return Bounds{d.sigma_min, d.sigma_max};
    return Bounds{-d.coord_abs_max, d.coord_abs_max};
}

MatrixXd MetricField::metric(const VectorXd& theta) const {
    check_coords(theta);
    MatrixXd g(dimension(), dimension());
    eval_metric(theta, g);
    return g;
}

ParameterPoint MetricField::make_point(VectorXd coords) const {
    const int d = dimension();
    if (static_cast<int>(coords.size()) != d)
        throw DimensionMismatch(id() + ": point has length " + std::to_string(coords.size()) +
                                ", model dimension is " + std::to_string(d));
    ParameterPoint p;
    p.coords = std::move(coords);
    p.labels.reserve(d);
    p.bounds.reserve(d);
    for (int k = 0; k < d; ++k) {
        p.labels.push_back(label(k));
        p.bounds.push_back(bounds(k));
    }
    return p;
}

void MetricField::check_point(const ParameterPoint& p) const {
    if (p.dim() != dimension())
        throw DimensionMismatch(id() + ": point has length " + std::to_string(p.dim()) +
                                ", model dimension is " + std::to_string(dimension()));
    p.validate();
}

void MetricField::check_coords(const VectorXd& coords) const {
    check_point(make_point(coords));
}

// ---------------------------------------------------------------------------
// GaussianProductModel
// ---------------------------------------------------------------------------

GaussianProductModel::GaussianProductModel(int n_particles, DomainOptions domain)
    : GaussianProductModel(PairsTag{}, 3 * n_particles, domain) {
    if (n_particles < 1) throw DomainError("GaussianProductModel: n_particles must be >= 1");
}

GaussianProductModel::GaussianProductModel(PairsTag, int n_pairs, DomainOptions domain)
    : n_pairs_(n_pairs), domain_(domain) {}

GaussianProductModel GaussianProductModel::with_pairs(int n_pairs, DomainOptions domain) {
    if (n_pairs < 1) throw DomainError("GaussianProductModel: n_pairs must be >= 1");
    return GaussianProductModel(PairsTag{}, n_pairs, domain);
}

std::string GaussianProductModel::id() const {
    return "gaussian_product[pairs=" + std::to_string(n_pairs_) + "]";
}

Bounds GaussianProductModel::bounds(int k) const {
    if (label(k) == CoordLabel::stddev) return Bounds{domain_.sigma_min, domain_.sigma_max};
    return Bounds{-domain_.coord_abs_max, domain_.coord_abs_max};
}

template <class Real>
void GaussianProductModel::metric_impl(const Eigen::Matrix<Real, Eigen::Dynamic, 1>& theta,
                                       Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& g) const {
    const int d = dimension();
    g.setZero(d, d);
    for (int p = 0; p < n_pairs_; ++p) {
        const Real s = theta[2 * p + 1];
        const Real inv2 = Real(1) / (s * s);
        g(2 * p, 2 * p) = inv2;
        g(2 * p + 1, 2 * p + 1) = Real(2) * inv2;
    }
}

void GaussianProductModel::eval_metric(const VectorXd& theta, MatrixXd& g) const { metric_impl(theta, g); }
void GaussianProductModel::eval_metric(const VectorXl& theta, MatrixXl& g) const { metric_impl(theta, g); }

void GaussianProductModel::eval_metric_derivative(const VectorXd& theta, int k, MatrixXd& dg) const {
    const int d = dimension();
    dg.setZero(d, d);
    if (k % 2 == 0) return; // metric does not depend on means
    const int p = k / 2;
    const double s = theta[2 * p + 1];
    const double inv3 = 1.0 / (s * s * s);
    dg(2 * p, 2 * p) = -2.0 * inv3;
    dg(2 * p + 1, 2 * p + 1) = -4.0 * inv3;
}

void GaussianProductModel::eval_metric_second_derivative(const VectorXd& theta, int k, int l, MatrixXd& ddg) const {
    const int d = dimension();
    ddg.setZero(d, d);
    if (k != l || k % 2 == 0) return;
    const int p = k / 2;
    const double s = theta[2 * p + 1];
    const double inv4 = 1.0 / (s * s * s * s);
    ddg(2 * p, 2 * p) = 6.0 * inv4;
    ddg(2 * p + 1, 2 * p + 1) = 12.0 * inv4;
}

double GaussianProductModel::log_pdf(const VectorXd& x, const VectorXd& theta) const {
    if (static_cast<int>(x.size()) != n_pairs_)
        throw DimensionMismatch(id() + ": microstate has length " + std::to_string(x.size()) +
                                ", expected " + std::to_string(n_pairs_));
    check_coords(theta);
    double lp = 0.0;
    for (int p = 0; p < n_pairs_; ++p) {
        const double mu = theta[2 * p], s = theta[2 * p + 1];
        const double z = (x[p] - mu) / s;
        lp += -0.5 * std::log(2.0 * M_PI) - std::log(s) - 0.5 * z * z;
    }
    return lp;
}

VectorXd GaussianProductModel::score(const VectorXd& x, const VectorXd& theta) const {
    VectorXd s(dimension());
    for (int p = 0; p < n_pairs_; ++p) {
        const double mu = theta[2 * p], sg = theta[2 * p + 1];
        const double z = (x[p] - mu) / sg;
        s[2 * p] = z / sg;
        s[2 * p + 1] = (z * z - 1.0) / sg;
    }
    return s;
}

VectorXd GaussianProductModel::sample_location(const VectorXd& theta) const {
    VectorXd m(n_pairs_);
    for (int p = 0; p < n_pairs_; ++p) m[p] = theta[2 * p];
    return m;
}

MatrixXd GaussianProductModel::sample_transform(const VectorXd& theta) const {
    MatrixXd L = MatrixXd::Zero(n_pairs_, n_pairs_);
    for (int p = 0; p < n_pairs_; ++p) L(p, p) = theta[2 * p + 1];
    return L;
}

std::vector<DensityBlock> GaussianProductModel::independent_blocks() const {
    std::vector<DensityBlock> blocks;
    blocks.reserve(n_pairs_);
    for (int p = 0; p < n_pairs_; ++p) blocks.push_back(DensityBlock{p, 1, 2 * p, 2});
    return blocks;
}

// ---------------------------------------------------------------------------
// CorrelatedGaussianModel
// ---------------------------------------------------------------------------

CorrelatedGaussianModel::CorrelatedGaussianModel(double r, DomainOptions domain) : r_(r), domain_(domain) {
    if (!(std::abs(r) < 1.0))
        throw DomainError("CorrelatedGaussianModel: correlation must satisfy |r| < 1, got " + std::to_string(r));
}

std::string CorrelatedGaussianModel::id() const {
    std::ostringstream os;
    os << "correlated_gaussian[r=" << r_ << "]";
    return os.str();
}

Bounds CorrelatedGaussianModel::bounds(int k) const {
    if (label(k) == CoordLabel::stddev) return Bounds{domain_.sigma_min, domain_.sigma_max};
    return Bounds{-domain_.coord_abs_max, domain_.coord_abs_max};
}

template <class Real>
void CorrelatedGaussianModel::metric_impl(const Eigen::Matrix<Real, Eigen::Dynamic, 1>& theta,
                                          Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& g) const {
    const Real sx = theta[1], sy = theta[3];
    const Real r = Real(r_);
    const Real k = Real(1) / (Real(1) - r * r);
    g.setZero(4, 4);
    g(0, 0) = k / (sx * sx);
    g(1, 1) = (Real(2) - r * r) * k / (sx * sx);
    g(2, 2) = k / (sy * sy);
    g(3, 3) = (Real(2) - r * r) * k / (sy * sy);
    g(0, 2) = g(2, 0) = -r * k / (sx * sy);
    g(1, 3) = g(3, 1) = -r * r * k / (sx * sy);
}

void CorrelatedGaussianModel::eval_metric(const VectorXd& theta, MatrixXd& g) const { metric_impl(theta, g); }
void CorrelatedGaussianModel::eval_metric(const VectorXl& theta, MatrixXl& g) const { metric_impl(theta, g); }

namespace {
// Entry exponents of the correlated metric in (sigma_x, sigma_y): every
// nonzero entry is coeff * sigma_x^ax * sigma_y^ay with ax, ay in {0,-1,-2}.
struct PowEntry {
    int ax, ay;
};
constexpr PowEntry kCorrPow[4][4] = {
    {{-2, 0}, {0, 0}, {-1, -1}, {0, 0}},
    {{0, 0}, {-2, 0}, {0, 0}, {-1, -1}},
    {{-1, -1}, {0, 0}, {0, -2}, {0, 0}},
    {{0, 0}, {-1, -1}, {0, 0}, {0, -2}},
};
} // namespace

void CorrelatedGaussianModel::eval_metric_derivative(const VectorXd& theta, int k, MatrixXd& dg) const {
    dg.setZero(4, 4);
    if (k % 2 == 0) return; // independent of means
    MatrixXd g(4, 4);
    eval_metric(theta, g);
    const double sx = theta[1], sy = theta[3];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (g(i, j) == 0.0) continue;
            const int a = (k == 1) ? kCorrPow[i][j].ax : kCorrPow[i][j].ay;
            const double s = (k == 1) ? sx : sy;
            dg(i, j) = g(i, j) * a / s;
        }
}

void CorrelatedGaussianModel::eval_metric_second_derivative(const VectorXd& theta, int k, int l, MatrixXd& ddg) const {
    ddg.setZero(4, 4);
    if (k % 2 == 0 || l % 2 == 0) return;
    MatrixXd g(4, 4);
    eval_metric(theta, g);
    const double sx = theta[1], sy = theta[3];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (g(i, j) == 0.0) continue;
            const int ax = kCorrPow[i][j].ax, ay = kCorrPow[i][j].ay;
            if (k == l) {
                const int a = (k == 1) ? ax : ay;
                const double s = (k == 1) ? sx : sy;
                ddg(i, j) = g(i, j) * a * (a - 1) / (s * s);
            } else {
                ddg(i, j) = g(i, j) * ax * ay / (sx * sy);
            }
        }
}

double CorrelatedGaussianModel::log_pdf(const VectorXd& x, const VectorXd& theta) const {
    if (x.size() != 2)
        throw DimensionMismatch(id() + ": microstate has length " + std::to_string(x.size()) + ", expected 2");
    check_coords(theta);
    const double sx = theta[1], sy = theta[3];
    const double X = (x[0] - theta[0]) / sx;
    const double Y = (x[1] - theta[2]) / sy;
    const double c = 1.0 - r_ * r_;
    const double Q = X * X - 2.0 * r_ * X * Y + Y * Y;
    return -std::log(2.0 * M_PI * sx * sy * std::sqrt(c)) - Q / (2.0 * c);
}

VectorXd CorrelatedGaussianModel::score(const VectorXd& x, const VectorXd& theta) const {
    const double sx = theta[1], sy = theta[3];
    const double X = (x[0] - theta[0]) / sx;
    const double Y = (x[1] - theta[2]) / sy;
    const double c = 1.0 - r_ * r_;
    VectorXd s(4);
    s[0] = (X - r_ * Y) / (sx * c);
    s[1] = ((X * X - r_ * X * Y) / c - 1.0) / sx;
    s[2] = (Y - r_ * X) / (sy * c);
    s[3] = ((Y * Y - r_ * X * Y) / c - 1.0) / sy;
    return s;
}

VectorXd CorrelatedGaussianModel::sample_location(const VectorXd& theta) const {
    VectorXd m(2);
    m << theta[0], theta[2];
    return m;
}

MatrixXd CorrelatedGaussianModel::sample_transform(const VectorXd& theta) const {
    // Cholesky factor of [[sx^2, r sx sy], [r sx sy, sy^2]]
    const double sx = theta[1], sy = theta[3];
    MatrixXd L = MatrixXd::Zero(2, 2);
    L(0, 0) = sx;
    L(1, 0) = r_ * sy;
    L(1, 1) = sy * std::sqrt(1.0 - r_ * r_);
    return L;
}

// ---------------------------------------------------------------------------
// JacobiIHOModel
// ---------------------------------------------------------------------------

JacobiIHOModel::JacobiIHOModel(VectorXd frequencies, DomainOptions domain)
    : omega_(std::move(frequencies)), domain_(domain) {
    if (omega_.size() < 1) throw DomainError("JacobiIHOModel: needs at least one frequency");
    for (int j = 0; j < omega_.size(); ++j)
        if (!(omega_[j] >= 0.0) || !std::isfinite(omega_[j]))
            throw DomainError("JacobiIHOModel: frequencies must be finite and >= 0");
}

std::string JacobiIHOModel::id() const {
    return "iho[n=" + std::to_string(omega_.size()) + "]";
}

Bounds JacobiIHOModel::bounds(int) const {
    return Bounds{-domain_.coord_abs_max, domain_.coord_abs_max};
}

double JacobiIHOModel::phi(const VectorXd& theta) const {
    double p = 0.0;
    for (int j = 0; j < omega_.size(); ++j) p -= 0.5 * omega_[j] * omega_[j] * theta[j] * theta[j];
    return p;
}

double JacobiIHOModel::conformal_factor(const VectorXd& theta) const { return 1.0 - phi(theta); }

template <class Real>
void JacobiIHOModel::metric_impl(const Eigen::Matrix<Real, Eigen::Dynamic, 1>& theta,
                                 Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& g) const {
    const int n = dimension();
    Real F = Real(1);
    for (int j = 0; j < n; ++j) {
        const Real w = Real(omega_[j]);
        F += Real(0.5) * w * w * theta[j] * theta[j];
    }
    g.setZero(n, n);
    for (int j = 0; j < n; ++j) g(j, j) = F;
}

void JacobiIHOModel::eval_metric(const VectorXd& theta, MatrixXd& g) const { metric_impl(theta, g); }
void JacobiIHOModel::eval_metric(const VectorXl& theta, MatrixXl& g) const { metric_impl(theta, g); }

void JacobiIHOModel::eval_metric_derivative(const VectorXd& theta, int k, MatrixXd& dg) const {
    const int n = dimension();
    dg = MatrixXd::Identity(n, n) * (omega_[k] * omega_[k] * theta[k]);
}

void JacobiIHOModel::eval_metric_second_derivative(const VectorXd&, int k, int l, MatrixXd& ddg) const {
    const int n = dimension();
    ddg.setZero(n, n);
    if (k == l) ddg = MatrixXd::Identity(n, n) * (omega_[k] * omega_[k]);
}

} // namespace igdyn
