#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "igdyn/types.hpp"

namespace igdyn {

/// Independent factor of a product density: a contiguous range of microstate
/// axes whose distribution depends only on a contiguous range of parameters.
struct DensityBlock {
    int micro_offset = 0;
    int micro_count = 0;
    int param_offset = 0;
    int param_count = 0;
};

/// Probability density P(X | Theta) attached to a statistical model.
class DensityModel {
public:
    virtual ~DensityModel() = default;

    virtual int microstate_dimension() const = 0;
    virtual double log_pdf(const VectorXd& x, const VectorXd& theta) const = 0;
    double pdf(const VectorXd& x, const VectorXd& theta) const;

    /// Score d log P / d Theta at fixed X.
    virtual VectorXd score(const VectorXd& x, const VectorXd& theta) const = 0;

    /// Standardization X = sample_location + sample_transform * u with
    /// u ~ iid standard normal. Exact for the Gaussian families here.
    virtual VectorXd sample_location(const VectorXd& theta) const = 0;
    virtual MatrixXd sample_transform(const VectorXd& theta) const = 0;

    /// Factorization of the density into independent blocks; a single block
    /// spanning everything when no product structure exists.
    virtual std::vector<DensityBlock> independent_blocks() const;
};

/// A parametric Riemannian metric field over a coordinate domain. Analytic
/// first and second derivatives back the analytic curvature path; the
/// extended-precision metric overload backs the finite-difference path.
class MetricField {
public:
    virtual ~MetricField() = default;

    virtual int dimension() const = 0;
    virtual std::string id() const = 0;
    virtual CoordLabel label(int k) const = 0;
    virtual Bounds bounds(int k) const;

    virtual void eval_metric(const VectorXd& theta, MatrixXd& g) const = 0;
    virtual void eval_metric(const VectorXl& theta, MatrixXl& g) const = 0;
    virtual void eval_metric_derivative(const VectorXd& theta, int k, MatrixXd& dg) const = 0;
    virtual void eval_metric_second_derivative(const VectorXd& theta, int k, int l, MatrixXd& ddg) const = 0;

    /// Density attached to this manifold, or nullptr when the model defines
    /// none (the Jacobi-metric models carry no probability interpretation).
    virtual const DensityModel* density() const { return nullptr; }

    MatrixXd metric(const VectorXd& theta) const;
    ParameterPoint make_point(VectorXd coords) const;
    void check_point(const ParameterPoint& p) const;
    void check_coords(const VectorXd& coords) const;
};

/// Default coordinate bounds used by every model unless overridden: standard
/// deviations live in [sigma_min, sigma_max], other coordinates are clamped
/// to a wide finite box.
struct DomainOptions {
    double sigma_min = 1e-6;
    double sigma_max = 1e6;
    double coord_abs_max = 1e12;
};

/// Product of independent 1-D Gaussians: N particles, three (mean, deviation)
/// pairs per particle, manifold dimension 6N. Coordinates are interleaved
/// (mu_0, sigma_0, mu_1, sigma_1, ...); the metric is block-diagonal with
/// 2x2 blocks diag(sigma^-2, 2 sigma^-2).
class GaussianProductModel final : public MetricField, public DensityModel {
public:
    explicit GaussianProductModel(int n_particles, DomainOptions domain = {});

    /// A model with an explicit pair count (a single (mu, sigma) block is the
    /// building block every closed form acts on).
    static GaussianProductModel with_pairs(int n_pairs, DomainOptions domain = {});

    int n_particles() const { return n_pairs_ / 3; }
    int n_pairs() const { return n_pairs_; }

    int dimension() const override { return 2 * n_pairs_; }
    std::string id() const override;
    CoordLabel label(int k) const override { return (k % 2 == 0) ? CoordLabel::mean : CoordLabel::stddev; }
    Bounds bounds(int k) const override;

    void eval_metric(const VectorXd& theta, MatrixXd& g) const override;
    void eval_metric(const VectorXl& theta, MatrixXl& g) const override;
    void eval_metric_derivative(const VectorXd& theta, int k, MatrixXd& dg) const override;
    void eval_metric_second_derivative(const VectorXd& theta, int k, int l, MatrixXd& ddg) const override;
    const DensityModel* density() const override { return this; }

    int microstate_dimension() const override { return n_pairs_; }
    double log_pdf(const VectorXd& x, const VectorXd& theta) const override;
    VectorXd score(const VectorXd& x, const VectorXd& theta) const override;
    VectorXd sample_location(const VectorXd& theta) const override;
    MatrixXd sample_transform(const VectorXd& theta) const override;
    std::vector<DensityBlock> independent_blocks() const override;

private:
    struct PairsTag {};
    GaussianProductModel(PairsTag, int n_pairs, DomainOptions domain);

    template <class Real>
    void metric_impl(const Eigen::Matrix<Real, Eigen::Dynamic, 1>& theta,
                     Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& g) const;

    int n_pairs_;
    DomainOptions domain_;
};

/// Two dependent Gaussian microvariables with a fixed correlation coefficient
/// r in (-1, 1); manifold coordinates (mu_x, sigma_x, mu_y, sigma_y).
class CorrelatedGaussianModel final : public MetricField, public DensityModel {
public:
    explicit CorrelatedGaussianModel(double r, DomainOptions domain = {});

    double correlation() const { return r_; }

    int dimension() const override { return 4; }
    std::string id() const override;
    CoordLabel label(int k) const override { return (k % 2 == 0) ? CoordLabel::mean : CoordLabel::stddev; }
    Bounds bounds(int k) const override;

    void eval_metric(const VectorXd& theta, MatrixXd& g) const override;
    void eval_metric(const VectorXl& theta, MatrixXl& g) const override;
    void eval_metric_derivative(const VectorXd& theta, int k, MatrixXd& dg) const override;
    void eval_metric_second_derivative(const VectorXd& theta, int k, int l, MatrixXd& ddg) const override;
    const DensityModel* density() const override { return this; }

    int microstate_dimension() const override { return 2; }
    double log_pdf(const VectorXd& x, const VectorXd& theta) const override;
    VectorXd score(const VectorXd& x, const VectorXd& theta) const override;
    VectorXd sample_location(const VectorXd& theta) const override;
    MatrixXd sample_transform(const VectorXd& theta) const override;

private:
    template <class Real>
    void metric_impl(const Eigen::Matrix<Real, Eigen::Dynamic, 1>& theta,
                     Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& g) const;

    double r_;
    DomainOptions domain_;
};

/// Kinetic-energy (Jacobi) metric of a set of uncoupled inverted harmonic
/// oscillators: g_ij = (1 - Phi) delta_ij with Phi = -1/2 sum omega_j^2 theta_j^2,
/// so the conformal factor is >= 1 everywhere. No probability density.
class JacobiIHOModel final : public MetricField {
public:
    explicit JacobiIHOModel(VectorXd frequencies, DomainOptions domain = {});

    const VectorXd& frequencies() const { return omega_; }
    double energy_norm() const { return 1.0; }

    /// Phi(theta) = -1/2 sum omega_j^2 theta_j^2 (always <= 0).
    double phi(const VectorXd& theta) const;
    /// 1 - Phi(theta) (always >= 1).
    double conformal_factor(const VectorXd& theta) const;

    int dimension() const override { return static_cast<int>(omega_.size()); }
    std::string id() const override;
    CoordLabel label(int) const override { return CoordLabel::lagrangian; }
    Bounds bounds(int k) const override;

    void eval_metric(const VectorXd& theta, MatrixXd& g) const override;
    void eval_metric(const VectorXl& theta, MatrixXl& g) const override;
    void eval_metric_derivative(const VectorXd& theta, int k, MatrixXd& dg) const override;
    void eval_metric_second_derivative(const VectorXd& theta, int k, int l, MatrixXd& ddg) const override;

private:
    template <class Real>
    void metric_impl(const Eigen::Matrix<Real, Eigen::Dynamic, 1>& theta,
                     Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& g) const;

    VectorXd omega_;
    DomainOptions domain_;
};

} // namespace igdyn
