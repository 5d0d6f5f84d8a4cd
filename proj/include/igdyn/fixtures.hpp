#pragma once

#include "igdyn/models.hpp"

namespace igdyn {

// Reference manifolds with known curvature, used to validate the tensor
// engine and the geodesic-deviation integrator.

/// Flat metric delta_ij in any dimension.
class EuclideanModel final : public MetricField {
public:
    explicit EuclideanModel(int dim) : dim_(dim) {}

    int dimension() const override { return dim_; }
    std::string id() const override { return "euclidean[" + std::to_string(dim_) + "]"; }
    CoordLabel label(int) const override { return CoordLabel::lagrangian; }

    void eval_metric(const VectorXd&, MatrixXd& g) const override { g = MatrixXd::Identity(dim_, dim_); }
    void eval_metric(const VectorXl&, MatrixXl& g) const override { g = MatrixXl::Identity(dim_, dim_); }
    void eval_metric_derivative(const VectorXd&, int, MatrixXd& dg) const override { dg.setZero(dim_, dim_); }
    void eval_metric_second_derivative(const VectorXd&, int, int, MatrixXd& ddg) const override {
        ddg.setZero(dim_, dim_);
    }

private:
    int dim_;
};

/// Upper half-plane {(x, y) : y > 0} with metric a (dx^2 + dy^2) / y^2:
/// constant sectional curvature K = -1/a.
class HyperbolicHalfPlaneModel final : public MetricField {
public:
    explicit HyperbolicHalfPlaneModel(double a = 1.0) : a_(a) {
        if (!(a > 0.0)) throw DomainError("HyperbolicHalfPlaneModel: scale must be > 0");
    }

    double curvature() const { return -1.0 / a_; }

    int dimension() const override { return 2; }
    std::string id() const override { return "hyperbolic_half_plane"; }
    CoordLabel label(int) const override { return CoordLabel::lagrangian; }
    Bounds bounds(int k) const override {
        if (k == 1) return Bounds{1e-12, 1e12};
        return Bounds{-1e12, 1e12};
    }

    void eval_metric(const VectorXd& th, MatrixXd& g) const override {
        g = MatrixXd::Identity(2, 2) * (a_ / (th[1] * th[1]));
    }
    void eval_metric(const VectorXl& th, MatrixXl& g) const override {
        g = MatrixXl::Identity(2, 2) * (static_cast<long double>(a_) / (th[1] * th[1]));
    }
    void eval_metric_derivative(const VectorXd& th, int k, MatrixXd& dg) const override {
        dg.setZero(2, 2);
        if (k == 1) dg = MatrixXd::Identity(2, 2) * (-2.0 * a_ / std::pow(th[1], 3));
    }
    void eval_metric_second_derivative(const VectorXd& th, int k, int l, MatrixXd& ddg) const override {
        ddg.setZero(2, 2);
        if (k == 1 && l == 1) ddg = MatrixXd::Identity(2, 2) * (6.0 * a_ / std::pow(th[1], 4));
    }

private:
    double a_;
};

/// Round 2-sphere of radius R0 in polar coordinates (u, v), u in (0, pi):
/// g = diag(R0^2, R0^2 sin^2 u); constant curvature K = 1/R0^2.
class SphereModel final : public MetricField {
public:
    explicit SphereModel(double radius = 1.0) : r0_(radius) {
        if (!(radius > 0.0)) throw DomainError("SphereModel: radius must be > 0");
    }

    int dimension() const override { return 2; }
    std::string id() const override { return "sphere"; }
    CoordLabel label(int) const override { return CoordLabel::lagrangian; }
    Bounds bounds(int k) const override {
        if (k == 0) return Bounds{1e-6, M_PI - 1e-6};
        return Bounds{-1e12, 1e12};
    }

    void eval_metric(const VectorXd& th, MatrixXd& g) const override {
        g.setZero(2, 2);
        g(0, 0) = r0_ * r0_;
        g(1, 1) = r0_ * r0_ * std::sin(th[0]) * std::sin(th[0]);
    }
    void eval_metric(const VectorXl& th, MatrixXl& g) const override {
        const long double r2 = static_cast<long double>(r0_) * r0_;
        g.setZero(2, 2);
        g(0, 0) = r2;
        g(1, 1) = r2 * std::sin(th[0]) * std::sin(th[0]);
    }
    void eval_metric_derivative(const VectorXd& th, int k, MatrixXd& dg) const override {
        dg.setZero(2, 2);
        if (k == 0) dg(1, 1) = r0_ * r0_ * std::sin(2.0 * th[0]);
    }
    void eval_metric_second_derivative(const VectorXd& th, int k, int l, MatrixXd& ddg) const override {
        ddg.setZero(2, 2);
        if (k == 0 && l == 0) ddg(1, 1) = 2.0 * r0_ * r0_ * std::cos(2.0 * th[0]);
    }

private:
    double r0_;
};

} // namespace igdyn
