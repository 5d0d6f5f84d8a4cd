#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <vector>

#include "igdyn/errors.hpp"

namespace igdyn {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using MatrixXl = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXl = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

/// Role of a manifold coordinate.
enum class CoordLabel { mean, stddev, lagrangian };

std::string to_string(CoordLabel label);

/// Closed interval a coordinate must stay inside.
struct Bounds {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double x) const { return x >= lo && x <= hi; }
};

/// A point on a statistical manifold: coordinate values plus per-coordinate
/// role tags and admissible ranges.
struct ParameterPoint {
    VectorXd coords;
    std::vector<CoordLabel> labels;
    std::vector<Bounds> bounds;

    int dim() const { return static_cast<int>(coords.size()); }

    /// Throws DimensionMismatch / DomainError when the point is malformed.
    void validate() const;
};

/// Symmetric positive-definite metric at a point.
struct MetricTensor {
    int dim = 0;
    MatrixXd components;
    ParameterPoint point;
};

} // namespace igdyn
