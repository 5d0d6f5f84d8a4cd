#pragma once

#include "igdyn/models.hpp"

namespace igdyn {

/// Closed-form metric at a point, with domain and positive-definiteness checks.
MetricTensor metric_at(const MetricField& model, const ParameterPoint& point);

/// The defining Fisher-Rao integral evaluated by Gauss-Hermite quadrature
/// adapted to the model's density (the integrand is polynomial x Gaussian
/// for the families here, so the result is exact up to roundoff). Serves as
/// the independent oracle for metric_at.
///
/// Throws DomainError when the model carries no probability density,
/// QuadratureNotConverged when two successive orders disagree.
MetricTensor fisher_rao_numeric(const MetricField& model, const ParameterPoint& point, int quadrature_order);

/// Relative entropy S(Theta) = -Integral P log(P/m) against a uniform box
/// prior of width prior_width_sigmas * sigma per axis, centered at the mean.
/// Throws PriorTooNarrow when the box clips more than 1e-12 of the mass.
double relative_entropy(const MetricField& model, const ParameterPoint& point,
                        double prior_width_sigmas = 20.0, int quadrature_order = 64);

} // namespace igdyn
