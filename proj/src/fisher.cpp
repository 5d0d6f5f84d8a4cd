#include "igdyn/fisher.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "igdyn/quadrature.hpp"

namespace igdyn {

namespace {

// Tensor-product Gauss-Hermite expectation of f(u) over iid standard normals
// on `axes` dimensions; f receives the node vector.
template <class F>
void gh_expect(int axes, const QuadratureRule& rule, const F& f) {
    const int q = rule.order();
    std::vector<int> idx(axes, 0);
    VectorXd u(axes);
    while (true) {
        double w = 1.0;
        for (int a = 0; a < axes; ++a) {
            u[a] = rule.nodes[idx[a]];
            w *= rule.weights[idx[a]];
        }
        f(u, w);
        int a = 0;
        for (; a < axes; ++a) {
            if (++idx[a] < q) break;
            idx[a] = 0;
        }
        if (a == axes) break;
    }
}

MatrixXd fisher_quadrature(const DensityModel& density, const MetricField& model,
                           const VectorXd& theta, int order) {
    const int d = model.dimension();
    const VectorXd loc = density.sample_location(theta);
    const MatrixXd L = density.sample_transform(theta);
    const QuadratureRule rule = gauss_hermite(order);
    const auto blocks = density.independent_blocks();

    MatrixXd G = MatrixXd::Zero(d, d);
    // Cross-block covariance of scores is E[s_a] E[s_b] by independence; the
    // per-block score means are accumulated alongside the block integrals.
    VectorXd score_mean = VectorXd::Zero(d);

    for (const auto& blk : blocks) {
        const int pc = (blk.param_count < 0) ? d : blk.param_count;
        gh_expect(blk.micro_count, rule, [&](const VectorXd& u, double w) {
            VectorXd x = loc;
            // block-local transform: rows/cols of L inside the block
            for (int i = 0; i < blk.micro_count; ++i) {
                double xi = 0.0;
                for (int j = 0; j < blk.micro_count; ++j)
                    xi += L(blk.micro_offset + i, blk.micro_offset + j) * u[j];
                x[blk.micro_offset + i] += xi;
            }
            const VectorXd s = density.score(x, theta);
            for (int a = 0; a < pc; ++a) {
                const int ia = blk.param_offset + a;
                score_mean[ia] += w * s[ia];
                for (int b = 0; b <= a; ++b) {
                    const int ib = blk.param_offset + b;
                    G(ia, ib) += w * s[ia] * s[ib];
                }
            }
        });
    }
    // cross-block entries and symmetrization
    for (const auto& blk_a : blocks) {
        const int pa = (blk_a.param_count < 0) ? d : blk_a.param_count;
        for (const auto& blk_b : blocks) {
            if (blk_a.param_offset <= blk_b.param_offset) continue;
            const int pb = (blk_b.param_count < 0) ? d : blk_b.param_count;
            for (int a = 0; a < pa; ++a)
                for (int b = 0; b < pb; ++b)
                    G(blk_a.param_offset + a, blk_b.param_offset + b) =
                        score_mean[blk_a.param_offset + a] * score_mean[blk_b.param_offset + b];
        }
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) G(i, j) = G(j, i);
    return G;
}

} // namespace

MetricTensor metric_at(const MetricField& model, const ParameterPoint& point) {
    model.check_point(point);
    MetricTensor m;
    m.dim = model.dimension();
    m.point = point;
    m.components.resize(m.dim, m.dim);
    model.eval_metric(point.coords, m.components);
    Eigen::LLT<MatrixXd> llt(m.components);
    if (llt.info() != Eigen::Success)
        throw DomainError(model.id() + ": metric is not positive-definite at the given point");
    return m;
}

MetricTensor fisher_rao_numeric(const MetricField& model, const ParameterPoint& point, int quadrature_order) {
    if (quadrature_order < 20)
        throw std::invalid_argument("fisher_rao_numeric: quadrature_order must be >= 20");
    const DensityModel* density = model.density();
    if (density == nullptr)
        throw DomainError(model.id() + ": model defines no probability density, "
                          "the Fisher-Rao integral is undefined");
    model.check_point(point);

    const MatrixXd G = fisher_quadrature(*density, model, point.coords, quadrature_order);
    const MatrixXd G2 = fisher_quadrature(*density, model, point.coords, quadrature_order + 6);
    const double scale = std::max(1.0, G.cwiseAbs().maxCoeff());
    if ((G - G2).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw QuadratureNotConverged("fisher_rao_numeric: successive quadrature orders disagree");

    MetricTensor m;
    m.dim = model.dimension();
    m.point = point;
    m.components = G2;
    return m;
}

double relative_entropy(const MetricField& model, const ParameterPoint& point,
                        double prior_width_sigmas, int quadrature_order) {
    const DensityModel* density = model.density();
    if (density == nullptr)
        throw DomainError(model.id() + ": model defines no probability density");
    model.check_point(point);
    const VectorXd& theta = point.coords;

    // box prior support check: per-axis two-sided Gaussian tail mass
    const int m_dim = density->microstate_dimension();
    const double q = prior_width_sigmas / 2.0;
    double mass_out = 0.0;
    for (int a = 0; a < m_dim; ++a) mass_out += std::erfc(q / std::sqrt(2.0));
    if (mass_out > 1e-12)
        throw PriorTooNarrow("relative_entropy: prior box clips " + std::to_string(mass_out) +
                             " of the probability mass");

    // log of the box volume; per-axis width w * sigma_a read off the sample
    // transform diagonal scale
    const MatrixXd L = density->sample_transform(theta);
    double log_vol = 0.0;
    for (int a = 0; a < m_dim; ++a) {
        const double sigma_a = L.row(a).norm(); // marginal standard deviation
        log_vol += std::log(prior_width_sigmas * sigma_a);
    }

    // E_P[-log P] by Gauss-Hermite; exact since log P is quadratic in X.
    // Evaluated blockwise: with x varying only inside block b (others at the
    // mean), -log P splits as l_b(x_b) + sum_{b' != b} l_{b'}(mean), so
    // h = sum_b E_b[-log P] - (n_blocks - 1) * (-log P(mean)).
    const VectorXd loc = density->sample_location(theta);
    const QuadratureRule rule = gauss_hermite(quadrature_order);
    const auto blocks = density->independent_blocks();
    double h = 0.0;
    for (const auto& blk : blocks) {
        gh_expect(blk.micro_count, rule, [&](const VectorXd& u, double w) {
            VectorXd x = loc;
            for (int i = 0; i < blk.micro_count; ++i) {
                double xi = 0.0;
                for (int j = 0; j < blk.micro_count; ++j)
                    xi += L(blk.micro_offset + i, blk.micro_offset + j) * u[j];
                x[blk.micro_offset + i] += xi;
            }
            h += w * (-density->log_pdf(x, theta));
        });
    }
    h -= (static_cast<double>(blocks.size()) - 1.0) * (-density->log_pdf(loc, theta));
    return h - log_vol;
}

} // namespace igdyn
