#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Cholesky>
#include <cmath>
#include <random>

#include "igdyn/fisher.hpp"
#include "igdyn/models.hpp"
#include "igdyn/quadrature.hpp"

using namespace igdyn;

namespace {

VectorXd vec(std::initializer_list<double> v) {
    VectorXd x(static_cast<int>(v.size()));
    int i = 0;
    for (double e : v) x[i++] = e;
    return x;
}

VectorXd random_point(const MetricField& model, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mean_d(-2.0, 2.0);
    std::uniform_real_distribution<double> sigma_d(0.4, 3.0);
    std::uniform_real_distribution<double> coord_d(-2.0, 2.0);
    VectorXd x(model.dimension());
    for (int k = 0; k < model.dimension(); ++k) {
        switch (model.label(k)) {
            case CoordLabel::mean: x[k] = mean_d(rng); break;
            case CoordLabel::stddev: x[k] = sigma_d(rng); break;
            case CoordLabel::lagrangian: x[k] = coord_d(rng); break;
        }
    }
    return x;
}

} // namespace

TEST_CASE("gauss-hermite rule basics") {
    const QuadratureRule r2 = gauss_hermite(2);
    CHECK(r2.nodes[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r2.nodes[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r2.weights[0] == doctest::Approx(0.5).epsilon(1e-12));

    const QuadratureRule r8 = gauss_hermite(8);
    double m0 = 0.0, m2 = 0.0, m4 = 0.0;
    for (int i = 0; i < 8; ++i) {
        m0 += r8.weights[i];
        m2 += r8.weights[i] * r8.nodes[i] * r8.nodes[i];
        m4 += r8.weights[i] * std::pow(r8.nodes[i], 4);
    }
    CHECK(m0 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m2 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m4 == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const QuadratureRule r = gauss_legendre(6, 0.0, 2.0);
    double s = 0.0;
    for (int i = 0; i < r.order(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 3);
    CHECK(s == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("metric_at: closed-form values") {
    SUBCASE("single Gaussian pair, sigma = 2") {
        const auto model = GaussianProductModel::with_pairs(1);
        const MetricTensor m = metric_at(model, model.make_point(vec({0.0, 2.0})));
        CHECK(m.components(0, 0) == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(m.components(1, 1) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(m.components(0, 1) == 0.0);
    }
    SUBCASE("correlated at r = 0 decouples") {
        const CorrelatedGaussianModel model(0.0);
        const MetricTensor m = metric_at(model, model.make_point(vec({0.3, 1.0, -0.7, 1.0})));
        MatrixXd expected = MatrixXd::Zero(4, 4);
        expected.diagonal() << 1.0, 2.0, 1.0, 2.0;
        CHECK((m.components - expected).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("inverted-oscillator metric is the identity at the origin") {
        const JacobiIHOModel model(vec({1.0, 1.0}));
        const MetricTensor m = metric_at(model, model.make_point(vec({0.0, 0.0})));
        CHECK((m.components - MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("metric is symmetric positive-definite across the families") {
    std::mt19937_64 rng(11);
    const GaussianProductModel g(2);
    const CorrelatedGaussianModel c(0.7);
    const JacobiIHOModel iho(vec({0.5, 1.0, 2.0}));
    const MetricField* models[] = {&g, &c, &iho};
    for (const MetricField* model : models) {
        for (int i = 0; i < 20; ++i) {
            const VectorXd x = random_point(*model, rng);
            const MatrixXd m = model->metric(x);
            CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-12);
            Eigen::LLT<MatrixXd> llt(m);
            CHECK(llt.info() == Eigen::Success);
        }
    }
}

TEST_CASE("correlated model at r = 0 equals independent pair blocks exactly") {
    const CorrelatedGaussianModel corr(0.0);
    const auto pair = GaussianProductModel::with_pairs(1);
    std::mt19937_64 rng(12);
    for (int i = 0; i < 10; ++i) {
        const VectorXd x = random_point(corr, rng);
        const MatrixXd m = corr.metric(x);
        CHECK(m.block(0, 0, 2, 2) == pair.metric(vec({x[0], x[1]})));
        CHECK(m.block(2, 2, 2, 2) == pair.metric(vec({x[2], x[3]})));
        CHECK(m.block(0, 2, 2, 2).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("oscillator metric determinant equals the conformal factor power") {
    const JacobiIHOModel model(vec({0.7, 1.3, 0.2}));
    std::mt19937_64 rng(13);
    for (int i = 0; i < 10; ++i) {
        const VectorXd x = random_point(model, rng);
        const double F = model.conformal_factor(x);
        CHECK(model.metric(x).determinant() ==
              doctest::Approx(std::pow(F, model.dimension())).epsilon(1e-12));
    }
}

TEST_CASE("pdf values") {
    SUBCASE("standard normal peak") {
        const auto model = GaussianProductModel::with_pairs(1);
        CHECK(model.pdf(vec({0.5}), vec({0.5, 1.0})) ==
              doctest::Approx(0.3989422804014327).epsilon(1e-13));
    }
    SUBCASE("correlated density factorizes at r = 0") {
        const CorrelatedGaussianModel corr(0.0);
        const auto pair = GaussianProductModel::with_pairs(1);
        const VectorXd theta = vec({0.2, 1.4, -0.5, 0.8});
        const VectorXd x = vec({0.9, -1.2});
        const double rhs = pair.pdf(vec({x[0]}), vec({theta[0], theta[1]})) *
                           pair.pdf(vec({x[1]}), vec({theta[2], theta[3]}));
        CHECK(corr.pdf(x, theta) == doctest::Approx(rhs).epsilon(1e-13));
    }
    SUBCASE("correlated density at the mean, r = 0.5") {
        const CorrelatedGaussianModel corr(0.5);
        CHECK(corr.pdf(vec({0.0, 0.0}), vec({0.0, 1.0, 0.0, 1.0})) ==
              doctest::Approx(0.18377629847393068).epsilon(1e-13));
    }
    SUBCASE("normalization by box quadrature") {
        const auto pair = GaussianProductModel::with_pairs(1);
        const VectorXd theta = vec({0.7, 1.3});
        const QuadratureRule gl =
            gauss_legendre(80, theta[0] - 10 * theta[1], theta[0] + 10 * theta[1]);
        double mass = 0.0;
        for (int i = 0; i < gl.order(); ++i) mass += gl.weights[i] * pair.pdf(vec({gl.nodes[i]}), theta);
        CHECK(mass > 1.0 - 1e-9);
        CHECK(mass < 1.0 + 1e-9);

        const CorrelatedGaussianModel corr(0.6);
        const VectorXd tc = vec({0.0, 1.0, 0.5, 0.7});
        const QuadratureRule gx = gauss_legendre(80, -10.0, 10.0);
        const QuadratureRule gy = gauss_legendre(80, 0.5 - 7.0, 0.5 + 7.0);
        double mass2 = 0.0;
        for (int i = 0; i < gx.order(); ++i)
            for (int j = 0; j < gy.order(); ++j)
                mass2 += gx.weights[i] * gy.weights[j] * corr.pdf(vec({gx.nodes[i], gy.nodes[j]}), tc);
        CHECK(mass2 > 1.0 - 1e-9);
        CHECK(mass2 < 1.0 + 1e-9);
    }
}

TEST_CASE("fisher_rao_numeric reproduces the closed-form metric") {
    SUBCASE("pair at sigma = 2 and sigma = 1") {
        const auto model = GaussianProductModel::with_pairs(1);
        const MetricTensor m2 = fisher_rao_numeric(model, model.make_point(vec({0.0, 2.0})), 24);
        CHECK(m2.components(0, 0) == doctest::Approx(0.25).epsilon(1e-10));
        CHECK(m2.components(1, 1) == doctest::Approx(0.5).epsilon(1e-10));
        const MetricTensor m1 = fisher_rao_numeric(model, model.make_point(vec({1.0, 1.0})), 24);
        CHECK(m1.components(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(m1.components(1, 1) == doctest::Approx(2.0).epsilon(1e-10));
    }
    SUBCASE("correlated r = 0.5 entrywise against the closed form") {
        const CorrelatedGaussianModel model(0.5);
        const ParameterPoint p = model.make_point(vec({0.0, 1.0, 0.0, 1.0}));
        CHECK((fisher_rao_numeric(model, p, 24).components - metric_at(model, p).components)
                  .cwiseAbs()
                  .maxCoeff() < 1e-8);
    }
    SUBCASE("random points per probability family") {
        std::mt19937_64 rng(21);
        const GaussianProductModel g(1);
        for (int i = 0; i < 50; ++i) {
            const ParameterPoint p = g.make_point(random_point(g, rng));
            CHECK((metric_at(g, p).components - fisher_rao_numeric(g, p, 24).components)
                      .cwiseAbs()
                      .maxCoeff() < 1e-8);
        }
        for (double r : {-0.8, -0.3, 0.45, 0.9}) {
            const CorrelatedGaussianModel c(r);
            for (int i = 0; i < 13; ++i) {
                const ParameterPoint p = c.make_point(random_point(c, rng));
                CHECK((metric_at(c, p).components - fisher_rao_numeric(c, p, 24).components)
                          .cwiseAbs()
                          .maxCoeff() < 1e-8);
            }
        }
    }
    SUBCASE("precondition and missing-density errors") {
        const auto model = GaussianProductModel::with_pairs(1);
        CHECK_THROWS_AS(fisher_rao_numeric(model, model.make_point(vec({0.0, 1.0})), 8),
                        std::invalid_argument);
        const JacobiIHOModel iho(vec({1.0, 1.0}));
        CHECK_THROWS_AS(fisher_rao_numeric(iho, iho.make_point(vec({0.0, 0.0})), 24), DomainError);
    }
}

TEST_CASE("domain and dimension errors") {
    const auto model = GaussianProductModel::with_pairs(1);
    CHECK_THROWS_AS(model.metric(vec({0.0, -1.0})), DomainError);
    CHECK_THROWS_AS(model.metric(vec({0.0, 0.0})), DomainError);
    CHECK_THROWS_AS(model.metric(vec({0.0, 1.0, 2.0})), DimensionMismatch);
    CHECK_THROWS_AS(CorrelatedGaussianModel(1.0), DomainError);
    CHECK_THROWS_AS(CorrelatedGaussianModel(-1.2), DomainError);
    CHECK_THROWS_AS(JacobiIHOModel(vec({1.0, -0.5})), DomainError);
}

namespace {

// test-side oracle: entropy of the quartic-perturbed pair density
//   P_eps(x) = P(x) (1 + eps He4(u)), u = (x - mu)/sigma,
// with He4(u) = u^4 - 6u^2 + 3 orthogonal to {1, u, u^2} under the Gaussian,
// so normalization, mean and variance are preserved exactly.
double perturbed_entropy(double mu, double sigma, double eps, double width_sigmas) {
    const QuadratureRule gh = gauss_hermite(80);
    double h = 0.0;
    for (int i = 0; i < gh.order(); ++i) {
        const double u = gh.nodes[i];
        const double he4 = u * u * u * u - 6.0 * u * u + 3.0;
        const double w = 1.0 + eps * he4;
        const double log_p = -0.5 * std::log(2.0 * M_PI) - std::log(sigma) - 0.5 * u * u + std::log(w);
        h += gh.weights[i] * w * (-log_p);
    }
    (void)mu;
    return h - std::log(width_sigmas * sigma);
}

} // namespace

TEST_CASE("relative entropy") {
    const auto model = GaussianProductModel::with_pairs(1);
    SUBCASE("same prior box: entropy difference is log 2") {
        // sigma = 1 under a 40-sigma box and sigma = 2 under a 20-sigma box
        // share the identical absolute prior, so the box constant cancels
        const double s1 = relative_entropy(model, model.make_point(vec({0.0, 1.0})), 40.0);
        const double s2 = relative_entropy(model, model.make_point(vec({0.0, 2.0})), 20.0);
        CHECK(s2 - s1 == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    }
    SUBCASE("matches the quadrature oracle at eps = 0") {
        const double s = relative_entropy(model, model.make_point(vec({0.4, 1.3})), 20.0);
        CHECK(s == doctest::Approx(perturbed_entropy(0.4, 1.3, 0.0, 20.0)).epsilon(1e-11));
    }
    SUBCASE("moment-preserving quartic perturbation lowers the entropy") {
        const double s0 = perturbed_entropy(0.0, 1.0, 0.0, 20.0);
        const double s_eps = perturbed_entropy(0.0, 1.0, 1e-2, 20.0);
        CHECK(s_eps < s0);
        CHECK(s0 - s_eps > 1e-4); // leading order eps^2/2 * E[He4^2] = 12 eps^2
        CHECK(s0 - s_eps < 5e-3);
    }
    SUBCASE("narrow prior is rejected") {
        CHECK_THROWS_AS(relative_entropy(model, model.make_point(vec({0.0, 1.0})), 8.0), PriorTooNarrow);
    }
}

TEST_CASE("model ids and labels") {
    const GaussianProductModel g(2);
    CHECK(g.n_particles() == 2);
    CHECK(g.dimension() == 12);
    CHECK(g.label(0) == CoordLabel::mean);
    CHECK(g.label(1) == CoordLabel::stddev);
    const JacobiIHOModel iho(vec({1.0, 2.0}));
    CHECK(iho.label(0) == CoordLabel::lagrangian);
    CHECK(iho.conformal_factor(vec({0.0, 0.0})) == 1.0);
    CHECK(iho.phi(vec({1.0, 1.0})) == doctest::Approx(-2.5));
}
