#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>

#include "phproc/analytics.hpp"
#include "phproc/montecarlo.hpp"

using namespace phproc;

namespace {

using Fn = std::function<double(double)>;

double integrate(const Fn& f, double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    static boost::math::quadrature::tanh_sinh<double> ts(15);
    return ts.integrate(f, lo, hi, 1e-13);
}

// E[f(X_{n-1}) f(X_n)] for the Kundu PFD pair, integrating the three uniforms
// directly; the inner integrals are split where the max switches arms.
double kundu_product_quadrature(double a, double b, const Fn& f) {
    const auto outer = [&](double s) {
        const double cs0 = std::pow(s, 1.0 / b);  // later arm of X_{n-1}
        const double cs1 = std::pow(s, 1.0 / a);  // earlier arm of X_n
        const double e_cut = std::pow(cs0, a);    // E^{1/a} <= cs0
        const double l_cut = std::pow(cs1, b);    // L^{1/b} <= cs1
        const double g0 = (e_cut > 0.0 ? e_cut * f(cs0) : 0.0) +
                          integrate([&](double e) { return f(std::pow(e, 1.0 / a)); }, e_cut, 1.0);
        const double g1 = (l_cut > 0.0 ? l_cut * f(cs1) : 0.0) +
                          integrate([&](double l) { return f(std::pow(l, 1.0 / b)); }, l_cut, 1.0);
        return g0 * g1;
    };
    return integrate(outer, 0.0, 1.0);
}

// Region split of E[X_{n-1}^r X_n^r] by which uniform attains each maximum.
CrossMomentBreakdown kundu_regions_quadrature(double a, double b, double r) {
    const auto piece = [&](bool earlier_from_s, bool later_from_s) {
        const auto outer = [&](double s) {
            const double cs0 = std::pow(s, 1.0 / b);
            const double cs1 = std::pow(s, 1.0 / a);
            const double e_cut = std::pow(cs0, a);
            const double l_cut = std::pow(cs1, b);
            const double g0 =
                earlier_from_s
                    ? e_cut * std::pow(cs0, r)
                    : integrate([&](double e) { return std::pow(e, r / a); }, e_cut, 1.0);
            const double g1 =
                later_from_s
                    ? l_cut * std::pow(cs1, r)
                    : integrate([&](double l) { return std::pow(l, r / b); }, l_cut, 1.0);
            return g0 * g1;
        };
        return integrate(outer, 0.0, 1.0);
    };
    return {piece(true, false), piece(true, true), piece(false, false), piece(false, true)};
}

// E[f(Y_0) f(Y_1)] for the A-M PFD pair: Y_0 ~ PFD(alpha) and
// Y_1 = max(Y_0^{alpha/(alpha-delta)}, U^{1/delta}).
double am_product_quadrature(double alpha, double delta, const Fn& f) {
    const double c = alpha / (alpha - delta);
    // y = u^{1/alpha} absorbs the PFD density.
    const auto outer = [&](double u) {
        const double y = std::pow(u, 1.0 / alpha);
        const double carried = std::pow(y, c);
        const double cut = std::pow(carried, delta);
        const double inner =
            (cut > 0.0 ? cut * f(carried) : 0.0) +
            integrate([&](double u) { return f(std::pow(u, 1.0 / delta)); }, cut, 1.0);
        return f(y) * inner;
    };
    return integrate(outer, 0.0, 1.0);
}

bool close(double x, double y, double rel) { return std::abs(x - y) <= rel * std::abs(y); }

}  // namespace

TEST_CASE("moments at documented parameters") {
    const auto k = theoretical_moments(Model::kundu(Kind::KunduCPFD, 0.5, 0.1));
    CHECK(*k.mean == doctest::Approx(0.625).epsilon(1e-14));
    CHECK(*k.variance == doctest::Approx(0.6 / (1.6 * 1.6 * 2.6)).epsilon(1e-14));

    const auto a = theoretical_moments(Model::am(Kind::AmCPFD, 1.0, 0.5));
    CHECK(*a.mean == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(*a.variance == doctest::Approx(1.0 / 12.0).epsilon(1e-14));

    const auto p = theoretical_moments(Model::am(Kind::AmPareto, 4.0, 2.0, 1.0));
    CHECK(*p.mean == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(*p.variance == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("crossing probabilities") {
    CHECK(crossing_prob(Model::am(Kind::AmCPFD, 1.0, 0.5)) == doctest::Approx(1.0 / 3.0));
    CHECK(crossing_prob(Model::kundu(Kind::KunduCPFD, 2.0, 1.0)) == doctest::Approx(0.6));
    CHECK(crossing_prob(Model::am(Kind::AmPareto, 4.0, 2.0, 1.0)) == doctest::Approx(1.0 / 3.0));
    CHECK(crossing_prob(Model::kundu(Kind::KunduCPFD, 0.5, 0.1)) == doctest::Approx(6.0 / 11.0));
    CHECK(crossing_prob(Model::kundu(Kind::KunduPareto, 1.0, 2.0, 1.0)) == doctest::Approx(0.4));

    const auto tie = movement_probabilities(Model::kundu(Kind::KunduCPFD, 1.3, 1.3));
    CHECK(tie.down == doctest::Approx(1.0 / 3.0));
    CHECK(tie.up == doctest::Approx(1.0 / 3.0));
    CHECK(tie.tie == doctest::Approx(1.0 / 3.0));

    for (double a : {0.3, 1.0, 2.5}) {
        for (double b : {0.2, 1.0, 4.0}) {
            const auto m = movement_probabilities(Model::kundu(Kind::KunduPareto, a, b, 1.0));
            CHECK(m.down + m.up + m.tie == doctest::Approx(1.0).epsilon(1e-15));
            // The PFD process moves the other way.
            const auto x = movement_probabilities(Model::kundu(Kind::KunduPFD, a, b));
            CHECK(x.up == doctest::Approx(m.down));
        }
    }
}

TEST_CASE("crossing probability vanishes as delta goes to zero") {
    double prev = 1.0;
    for (double delta : {0.5, 1e-2, 1e-4, 1e-8}) {
        const double p = crossing_prob(Model::am(Kind::AmCPFD, 1.0, delta));
        CHECK(p < prev);
        prev = p;
    }
    CHECK(prev < 1e-7);
}

TEST_CASE("joint cdf values") {
    const Model k11 = Model::kundu(Kind::KunduCPFD, 1.0, 1.0);
    for (double v : {0.1, 0.3, 0.77}) {
        CHECK(joint_cdf(k11, 1.0, v) == doctest::Approx(1.0 - (1.0 - v) * (1.0 - v)));
    }
    CHECK(joint_cdf(k11, 0.5, 0.5) == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(joint_cdf(Model::am(Kind::AmCPFD, 2.0, 1.0), 1.0, 1.0) == 1.0);
}

TEST_CASE("joint cdf reduces to the marginal at the upper support edge") {
    const std::vector<std::pair<Model, double>> cases{
        {Model::kundu(Kind::KunduPFD, 0.5, 2.0), 1.0},
        {Model::am(Kind::AmPFD, 3.0, 1.0), 1.0},
        {Model::kundu(Kind::KunduCPFD, 0.5, 0.1), 1.0},
        {Model::am(Kind::AmCPFD, 1.0, 0.1), 1.0},
        {Model::kundu(Kind::KunduPareto, 1.0, 2.0, 1.0), HUGE_VAL},
        {Model::am(Kind::AmPareto, 4.0, 2.0, 1.0), HUGE_VAL},
    };
    for (const auto& [model, top] : cases) {
        const Marginal marginal = stationary_marginal(model);
        for (int i = 1; i < 20; ++i) {
            const double y = dist_quantile(marginal, i / 20.0);
            CHECK(joint_cdf(model, top, y) == dist_cdf(marginal, y));
            CHECK(joint_cdf(model, y, top) == dist_cdf(marginal, y));
        }
    }
}

TEST_CASE("joint cdf is 2-increasing") {
    const std::vector<Model> models{
        Model::kundu(Kind::KunduCPFD, 0.5, 0.1), Model::kundu(Kind::KunduCPFD, 0.3, 2.0),
        Model::am(Kind::AmCPFD, 1.0, 0.1),       Model::kundu(Kind::KunduPareto, 1.0, 2.0, 1.0),
        Model::am(Kind::AmPareto, 4.0, 2.0, 1.0), Model::kundu(Kind::KunduPFD, 2.0, 1.0),
        Model::am(Kind::AmPFD, 2.0, 1.5)};
    for (const auto& model : models) {
        const Marginal marginal = stationary_marginal(model);
        std::vector<double> grid;
        for (int i = 0; i <= 10; ++i) {
            grid.push_back(i == 0 ? dist_quantile(marginal, 1e-9)
                                  : dist_quantile(marginal, std::min(i / 10.0, 1.0 - 1e-9)));
        }
        for (std::size_t i = 1; i < grid.size(); ++i) {
            for (std::size_t j = 1; j < grid.size(); ++j) {
                const double mass = joint_cdf(model, grid[i], grid[j]) -
                                    joint_cdf(model, grid[i - 1], grid[j]) -
                                    joint_cdf(model, grid[i], grid[j - 1]) +
                                    joint_cdf(model, grid[i - 1], grid[j - 1]);
                CHECK(mass >= -1e-14);
                CHECK(joint_cdf(model, grid[i], grid[j]) >= joint_cdf(model, grid[i - 1], grid[j]));
            }
        }
    }
}

TEST_CASE("Kundu regions match quadrature") {
    for (double a : {1.5, 2.0, 4.0}) {
        for (double b : {1.2, 3.0}) {
            for (double r : {1.0, -1.0}) {
                const auto closed = kundu_power_breakdown(a, b, r);
                const auto quad = kundu_regions_quadrature(a, b, r);
                CHECK(close(closed.a, quad.a, 1e-6));
                CHECK(close(closed.b, quad.b, 1e-6));
                CHECK(close(closed.c, quad.c, 1e-6));
                CHECK(close(closed.d, quad.d, 1e-6));
            }
        }
    }
}

TEST_CASE("Kundu cross moments match quadrature of the defining integral") {
    for (double a : {0.5, 1.5, 3.0}) {
        for (double b : {0.1, 1.2, 2.0}) {
            const auto v = theoretical_moments(Model::kundu(Kind::KunduCPFD, a, b));
            const double quad = kundu_product_quadrature(a, b, [](double x) { return 1.0 - x; });
            CHECK(close(*v.cross_moment, quad, 1e-6));
        }
    }
    for (double a : {1.0, 1.5, 3.0}) {
        for (double b : {1.0, 2.0, 2.5}) {
            const auto s = theoretical_moments(Model::kundu(Kind::KunduPareto, a, b, 2.0));
            REQUIRE(s.cross_moment.has_value());
            const double quad = kundu_product_quadrature(a, b, [](double x) { return 2.0 / x; });
            CHECK(close(*s.cross_moment, quad, 1e-6));
        }
    }
    CHECK(*theoretical_moments(Model::kundu(Kind::KunduPareto, 1.0, 2.0, 1.0)).cross_moment ==
          doctest::Approx(2.375).epsilon(1e-9));
}

TEST_CASE("Kundu reciprocal product finiteness") {
    CHECK(kundu_reciprocal_product_finite(1.0, 1.0));
    CHECK(kundu_reciprocal_product_finite(0.8, 0.8));
    CHECK_FALSE(kundu_reciprocal_product_finite(0.6, 0.6));
    CHECK_FALSE(kundu_reciprocal_product_finite(0.5, 0.4));
    CHECK(kundu_reciprocal_product_finite(0.5, 0.9));
    CHECK_FALSE(kundu_reciprocal_product_finite(0.2, 0.2));
    const auto m = theoretical_moments(Model::kundu(Kind::KunduPareto, 0.2, 0.2, 1.0));
    CHECK_FALSE(m.cross_moment.has_value());
    CHECK_FALSE(m.mean.has_value());
}

TEST_CASE("A-M cross moments match quadrature") {
    for (auto [alpha, delta] : {std::pair{1.0, 0.1}, {2.0, 1.0}, {4.0, 2.0}, {0.7, 0.3}}) {
        const auto w = theoretical_moments(Model::am(Kind::AmCPFD, alpha, delta));
        const double quad = am_product_quadrature(alpha, delta, [](double y) { return 1.0 - y; });
        CHECK(close(*w.cross_moment, quad, 1e-6));
    }
    for (auto [alpha, delta] : {std::pair{4.0, 2.0}, {3.0, 0.5}, {2.5, 2.0}, {1.5, 1.2}}) {
        const auto t = theoretical_moments(Model::am(Kind::AmPareto, alpha, delta, 1.5));
        REQUIRE(t.cross_moment.has_value());
        const double quad = am_product_quadrature(alpha, delta, [](double y) { return 1.5 / y; });
        CHECK(close(*t.cross_moment, quad, 1e-6));
    }
}

TEST_CASE("A-M Pareto cross moment applicability") {
    CHECK_FALSE(am_reciprocal_product_finite(1.5, 0.2));  // 2.25 - 3 + 0.2 < 0
    CHECK(am_reciprocal_product_finite(1.5, 0.8));
    CHECK_FALSE(am_reciprocal_product_finite(0.9, 0.5));
    const auto singular = theoretical_moments(Model::am(Kind::AmPareto, 4.0, 1.0, 1.0));
    CHECK_FALSE(singular.cross_moment.has_value());
    CHECK_FALSE(singular.notes.empty());
}

TEST_CASE("A-M CPFD cross moments agree with simulation") {
    for (auto [alpha, delta] : {std::pair{1.0, 0.1}, {2.0, 1.0}, {4.0, 2.0}}) {
        const Model model = Model::am(Kind::AmCPFD, alpha, delta);
        const Path path = generate_path({model, 1000000, 77});
        const auto e = batch_estimate(path.values, 100, [](std::span<const double> x) {
            double s = 0.0;
            for (std::size_t i = 1; i < x.size(); ++i) s += x[i - 1] * x[i];
            return s / static_cast<double>(x.size() - 1);
        });
        CHECK(std::abs(e.value - *theoretical_moments(model).cross_moment) <= 3.0 * e.std_error);
    }
}

TEST_CASE("marginal moments match quadrature") {
    for (double k : {0.6, 2.0, 5.0}) {
        const auto m = theoretical_moments(Model::am(Kind::AmCPFD, k, k / 2));
        const double mean = integrate([&](double v) { return v * k * std::pow(1 - v, k - 1); }, 0, 1);
        const double second =
            integrate([&](double v) { return v * v * k * std::pow(1 - v, k - 1); }, 0, 1);
        CHECK(close(*m.mean, mean, 1e-9));
        CHECK(close(*m.variance, second - mean * mean, 1e-9));
    }
}

TEST_CASE("lag-1 correlation lies in [-1, 1]") {
    for (double a : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        for (double b : {0.1, 0.5, 1.0, 2.0, 5.0}) {
            for (const auto& model : {Model::kundu(Kind::KunduCPFD, a, b),
                                      Model::kundu(Kind::KunduPFD, a, b),
                                      Model::kundu(Kind::KunduPareto, a + 2, b + 1, 1.0)}) {
                const auto r = theoretical_moments(model);
                if (r.lag1_corr) {
                    CHECK(*r.lag1_corr >= -1.0);
                    CHECK(*r.lag1_corr <= 1.0);
                }
            }
            if (b < a) {
                const auto r = theoretical_moments(Model::am(Kind::AmCPFD, a, b));
                CHECK(std::abs(*r.lag1_corr) <= 1.0);
            }
        }
    }
}

TEST_CASE("A-M autocorrelation falls as delta grows") {
    double prev = 2.0;
    for (double delta = 0.05; delta < 1.0; delta += 0.05) {
        const double r = *theoretical_moments(Model::am(Kind::AmCPFD, 1.0, delta)).lag1_corr;
        CHECK(r < prev);
        prev = r;
    }
}
