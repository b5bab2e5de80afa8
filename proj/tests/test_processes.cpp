#include <doctest.h>

#include <array>
#include <cmath>
#include <numeric>

#include "phproc/error.hpp"
#include "phproc/montecarlo.hpp"
#include "phproc/processes.hpp"
#include "phproc/rng.hpp"

using namespace phproc;

namespace {

const std::vector<Model>& all_models() {
    static const std::vector<Model> models{
        Model::kundu(Kind::KunduPFD, 0.5, 0.1),
        Model::am(Kind::AmPFD, 1.0, 0.1),
        Model::kundu(Kind::KunduCPFD, 0.5, 0.1),
        Model::am(Kind::AmCPFD, 1.0, 0.1),
        Model::kundu(Kind::KunduPareto, 1.0, 2.0, 1.0),
        Model::am(Kind::AmPareto, 4.0, 2.0, 1.0),
    };
    return models;
}

double mean_of(std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

}  // namespace

TEST_CASE("kind names round trip") {
    for (Kind k : {Kind::KunduPFD, Kind::AmPFD, Kind::KunduCPFD, Kind::AmCPFD, Kind::KunduPareto,
                   Kind::AmPareto}) {
        CHECK(parse_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_kind("kundu"), UsageError);
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(Model::am(Kind::AmCPFD, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(Model::am(Kind::AmCPFD, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(Model::kundu(Kind::KunduCPFD, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(Model::kundu(Kind::KunduPareto, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(Model::kundu(Kind::KunduCPFD, 1.0, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(Model::kundu(Kind::AmCPFD, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS(validate(ProcessSpec{Model::kundu(Kind::KunduCPFD, 1.0, 1.0), 0, 1}),
                    DomainError);
}

TEST_CASE("single steps") {
    const std::array<double, 2> pair{0.25, 0.81};
    CHECK(step(Model::kundu(Kind::KunduCPFD, 1.0, 1.0), std::nullopt, pair) ==
          doctest::Approx(0.19).epsilon(1e-14));
    const std::array<double, 1> one{0.25};
    CHECK(step(Model::am(Kind::AmCPFD, 2.0, 1.0), 0.19, one) ==
          doctest::Approx(0.3439).epsilon(1e-14));
    CHECK(step(Model::am(Kind::AmPareto, 2.0, 1.0, 1.0), 2.0, one) ==
          doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("step rejects wrong arity and out-of-support inputs") {
    const std::array<double, 1> one{0.5};
    const std::array<double, 2> two{0.5, 0.5};
    CHECK_THROWS_AS(step(Model::kundu(Kind::KunduCPFD, 1.0, 1.0), std::nullopt, one), UsageError);
    CHECK_THROWS_AS(step(Model::am(Kind::AmCPFD, 2.0, 1.0), 0.5, two), UsageError);
    CHECK_THROWS_AS(step(Model::am(Kind::AmCPFD, 2.0, 1.0), std::nullopt, one), UsageError);
    CHECK_THROWS_AS(step(Model::am(Kind::AmPareto, 2.0, 1.0, 1.0), 0.5, one), DomainError);
    const std::array<double, 1> zero{0.0};
    CHECK_THROWS_AS(step(Model::am(Kind::AmCPFD, 2.0, 1.0), 0.5, zero), DomainError);
}

TEST_CASE("generated paths are deterministic and have length m + 1") {
    for (const auto& model : all_models()) {
        const ProcessSpec spec{model, 1000, 99};
        const Path a = generate_path(spec);
        const Path b = generate_path(spec);
        CHECK(a.values.size() == 1001);
        CHECK(a.values == b.values);
        CHECK(generate_path({model, 1000, 100}).values != a.values);
    }
}

TEST_CASE("generated path steps agree with step") {
    // Kundu paths read the stream as U_{-1}, U_0, U_1, ...; A-M paths start at
    // the stationary marginal and then use one uniform per step.
    const Model model = Model::am(Kind::AmPareto, 4.0, 2.0, 1.5);
    const Path path = generate_path({model, 50, 5});
    SeededStream rng(5);
    double prev = dist_sample(stationary_marginal(Model::am(Kind::AmPFD, 4.0, 2.0)), rng());
    CHECK(path.values[0] == doctest::Approx(1.5 / prev).epsilon(1e-13));
    prev = path.values[0];
    for (std::size_t n = 1; n < path.values.size(); ++n) {
        const std::array<double, 1> u{rng()};
        const double next = step(model, prev, u);
        CHECK(path.values[n] == doctest::Approx(next).epsilon(1e-12));
        prev = path.values[n];
    }

    const Model kundu = Model::kundu(Kind::KunduCPFD, 0.7, 1.3);
    const Path kp = generate_path({kundu, 50, 6});
    SeededStream krng(6);
    double earlier = krng();
    for (double v : kp.values) {
        const double later = krng();
        const std::array<double, 2> pair{earlier, later};
        CHECK(v == doctest::Approx(step(kundu, std::nullopt, pair)).epsilon(1e-13));
        earlier = later;
    }
}

TEST_CASE("supports are respected") {
    for (const auto& model : all_models()) {
        const Path path = generate_path({model, 100000, 3});
        const Family f = family_of(model.kind);
        for (double v : path.values) {
            if (f == Family::ParetoI) {
                REQUIRE(v > model.scale());
            } else {
                REQUIRE(v > 0.0);
                REQUIRE(v < 1.0);
            }
        }
    }
}

TEST_CASE("shared seeds give the complement and reciprocal identities") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const Path x = generate_path({Model::kundu(Kind::KunduPFD, 0.5, 0.1), 100000, seed});
        const Path v = generate_path({Model::kundu(Kind::KunduCPFD, 0.5, 0.1), 100000, seed});
        const Path y = generate_path({Model::am(Kind::AmPFD, 4.0, 2.0), 100000, seed});
        const Path t = generate_path({Model::am(Kind::AmPareto, 4.0, 2.0, 2.5), 100000, seed});
        const Path s = generate_path({Model::kundu(Kind::KunduPareto, 1.0, 2.0, 2.5), 100000, seed});
        const Path xs = generate_path({Model::kundu(Kind::KunduPFD, 1.0, 2.0), 100000, seed});
        double worst_v = 0.0;
        double worst_t = 0.0;
        double worst_s = 0.0;
        for (std::size_t i = 0; i < x.values.size(); ++i) {
            worst_v = std::max(worst_v, std::abs(v.values[i] - (1.0 - x.values[i])));
            worst_t = std::max(worst_t, std::abs(t.values[i] / (2.5 / y.values[i]) - 1.0));
            worst_s = std::max(worst_s, std::abs(s.values[i] / (2.5 / xs.values[i]) - 1.0));
        }
        CHECK(worst_v <= 4.0 * std::numeric_limits<double>::epsilon());
        CHECK(worst_t <= 4.0 * std::numeric_limits<double>::epsilon());
        CHECK(worst_s <= 4.0 * std::numeric_limits<double>::epsilon());
    }
}

TEST_CASE("both halves of a path have the same mean") {
    for (const auto& model : all_models()) {
        const Path path = generate_path({model, 100000, 17});
        const std::span<const double> all(path.values);
        const std::size_t half = all.size() / 2;
        const auto first = batch_mean(all.first(half), 50);
        const auto second = batch_mean(all.subspan(half), 50);
        const double se = std::hypot(first.std_error, second.std_error);
        CHECK(std::abs(first.value - second.value) <= 3.0 * se);
    }
}

TEST_CASE("Kundu paths are 1-dependent") {
    for (const auto& model : {Model::kundu(Kind::KunduCPFD, 0.5, 0.1),
                              Model::kundu(Kind::KunduCPFD, 2.0, 2.0),
                              Model::kundu(Kind::KunduPFD, 1.0, 3.0)}) {
        const Path path = generate_path({model, 100000, 23});
        const auto& x = path.values;
        const double m = mean_of(x);
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            den += (x[i] - m) * (x[i] - m);
            if (i >= 2) num += (x[i - 2] - m) * (x[i] - m);
        }
        CHECK(std::abs(num / den) <= 3.0 / std::sqrt(static_cast<double>(x.size())));
    }
}

TEST_CASE("sample mean of a long Kundu CPFD path") {
    const Path path = generate_path({Model::kundu(Kind::KunduCPFD, 0.5, 0.1), 1000000, 4});
    const auto e = batch_mean(path.values, 100);
    CHECK(std::abs(e.value - 0.625) <= 3.0 * e.std_error);
}

TEST_CASE("A-M Pareto marginal") {
    const Path path = generate_path({Model::am(Kind::AmPareto, 4.0, 2.0, 1.0), 100000, 8});
    const Model model = path.spec->model;
    std::vector<double> thinned;
    for (std::size_t i = 0; i < path.values.size(); i += independence_stride(model)) {
        thinned.push_back(path.values[i]);
    }
    CHECK(ks_test(thinned, ParetoI(1.0, 4.0)).p_value >= 0.01);
}

TEST_CASE("Pareto baseline transform") {
    const Baseline b = pareto_baseline(1.0);
    CHECK(b.quantile(0.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(b.quantile(1e-12) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(b.quantile(1e-12) > 1.0);

    const Path v = generate_path({Model::kundu(Kind::KunduCPFD, 1.0, 2.0), 100000, 9});
    const Path z = transform_marginal(v, b, HazardTransform::PH);
    CHECK(z.transform == "ph:pareto(1)");
    std::vector<double> thinned;
    for (std::size_t i = 0; i < z.values.size(); i += 2) thinned.push_back(z.values[i]);
    CHECK(ks_test(thinned, ParetoI(1.0, 3.0)).p_value >= 0.01);
}

TEST_CASE("reversed hazard transform of a PFD path") {
    const Baseline b = exponential_baseline(2.0);
    const Path x = generate_path({Model::kundu(Kind::KunduPFD, 1.5, 0.5), 100000, 10});
    const Path z = transform_marginal(x, b, HazardTransform::PRH);
    std::vector<double> thinned;
    for (std::size_t i = 0; i < z.values.size(); i += 2) thinned.push_back(z.values[i]);
    const auto cdf = [](double t) { return t <= 0.0 ? 0.0 : std::pow(-std::expm1(-2.0 * t), 2.0); };
    CHECK(ks_test(thinned, cdf).p_value >= 0.01);
}

TEST_CASE("baseline parsing") {
    CHECK(parse_baseline("pareto:2").quantile(0.5) == doctest::Approx(4.0));
    CHECK(parse_baseline("exponential:1").description == "exponential(1)");
    CHECK_THROWS_AS(parse_baseline("pareto"), UsageError);
    CHECK_THROWS_AS(parse_baseline("gamma:1"), UsageError);
    CHECK_THROWS_AS(parse_baseline("pareto:x"), UsageError);
    CHECK_THROWS_AS(parse_baseline("pareto:-1"), DomainError);
    Path bad;
    bad.values = {0.5, 1.0};
    CHECK_THROWS_AS(transform_marginal(bad, pareto_baseline(1.0), HazardTransform::PH), DomainError);
}
