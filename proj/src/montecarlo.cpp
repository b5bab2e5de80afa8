#include "phproc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <thread>

#include "phproc/analytics.hpp"
#include "phproc/error.hpp"
#include "phproc/inference.hpp"
#include "phproc/rng.hpp"

namespace phproc {

// ---------------------------------------------------------------------------
// Statistical helpers
// ---------------------------------------------------------------------------

BatchEstimate batch_estimate(std::span<const double> series, std::size_t batches,
                             const std::function<double(std::span<const double>)>& statistic) {
    if (batches < 2) throw UsageError("batch standard errors need at least two batches");
    if (series.size() < 2 * batches) {
        throw UsageError("series is too short for " + std::to_string(batches) + " batches");
    }
    BatchEstimate out;
    out.value = statistic(series);
    const std::size_t width = series.size() / batches;
    std::vector<double> estimates(batches);
    for (std::size_t j = 0; j < batches; ++j) {
        estimates[j] = statistic(series.subspan(j * width, width));
    }
    const double mean =
        std::accumulate(estimates.begin(), estimates.end(), 0.0) / static_cast<double>(batches);
    double ss = 0.0;
    for (double e : estimates) ss += (e - mean) * (e - mean);
    const auto b = static_cast<double>(batches);
    out.std_error = std::sqrt(ss / (b - 1.0) / b);
    return out;
}

namespace {

double mean_of(std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance_of(std::span<const double> x) {
    const double m = mean_of(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size());
}

double lag1_product(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i - 1] * x[i];
    return s / static_cast<double>(x.size() - 1);
}

double lag1_correlation(std::span<const double> x) {
    const double m = mean_of(x);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        den += (x[i] - m) * (x[i] - m);
        if (i > 0) num += (x[i - 1] - m) * (x[i] - m);
    }
    return (num / static_cast<double>(x.size() - 1)) / (den / static_cast<double>(x.size()));
}

template <class Pred>
double move_fraction(std::span<const double> x, Pred pred) {
    std::size_t count = 0;
    for (std::size_t i = 1; i < x.size(); ++i) count += pred(x[i - 1], x[i]) ? 1 : 0;
    return static_cast<double>(count) / static_cast<double>(x.size() - 1);
}

}  // namespace

BatchEstimate batch_mean(std::span<const double> series, std::size_t batches) {
    return batch_estimate(series, batches, mean_of);
}

double kolmogorov_sf(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 1.18) {
        // Jacobi-transformed series converges fast for small lambda.
        const double pi2 = std::numbers::pi * std::numbers::pi;
        double sum = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double odd = 2.0 * k - 1.0;
            sum += std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
        }
        return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
    }
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw UsageError("KS test needs a non-empty sample");
    std::sort(sample.begin(), sample.end());
    const auto n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    const double root = std::sqrt(n);
    return {d, kolmogorov_sf((root + 0.12 + 0.11 / root) * d), sample.size()};
}

KsResult ks_test(std::vector<double> sample, const Marginal& dist) {
    return ks_test(std::move(sample), [&dist](double x) { return dist_cdf(dist, x); });
}

std::size_t independence_stride(const Model& model) {
    validate(model);
    if (is_kundu(model.kind)) return 2;
    const auto& a = std::get<AmParams>(model.shape);
    const double renewal = a.delta / a.alpha;
    return static_cast<std::size_t>(std::ceil(std::log(1e-6) / std::log1p(-renewal)));
}

// ---------------------------------------------------------------------------
// Closed form vs empirical
// ---------------------------------------------------------------------------

ValidationRow make_row(std::string name, double closed_form, double empirical, double std_error) {
    ValidationRow row{std::move(name), closed_form, empirical, std_error, 0.0, false};
    const double diff = empirical - closed_form;
    if (std_error > 0.0) {
        row.z = diff / std_error;
    } else {
        row.z = diff == 0.0 ? 0.0 : std::copysign(HUGE_VAL, diff);
    }
    row.pass = std::abs(row.z) <= 3.0;
    return row;
}

bool ValidationReport::all_pass() const {
    return ks.pass && std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

ValidationReport empirical_check(const Model& model, std::size_t path_length, std::uint64_t seed,
                                 std::size_t batches) {
    validate(model);
    if (path_length < 10000) throw UsageError("empirical checks need a path length of at least 10^4");
    const Path path = generate_path({model, path_length, seed});
    const std::span<const double> x(path.values);
    const MomentReport theory = theoretical_moments(model);

    ValidationReport report;
    report.model = model;
    report.path_length = path_length;
    report.seed = seed;
    report.batches = batches;

    const auto add = [&](const char* name, const std::optional<double>& closed,
                         const std::function<double(std::span<const double>)>& statistic) {
        if (!closed) {
            report.skipped.emplace_back(name);
            return;
        }
        const BatchEstimate e = batch_estimate(x, batches, statistic);
        report.rows.push_back(make_row(name, *closed, e.value, e.std_error));
    };
    add("mean", theory.mean, mean_of);
    add("variance", theory.variance, variance_of);
    add("lag1_product_moment", theory.cross_moment, lag1_product);
    add("lag1_correlation", theory.lag1_corr, lag1_correlation);
    add("down_fraction", theory.moves.down,
        [](auto s) { return move_fraction(s, [](double a, double b) { return b < a; }); });
    add("up_fraction", theory.moves.up,
        [](auto s) { return move_fraction(s, [](double a, double b) { return b > a; }); });
    add("tie_fraction", theory.moves.tie,
        [](auto s) { return move_fraction(s, [](double a, double b) { return b == a; }); });

    const Marginal marginal = stationary_marginal(model);
    report.ks.stride = independence_stride(model);
    std::vector<double> thinned;
    for (std::size_t i = 0; i < x.size(); i += report.ks.stride) thinned.push_back(x[i]);
    report.ks.thinned = ks_test(std::move(thinned), marginal);
    report.ks.full_path_statistic = ks_test(path.values, marginal).statistic;
    report.ks.pass = report.ks.thinned.p_value >= 0.01;
    return report;
}

std::vector<JointCdfCell> empirical_joint_cdf(std::span<const double> path,
                                              std::span<const std::pair<double, double>> grid,
                                              std::size_t batches) {
    if (grid.empty()) throw UsageError("joint cdf grid is empty");
    if (path.size() < kMinJointPairs + 1) {
        throw UsageError("empirical joint cdf needs at least " + std::to_string(kMinJointPairs) +
                         " lag-1 pairs");
    }
    const std::size_t pairs = path.size() - 1;
    std::vector<double> indicator(pairs);
    std::vector<JointCdfCell> out;
    out.reserve(grid.size());
    for (const auto& [a, b] : grid) {
        for (std::size_t i = 0; i < pairs; ++i) {
            indicator[i] = (path[i] <= a && path[i + 1] <= b) ? 1.0 : 0.0;
        }
        const BatchEstimate e = batch_mean(indicator, batches);
        out.push_back({a, b, e.value, e.std_error});
    }
    return out;
}

std::vector<JointCdfCell> empirical_joint_cdf(const ProcessSpec& spec,
                                              std::span<const std::pair<double, double>> grid,
                                              std::size_t batches) {
    const Path path = generate_path(spec);
    return empirical_joint_cdf(std::span<const double>(path.values), grid, batches);
}

// ---------------------------------------------------------------------------
// Sampling-distribution study
// ---------------------------------------------------------------------------

void validate(const StudyConfig& config) {
    validate(config.model);
    if (family_of(config.model.kind) == Family::PFD) {
        throw UsageError("estimator studies are defined for CPFD and Pareto kinds only");
    }
    if (config.sizes.empty()) throw UsageError("study needs at least one path size");
    for (std::size_t i = 0; i < config.sizes.size(); ++i) {
        if (config.sizes[i] < 2) throw UsageError("path sizes must be at least 2");
        if (i > 0 && config.sizes[i] <= config.sizes[i - 1]) {
            throw UsageError("path sizes must be strictly ascending");
        }
    }
    if (config.replicates < 2) throw UsageError("study needs at least two replicates");
}

std::vector<std::string> parameter_names(Kind kind) {
    std::vector<std::string> names{"alpha", is_kundu(kind) ? "beta" : "delta"};
    if (is_pareto(kind)) names.emplace_back("sigma");
    return names;
}

std::vector<double> parameter_values(const Model& model) {
    std::vector<double> values;
    if (const auto* k = std::get_if<KunduParams>(&model.shape)) {
        values = {k->alpha, k->beta};
    } else {
        const auto& a = std::get<AmParams>(model.shape);
        values = {a.alpha, a.delta};
    }
    if (is_pareto(model.kind)) values.push_back(model.sigma.value_or(0.0));
    return values;
}

std::uint64_t study_path_seed(std::uint64_t master, std::size_t size_index, std::size_t k) {
    return derive_seed(derive_seed(master, size_index), k);
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) return std::nan("");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

StudyReport simulation_study(const StudyConfig& config) {
    validate(config);
    const std::size_t n_sizes = config.sizes.size();
    const std::size_t total = n_sizes * config.replicates;
    // One pre-assigned slot per (size, replicate); empty means failure.
    std::vector<std::optional<std::vector<double>>> slots(total);

    const auto work = [&](std::size_t task) {
        const std::size_t size_index = task / config.replicates;
        const std::size_t k = task % config.replicates;
        const ProcessSpec spec{config.model, config.sizes[size_index],
                               study_path_seed(config.master_seed, size_index, k)};
        try {
            const Estimate est = estimate(config.model.kind, summarize(generate_path(spec)));
            if (est.valid) slots[task] = parameter_values(est.model);
        } catch (const DomainError&) {
            // counted as a failure below
        }
    };

    unsigned threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
    if (threads == 1) {
        for (std::size_t t = 0; t < total; ++t) work(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < total; t = next++) work(t);
            });
        }
    }

    StudyReport report;
    report.config = config;
    const auto names = parameter_names(config.model.kind);
    const auto truth = parameter_values(config.model);
    for (std::size_t i = 0; i < n_sizes; ++i) {
        for (std::size_t p = 0; p < names.size(); ++p) {
            std::vector<double> sample;
            for (std::size_t k = 0; k < config.replicates; ++k) {
                const auto& slot = slots[i * config.replicates + k];
                if (slot) sample.push_back((*slot)[p]);
            }
            StudyCell cell;
            cell.size = config.sizes[i];
            cell.parameter = names[p];
            cell.truth = truth[p];
            cell.valid = sample.size();
            cell.failures = config.replicates - sample.size();
            std::sort(sample.begin(), sample.end());
            if (!sample.empty()) {
                cell.mean = mean_of(sample);
                cell.sd = sample.size() > 1
                              ? std::sqrt(variance_of(sample) * static_cast<double>(sample.size()) /
                                          static_cast<double>(sample.size() - 1))
                              : std::nan("");
            } else {
                cell.mean = cell.sd = std::nan("");
            }
            cell.q025 = quantile_sorted(sample, 0.025);
            cell.q50 = quantile_sorted(sample, 0.5);
            cell.q975 = quantile_sorted(sample, 0.975);
            report.cells.push_back(cell);
        }
    }
    return report;
}

}  // namespace phproc
