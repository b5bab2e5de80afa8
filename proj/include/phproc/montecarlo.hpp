#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phproc/distributions.hpp"
#include "phproc/processes.hpp"

namespace phproc {

// ---------------------------------------------------------------------------
// Statistical helpers
// ---------------------------------------------------------------------------

/// Full-sample value of `statistic` and its standard error from non-overlapping
/// batch means. Batches keep the serial dependence of a path inside each batch.
struct BatchEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

BatchEstimate batch_estimate(std::span<const double> series, std::size_t batches,
                             const std::function<double(std::span<const double>)>& statistic);

/// Mean of a series with its batch-means standard error.
BatchEstimate batch_mean(std::span<const double> series, std::size_t batches);

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t sample_size = 0;
};

/// One-sample Kolmogorov-Smirnov test against a continuous cdf. Uses Stephens'
/// small-sample correction of the asymptotic distribution.
KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);
KsResult ks_test(std::vector<double> sample, const Marginal& dist);

/// Lag at which consecutive path values are treated as independent by the
/// marginal KS check: 2 for Kundu kinds (exact), the coupling horizon
/// ceil(ln(1e-6) / ln(1 - delta/alpha)) for A-M kinds.
std::size_t independence_stride(const Model& model);

// ---------------------------------------------------------------------------
// Closed form vs empirical
// ---------------------------------------------------------------------------

struct ValidationRow {
    std::string name;
    double closed_form = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    double z = 0.0;
    bool pass = false;
};

/// Builds a row; pass is |z| <= 3 (with a zero standard error, pass requires
/// exact agreement).
ValidationRow make_row(std::string name, double closed_form, double empirical, double std_error);

struct MarginalKs {
    KsResult thinned;              // tested sample
    std::size_t stride = 1;
    double full_path_statistic = 0.0;  // diagnostic, not tested
    bool pass = false;             // thinned p-value >= 0.01
};

struct ValidationReport {
    Model model;
    std::size_t path_length = 0;
    std::uint64_t seed = 0;
    std::size_t batches = 0;
    std::vector<ValidationRow> rows;
    MarginalKs ks;
    std::vector<std::string> skipped;

    bool all_pass() const;
};

inline constexpr std::size_t kDefaultBatches = 100;

/// Compares mean, variance, lag-1 product moment and correlation, move
/// fractions and the marginal law of one path against the closed forms.
/// Quantities without a closed form for the parameters are listed in skipped.
ValidationReport empirical_check(const Model& model, std::size_t path_length, std::uint64_t seed,
                                 std::size_t batches = kDefaultBatches);

struct JointCdfCell {
    double earlier = 0.0;
    double later = 0.0;
    double probability = 0.0;
    double std_error = 0.0;
};

inline constexpr std::size_t kMinJointPairs = 100000;

/// Empirical P(Z_{n-1} <= earlier, Z_n <= later) over the lag-1 pairs of a path.
/// Needs at least kMinJointPairs pairs and a non-empty grid (UsageError).
std::vector<JointCdfCell> empirical_joint_cdf(std::span<const double> path,
                                              std::span<const std::pair<double, double>> grid,
                                              std::size_t batches = kDefaultBatches);
std::vector<JointCdfCell> empirical_joint_cdf(const ProcessSpec& spec,
                                              std::span<const std::pair<double, double>> grid,
                                              std::size_t batches = kDefaultBatches);

// ---------------------------------------------------------------------------
// Sampling-distribution study of the moment estimators
// ---------------------------------------------------------------------------

struct StudyConfig {
    Model model;                     // true parameters
    std::vector<std::size_t> sizes;  // path sizes m, ascending
    std::size_t replicates = 2000;
    std::uint64_t master_seed = 0;
    unsigned threads = 0;            // 0: hardware concurrency
};

void validate(const StudyConfig& config);

struct StudyCell {
    std::size_t size = 0;
    std::string parameter;
    double truth = 0.0;
    std::size_t valid = 0;     // replicates entering the aggregates
    std::size_t failures = 0;  // degenerate statistics or invalid estimates
    double mean = 0.0;
    double sd = 0.0;
    double q025 = 0.0;
    double q50 = 0.0;
    double q975 = 0.0;
};

struct StudyReport {
    StudyConfig config;
    std::vector<StudyCell> cells;  // ordered by size, then parameter
};

/// Parameter names reported for a kind: alpha, beta|delta and sigma for Pareto.
std::vector<std::string> parameter_names(Kind kind);
std::vector<double> parameter_values(const Model& model);

/// Seed of replicate k at the size with index size_index.
std::uint64_t study_path_seed(std::uint64_t master, std::size_t size_index, std::size_t k);

/// Estimates parameters on `replicates` independent paths per size. The result
/// depends only on the config, not on the number of threads.
StudyReport simulation_study(const StudyConfig& config);

/// Type-7 (linear interpolation) quantile of a sorted sample.
double quantile_sorted(std::span<const double> sorted, double p);

}  // namespace phproc
