#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phproc/processes.hpp"

namespace phproc {

/// Statistics of an observed path that the moment estimators consume.
struct SummaryStats {
    double mean = 0.0;
    double p_up = 0.0;    // fraction of pairs with value[i-1] < value[i]
    double p_down = 0.0;  // fraction of pairs with value[i-1] > value[i]
    double p_tie = 0.0;
    double sample_min = 0.0;
    std::size_t pairs = 0;
};

/// Requires at least two values (UsageError otherwise).
SummaryStats summarize(std::span<const double> values);
SummaryStats summarize(const Path& path);

enum class Branch { AlphaGtBeta, AlphaLeBeta, NotApplicable };

std::string to_string(Branch branch);

/// Method-of-moments fit. `model` holds the raw estimates and is not validated;
/// `valid` says whether they satisfy the kind's parameter constraints
/// (including the ordering of the Kundu branch that produced them).
struct Estimate {
    Model model;
    Branch branch = Branch::NotApplicable;
    bool valid = false;
    std::vector<std::string> diagnostics;
};

/// The two moments and the scale estimate that the estimators invert.
struct MomentInputs {
    double mean = 0.0;
    double crossing = 0.0;  // P(Z_n < Z_{n-1}); see crossing_prob
    std::optional<double> sample_min;
};

/// Inverts mean and crossing probability for CPFD and Pareto kinds.
/// Throws DegenerateStatistics when crossing is 0 or 1 (or 1/2 for Kundu kinds),
/// InfeasibleStatistics when the mean is outside the kind's range, and
/// UsageError for PFD kinds, which have no estimator.
Estimate estimate(Kind kind, const MomentInputs& inputs);
/// Same, with crossing = stats.p_down and sample_min = stats.sample_min.
Estimate estimate(Kind kind, const SummaryStats& stats);

}  // namespace phproc
