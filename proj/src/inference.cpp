#include "phproc/inference.hpp"

#include <algorithm>
#include <cmath>

#include "phproc/error.hpp"
#include "phproc/format.hpp"

namespace phproc {

SummaryStats summarize(std::span<const double> values) {
    if (values.size() < 2) throw UsageError("summary statistics need at least two values");
    SummaryStats stats;
    double sum = 0.0;
    std::size_t up = 0;
    std::size_t down = 0;
    stats.sample_min = values[0];
    for (std::size_t i = 0; i < values.size(); ++i) {
        sum += values[i];
        stats.sample_min = std::min(stats.sample_min, values[i]);
        if (i == 0) continue;
        if (values[i - 1] < values[i]) ++up;
        if (values[i - 1] > values[i]) ++down;
    }
    stats.pairs = values.size() - 1;
    const auto pairs = static_cast<double>(stats.pairs);
    stats.mean = sum / static_cast<double>(values.size());
    stats.p_up = static_cast<double>(up) / pairs;
    stats.p_down = static_cast<double>(down) / pairs;
    stats.p_tie = static_cast<double>(stats.pairs - up - down) / pairs;
    return stats;
}

SummaryStats summarize(const Path& path) { return summarize(std::span<const double>(path.values)); }

std::string to_string(Branch branch) {
    switch (branch) {
        case Branch::AlphaGtBeta: return "alpha_gt_beta";
        case Branch::AlphaLeBeta: return "alpha_le_beta";
        case Branch::NotApplicable: return "n/a";
    }
    return "n/a";
}

namespace {

struct Candidate {
    double alpha;
    double beta;
    bool positive;
    bool ordered;
};

// Both Kundu branches written through the marginal shape k = alpha + beta, which
// the mean pins down: P = k / (2 alpha + beta) when alpha > beta, and
// P = beta / (2 beta + alpha) otherwise.
Candidate kundu_gt(double k, double p) {
    const double alpha = k * (1.0 - p) / p;
    const double beta = k * (2.0 * p - 1.0) / p;
    const bool positive = alpha > 0.0 && beta > 0.0;
    return {alpha, beta, positive, positive && alpha > beta};
}

Candidate kundu_le(double k, double p) {
    const double beta = k * p / (1.0 - p);
    const double alpha = k * (1.0 - 2.0 * p) / (1.0 - p);
    const bool positive = alpha > 0.0 && beta > 0.0;
    return {alpha, beta, positive, positive && alpha <= beta};
}

// Marginal shape implied by the sample mean.
double shape_from_mean(Kind kind, const MomentInputs& in) {
    if (family_of(kind) == Family::CPFD) {
        if (!(in.mean > 0.0 && in.mean < 1.0)) {
            throw InfeasibleStatistics("CPFD mean " + format_number(in.mean) +
                                       " is outside (0, 1)");
        }
        return (1.0 - in.mean) / in.mean;
    }
    if (!in.sample_min || !(*in.sample_min > 0.0)) {
        throw InfeasibleStatistics("Pareto estimation needs a positive sample minimum");
    }
    if (!(in.mean > *in.sample_min)) {
        throw InfeasibleStatistics("Pareto mean " + format_number(in.mean) +
                                   " does not exceed the sample minimum " +
                                   format_number(*in.sample_min));
    }
    return in.mean / (in.mean - *in.sample_min);
}

}  // namespace

Estimate estimate(Kind kind, const MomentInputs& in) {
    if (family_of(kind) == Family::PFD) {
        throw UsageError("no moment estimator is defined for " + to_string(kind));
    }
    const double p = in.crossing;
    if (!(p > 0.0 && p < 1.0)) {
        throw DegenerateStatistics("crossing fraction " + format_number(p) +
                                   " must lie strictly inside (0, 1)");
    }
    if (is_kundu(kind) && p == 0.5) {
        throw DegenerateStatistics("crossing fraction 1/2 makes both Kundu branches degenerate");
    }
    const double k = shape_from_mean(kind, in);

    Estimate est;
    est.model.kind = kind;
    if (is_pareto(kind)) est.model.sigma = *in.sample_min;

    if (!is_kundu(kind)) {
        const double alpha = k;
        const double delta = p * alpha / (1.0 - p);
        est.model.shape = AmParams{alpha, delta};
        est.valid = alpha > 0.0 && delta > 0.0 && delta < alpha;
        if (!est.valid) est.diagnostics.push_back("estimated delta is not below alpha");
        return est;
    }

    const Candidate gt = kundu_gt(k, p);
    const Candidate le = kundu_le(k, p);
    const Candidate* chosen = nullptr;
    if (gt.ordered && le.ordered) {
        chosen = std::abs(gt.alpha - gt.beta) >= std::abs(le.alpha - le.beta) ? &gt : &le;
        est.diagnostics.push_back("both branches are self-consistent; kept the one with larger |alpha - beta|");
    } else if (gt.ordered) {
        chosen = &gt;
    } else if (le.ordered) {
        chosen = &le;
    } else {
        chosen = le.positive && !gt.positive ? &le : &gt;
        est.diagnostics.push_back(
            "no branch satisfies its ordering constraint (self-consistent only for 1/3 <= P < 2/3)");
        if (!chosen->positive) est.diagnostics.push_back("estimates are not positive");
    }
    est.model.shape = KunduParams{chosen->alpha, chosen->beta};
    est.branch = chosen == &gt ? Branch::AlphaGtBeta : Branch::AlphaLeBeta;
    est.valid = chosen->ordered;
    return est;
}

Estimate estimate(Kind kind, const SummaryStats& stats) {
    return estimate(kind, MomentInputs{stats.mean, stats.p_down, stats.sample_min});
}

}  // namespace phproc
