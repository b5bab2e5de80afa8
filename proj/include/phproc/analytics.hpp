#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phproc/processes.hpp"

namespace phproc {

/// Four-region split of E[X_{n-1}^r X_n^r] for a Kundu PFD pair
/// X_{n-1} = max(E^{1/alpha}, S^{1/beta}), X_n = max(S^{1/alpha}, L^{1/beta}),
/// keyed by which uniform attains each maximum:
///   a: X_{n-1} from S, X_n from L      b: both from S
///   c: X_{n-1} from E, X_n from L      d: X_{n-1} from E, X_n from S
/// For CPFD kinds the lag-1 cross-moment is 1 - 2k/(k+1) + (a+b+c+d) with
/// r = 1; for Kundu Pareto it is sigma^2 (a+b+c+d) with r = -1.
struct CrossMomentBreakdown {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    double sum() const noexcept { return a + b + c + d; }
};

/// Probabilities of a strict decrease, strict increase and tie between
/// consecutive values.
struct MovementProbabilities {
    double down = 0.0;
    double up = 0.0;
    double tie = 0.0;
};

/// Closed-form marginal and lag-1 quantities. Empty optionals mark quantities
/// that do not exist for the parameters (reasons are listed in notes).
struct MomentReport {
    std::optional<double> mean;
    std::optional<double> variance;
    std::optional<double> cross_moment;  // E[Z_{n-1} Z_n]
    std::optional<double> lag1_corr;
    std::optional<CrossMomentBreakdown> breakdown;  // Kundu kinds only
    MovementProbabilities moves;
    std::vector<std::string> notes;
};

MomentReport theoretical_moments(const Model& model);

MovementProbabilities movement_probabilities(const Model& model);

/// P(Z_n < Z_{n-1}), the probability inverted by the moment estimators.
double crossing_prob(const Model& model);

/// P(Z_{n-1} <= earlier, Z_n <= later). Arguments outside the support clamp to
/// the boundary probability.
double joint_cdf(const Model& model, double earlier, double later);

// Building blocks, exposed for tests and diagnostics.

/// E[X_{n-1}^r X_n^r] for the Kundu PFD process with shapes (alpha, beta).
/// For r = -1 the removable singularities at alpha = 1 or beta = 1 are handled.
double kundu_power_product(double alpha, double beta, double r);
CrossMomentBreakdown kundu_power_breakdown(double alpha, double beta, double r);
/// Whether E[X_{n-1}^-1 X_n^-1] is finite for the Kundu PFD process.
bool kundu_reciprocal_product_finite(double alpha, double beta) noexcept;

/// E[Y_0^r Y_1^r] for the A-M PFD process with shapes (alpha, delta).
double am_power_product(double alpha, double delta, double r);
bool am_reciprocal_product_finite(double alpha, double delta) noexcept;

}  // namespace phproc
