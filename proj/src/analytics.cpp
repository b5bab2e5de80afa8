#include "phproc/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "phproc/error.hpp"

namespace phproc {

namespace {

// Width of the band around a removable singularity where the closed form is
// replaced by a Richardson-extrapolated symmetric average.
constexpr double kPoleBand = 1e-5;
constexpr double kPoleStep = 1e-3;
// A-M Pareto cross-moment is flagged (not extrapolated) this close to delta = 1.
constexpr double kAmSingularBand = 1e-8;

template <class F>
double smooth_near(F&& f, double x, double pole) {
    if (std::abs(x - pole) >= kPoleBand) return f(x);
    const auto average = [&](double h) { return 0.5 * (f(x + h) + f(x - h)); };
    return (4.0 * average(0.5 * kPoleStep) - average(kPoleStep)) / 3.0;
}

// Quadratic form shared by the Kundu region integrals.
double kundu_q(double a, double b, double r) { return a * (r + a) + b * (r + b) + a * b; }

double kundu_product_raw(double a, double b, double r) {
    const double q = kundu_q(a, b, r);
    const double bracket =
        a * b + r * (a * a + b * b) / (a + b + r) + r * r * a * b / q;
    return bracket / ((a + r) * (b + r));
}

CrossMomentBreakdown kundu_breakdown_raw(double a, double b, double r) {
    const double q = kundu_q(a, b, r);
    const double s = r + a + b;
    CrossMomentBreakdown out;
    out.a = b / (r + b) * (b / s - a * b / q);
    out.b = a * b / q;
    out.c = a * b / ((r + a) * (r + b)) * (r / s + a * b / q);
    out.d = a / (r + a) * (a / s - a * b / q);
    return out;
}

template <class F>
double regularised(F&& raw, double a, double b, double r) {
    if (r != -1.0) return raw(a, b);
    return smooth_near(
        [&](double aa) { return smooth_near([&](double bb) { return raw(aa, bb); }, b, 1.0); },
        a, 1.0);
}

bool exactly_equal(double a, double b) { return a == b; }

}  // namespace

double kundu_power_product(double alpha, double beta, double r) {
    return regularised([r](double a, double b) { return kundu_product_raw(a, b, r); }, alpha,
                       beta, r);
}

CrossMomentBreakdown kundu_power_breakdown(double alpha, double beta, double r) {
    const auto part = [&](double CrossMomentBreakdown::*field) {
        return regularised(
            [r, field](double a, double b) { return kundu_breakdown_raw(a, b, r).*field; },
            alpha, beta, r);
    };
    return {part(&CrossMomentBreakdown::a), part(&CrossMomentBreakdown::b),
            part(&CrossMomentBreakdown::c), part(&CrossMomentBreakdown::d)};
}

bool kundu_reciprocal_product_finite(double alpha, double beta) noexcept {
    if (alpha >= 1.0 && beta >= 1.0) return true;
    if (alpha < 1.0 && beta < 1.0) return alpha * alpha + beta * beta + alpha * beta > alpha + beta;
    return alpha + beta > 1.0;
}

double am_power_product(double alpha, double delta, double r) {
    return delta / (delta + r) * alpha / (alpha + r) +
           r / (delta + r) / (r / alpha + (delta + r) / (alpha - delta) + 1.0);
}

bool am_reciprocal_product_finite(double alpha, double delta) noexcept {
    return alpha > 1.0 && alpha * alpha - 2.0 * alpha + delta > 0.0;
}

MovementProbabilities movement_probabilities(const Model& model) {
    validate(model);
    // Probabilities for the PFD building block X first: up means X_n > X_{n-1}.
    MovementProbabilities pfd;
    if (const auto* k = std::get_if<KunduParams>(&model.shape)) {
        const double a = k->alpha;
        const double b = k->beta;
        if (exactly_equal(a, b)) {
            pfd = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
        } else if (a > b) {
            pfd.up = (a + b) / (2.0 * a + b);
            pfd.down = a / (2.0 * a + b);
        } else {
            pfd.up = b / (a + 2.0 * b);
            pfd.down = (a + b) / (a + 2.0 * b);
        }
    } else {
        const auto& p = std::get<AmParams>(model.shape);
        pfd.up = p.delta / (p.alpha + p.delta);
        pfd.down = p.alpha / (p.alpha + p.delta);
    }
    if (family_of(model.kind) == Family::PFD) return pfd;
    // CPFD and Pareto values are decreasing functions of X.
    return {pfd.up, pfd.down, pfd.tie};
}

double crossing_prob(const Model& model) { return movement_probabilities(model).down; }

MomentReport theoretical_moments(const Model& model) {
    validate(model);
    MomentReport report;
    report.moves = movement_probabilities(model);

    const double k = model.marginal_shape();
    const double sigma = model.scale();
    const Family family = family_of(model.kind);
    const auto* kundu = std::get_if<KunduParams>(&model.shape);
    const auto* am = std::get_if<AmParams>(&model.shape);

    if (family != Family::ParetoI) {
        const double var = k / ((k + 1.0) * (k + 1.0) * (k + 2.0));
        report.variance = var;
        const double product = kundu ? kundu_power_product(kundu->alpha, kundu->beta, 1.0)
                                     : am_power_product(am->alpha, am->delta, 1.0);
        if (kundu) report.breakdown = kundu_power_breakdown(kundu->alpha, kundu->beta, 1.0);
        if (family == Family::PFD) {
            report.mean = k / (k + 1.0);
            report.cross_moment = product;
        } else {
            report.mean = 1.0 / (k + 1.0);
            report.cross_moment = 1.0 - 2.0 * k / (k + 1.0) + product;
        }
    } else {
        if (k > 1.0) {
            report.mean = sigma * k / (k - 1.0);
        } else {
            report.notes.push_back("mean is infinite: marginal shape <= 1");
        }
        if (k > 2.0) {
            report.variance = sigma * sigma * k / ((k - 1.0) * (k - 1.0) * (k - 2.0));
        } else {
            report.notes.push_back("variance is infinite: marginal shape <= 2");
        }
        if (kundu) {
            if (kundu_reciprocal_product_finite(kundu->alpha, kundu->beta)) {
                report.cross_moment =
                    sigma * sigma * kundu_power_product(kundu->alpha, kundu->beta, -1.0);
                report.breakdown = kundu_power_breakdown(kundu->alpha, kundu->beta, -1.0);
            } else {
                report.notes.push_back("lag-1 cross-moment is infinite for these shapes");
            }
        } else if (!am_reciprocal_product_finite(am->alpha, am->delta)) {
            report.notes.push_back("lag-1 cross-moment is infinite: needs alpha > 1 and "
                                   "alpha^2 - 2 alpha + delta > 0");
        } else if (std::abs(am->delta - 1.0) < kAmSingularBand) {
            report.notes.push_back("lag-1 cross-moment closed form is singular at delta = 1");
        } else {
            report.cross_moment = sigma * sigma * am_power_product(am->alpha, am->delta, -1.0);
        }
    }

    if (report.mean && report.variance && report.cross_moment) {
        const double corr = (*report.cross_moment - *report.mean * *report.mean) / *report.variance;
        report.lag1_corr = std::clamp(corr, -1.0, 1.0);
    }
    return report;
}

namespace {

// Joint cdf of (X_{n-1}, X_n) of the PFD building block on [0, 1]^2.
double pfd_joint(const Model& model, double x0, double x1) {
    x0 = std::clamp(x0, 0.0, 1.0);
    x1 = std::clamp(x1, 0.0, 1.0);
    if (x0 == 0.0 || x1 == 0.0) return 0.0;
    if (const auto* k = std::get_if<KunduParams>(&model.shape)) {
        // X_{n-1} = max(E^{1/a}, S^{1/b}), X_n = max(S^{1/a}, L^{1/b}).
        return std::pow(x0, k->alpha) * std::pow(x1, k->beta) *
               std::min(std::pow(x0, k->beta), std::pow(x1, k->alpha));
    }
    const auto& a = std::get<AmParams>(model.shape);
    // Y_1 = max(Y_0^{alpha/(alpha-delta)}, U^{1/delta}).
    return std::pow(x1, a.delta) *
           std::min(std::pow(x0, a.alpha), std::pow(x1, a.alpha - a.delta));
}

}  // namespace

double joint_cdf(const Model& model, double earlier, double later) {
    const Marginal marginal = stationary_marginal(model);
    const double k = model.marginal_shape();
    const auto pfd_cdf = [k](double x) {
        x = std::clamp(x, 0.0, 1.0);
        return std::pow(x, k);
    };

    switch (family_of(model.kind)) {
        case Family::PFD:
            if (earlier >= 1.0) return dist_cdf(marginal, later);
            if (later >= 1.0) return dist_cdf(marginal, earlier);
            return pfd_joint(model, earlier, later);
        case Family::CPFD: {
            if (earlier <= 0.0 || later <= 0.0) return 0.0;
            if (earlier >= 1.0) return dist_cdf(marginal, later);
            if (later >= 1.0) return dist_cdf(marginal, earlier);
            const double x0 = 1.0 - earlier;
            const double x1 = 1.0 - later;
            return std::clamp(1.0 - pfd_cdf(x0) - pfd_cdf(x1) + pfd_joint(model, x0, x1), 0.0, 1.0);
        }
        case Family::ParetoI: {
            const double sigma = *model.sigma;
            if (earlier <= sigma || later <= sigma) return 0.0;
            if (std::isinf(earlier)) return dist_cdf(marginal, later);
            if (std::isinf(later)) return dist_cdf(marginal, earlier);
            const double x0 = sigma / earlier;
            const double x1 = sigma / later;
            return std::clamp(1.0 - pfd_cdf(x0) - pfd_cdf(x1) + pfd_joint(model, x0, x1), 0.0, 1.0);
        }
    }
    return 0.0;
}

}  // namespace phproc
