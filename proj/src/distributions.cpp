#include "phproc/distributions.hpp"

#include <cmath>
#include <string>

#include "phproc/error.hpp"

namespace phproc {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(name) + " must be a positive finite number");
    }
}

void require_open_unit(double p, const char* name) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError(std::string(name) + " must lie strictly inside (0, 1)");
    }
}

}  // namespace

std::string to_string(Family family) {
    switch (family) {
        case Family::PFD: return "PFD";
        case Family::CPFD: return "CPFD";
        case Family::ParetoI: return "ParetoI";
    }
    return "unknown";
}

Pfd::Pfd(double alpha) : alpha_(alpha) { require_positive(alpha, "alpha"); }

double Pfd::cdf(double x) const noexcept {
    if (!(x > 0.0)) return 0.0;
    if (x >= 1.0) return 1.0;
    return std::pow(x, alpha_);
}

double Pfd::survival(double x) const noexcept { return 1.0 - cdf(x); }

double Pfd::quantile(double p) const {
    require_open_unit(p, "probability");
    return std::pow(p, 1.0 / alpha_);
}

double Pfd::sample(double u) const {
    require_open_unit(u, "uniform variate");
    return std::pow(u, 1.0 / alpha_);
}

Cpfd::Cpfd(double alpha) : alpha_(alpha) { require_positive(alpha, "alpha"); }

double Cpfd::cdf(double x) const noexcept {
    if (!(x > 0.0)) return 0.0;
    if (x >= 1.0) return 1.0;
    return -std::expm1(alpha_ * std::log1p(-x));
}

double Cpfd::survival(double x) const noexcept { return 1.0 - cdf(x); }

double Cpfd::quantile(double p) const {
    require_open_unit(p, "probability");
    return -std::expm1(std::log1p(-p) / alpha_);
}

double Cpfd::sample(double u) const {
    require_open_unit(u, "uniform variate");
    return -std::expm1(std::log(u) / alpha_);
}

ParetoI::ParetoI(double sigma, double alpha) : sigma_(sigma), alpha_(alpha) {
    require_positive(sigma, "sigma");
    require_positive(alpha, "alpha");
}

double ParetoI::cdf(double x) const noexcept {
    if (!(x > sigma_)) return 0.0;
    if (std::isinf(x)) return 1.0;
    return -std::expm1(-alpha_ * std::log(x / sigma_));
}

double ParetoI::survival(double x) const noexcept { return 1.0 - cdf(x); }

double ParetoI::quantile(double p) const {
    require_open_unit(p, "probability");
    return sigma_ * std::exp(-std::log1p(-p) / alpha_);
}

double ParetoI::sample(double u) const {
    require_open_unit(u, "uniform variate");
    return sigma_ * std::pow(u, -1.0 / alpha_);
}

Family family_of(const Marginal& dist) noexcept {
    return static_cast<Family>(dist.index());
}

double dist_cdf(const Marginal& dist, double x) noexcept {
    return std::visit([x](const auto& d) { return d.cdf(x); }, dist);
}

double dist_survival(const Marginal& dist, double x) noexcept {
    return std::visit([x](const auto& d) { return d.survival(x); }, dist);
}

double dist_quantile(const Marginal& dist, double p) {
    return std::visit([p](const auto& d) { return d.quantile(p); }, dist);
}

double dist_sample(const Marginal& dist, double u) {
    return std::visit([u](const auto& d) { return d.sample(u); }, dist);
}

}  // namespace phproc
