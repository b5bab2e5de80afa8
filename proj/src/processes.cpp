#include "phproc/processes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "phproc/error.hpp"
#include "phproc/format.hpp"
#include "phproc/rng.hpp"

namespace phproc {

namespace {

constexpr struct {
    Kind kind;
    std::string_view name;
} kKindNames[] = {
    {Kind::KunduPFD, "kundu-pfd"},       {Kind::AmPFD, "am-pfd"},
    {Kind::KunduCPFD, "kundu-cpfd"},     {Kind::AmCPFD, "am-cpfd"},
    {Kind::KunduPareto, "kundu-pareto"}, {Kind::AmPareto, "am-pareto"},
};

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

// Value of a kind from log X of its PFD building block.
double from_log_pfd(Family family, double sigma, double log_x) {
    switch (family) {
        case Family::PFD: return std::exp(log_x);
        case Family::CPFD: return -std::expm1(log_x);
        case Family::ParetoI: return sigma * std::exp(-log_x);
    }
    return 0.0;
}

// Inverse of from_log_pfd; throws if value lies outside the open support.
double to_log_pfd(Family family, double sigma, double value) {
    switch (family) {
        case Family::PFD:
            if (!(value > 0.0 && value < 1.0)) break;
            return std::log(value);
        case Family::CPFD:
            if (!(value > 0.0 && value < 1.0)) break;
            return std::log1p(-value);
        case Family::ParetoI:
            if (!(value > sigma) || !std::isfinite(value)) break;
            return -std::log(value / sigma);
    }
    throw DomainError("previous value " + format_number(value) +
                      " lies outside the process support");
}

void require_uniform(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw DomainError("uniform variates must lie strictly inside (0, 1)");
    }
}

}  // namespace

std::string to_string(Kind kind) {
    for (const auto& entry : kKindNames) {
        if (entry.kind == kind) return std::string(entry.name);
    }
    return "unknown";
}

Kind parse_kind(std::string_view name) {
    for (const auto& entry : kKindNames) {
        if (entry.name == name) return entry.kind;
    }
    throw UsageError("unknown process kind '" + std::string(name) +
                     "' (expected kundu-pfd, am-pfd, kundu-cpfd, am-cpfd, kundu-pareto or am-pareto)");
}

bool is_kundu(Kind kind) noexcept {
    return kind == Kind::KunduPFD || kind == Kind::KunduCPFD || kind == Kind::KunduPareto;
}

bool is_pareto(Kind kind) noexcept {
    return kind == Kind::KunduPareto || kind == Kind::AmPareto;
}

Family family_of(Kind kind) noexcept {
    switch (kind) {
        case Kind::KunduPFD:
        case Kind::AmPFD: return Family::PFD;
        case Kind::KunduCPFD:
        case Kind::AmCPFD: return Family::CPFD;
        case Kind::KunduPareto:
        case Kind::AmPareto: return Family::ParetoI;
    }
    return Family::PFD;
}

Model Model::kundu(Kind kind, double alpha, double beta, std::optional<double> sigma) {
    Model model{kind, KunduParams{alpha, beta}, sigma};
    validate(model);
    return model;
}

Model Model::am(Kind kind, double alpha, double delta, std::optional<double> sigma) {
    Model model{kind, AmParams{alpha, delta}, sigma};
    validate(model);
    return model;
}

double Model::marginal_shape() const {
    if (const auto* k = std::get_if<KunduParams>(&shape)) return k->alpha + k->beta;
    return std::get<AmParams>(shape).alpha;
}

void validate(const Model& model) {
    if (is_kundu(model.kind)) {
        const auto* k = std::get_if<KunduParams>(&model.shape);
        if (k == nullptr) {
            throw DomainError(to_string(model.kind) + " takes (alpha, beta) parameters");
        }
        if (!positive_finite(k->alpha) || !positive_finite(k->beta)) {
            throw DomainError("alpha and beta must be positive");
        }
    } else {
        const auto* a = std::get_if<AmParams>(&model.shape);
        if (a == nullptr) {
            throw DomainError(to_string(model.kind) + " takes (alpha, delta) parameters");
        }
        if (!positive_finite(a->alpha) || !positive_finite(a->delta) || !(a->delta < a->alpha)) {
            throw DomainError("A-M parameters require 0 < delta < alpha");
        }
    }
    if (is_pareto(model.kind)) {
        if (!model.sigma || !positive_finite(*model.sigma)) {
            throw DomainError(to_string(model.kind) + " requires a positive sigma");
        }
    } else if (model.sigma) {
        throw DomainError("sigma only applies to Pareto kinds");
    }
}

Marginal stationary_marginal(const Model& model) {
    validate(model);
    const double shape = model.marginal_shape();
    switch (family_of(model.kind)) {
        case Family::PFD: return Pfd(shape);
        case Family::CPFD: return Cpfd(shape);
        case Family::ParetoI: return ParetoI(*model.sigma, shape);
    }
    return Pfd(shape);
}

void validate(const ProcessSpec& spec) {
    validate(spec.model);
    if (spec.length < 1) throw DomainError("path length must be at least 1");
}

double step(const Model& model, std::optional<double> prev, std::span<const double> uniforms) {
    validate(model);
    const Family family = family_of(model.kind);
    const double sigma = model.scale();
    if (const auto* k = std::get_if<KunduParams>(&model.shape)) {
        if (uniforms.size() != 2) {
            throw UsageError("Kundu kinds take exactly two uniforms (earlier, later)");
        }
        require_uniform(uniforms[0]);
        require_uniform(uniforms[1]);
        const double log_x =
            std::max(std::log(uniforms[0]) / k->alpha, std::log(uniforms[1]) / k->beta);
        return from_log_pfd(family, sigma, log_x);
    }
    const auto& a = std::get<AmParams>(model.shape);
    if (uniforms.size() != 1) throw UsageError("A-M kinds take exactly one uniform");
    if (!prev) throw UsageError("A-M kinds need the previous value");
    require_uniform(uniforms[0]);
    const double log_prev = to_log_pfd(family, sigma, *prev);
    const double log_x =
        std::max(log_prev * (a.alpha / (a.alpha - a.delta)), std::log(uniforms[0]) / a.delta);
    return from_log_pfd(family, sigma, log_x);
}

std::vector<double> generate_log_pfd_path(const ProcessSpec& spec) {
    validate(spec);
    SeededStream stream(spec.seed);
    std::vector<double> log_x(spec.length + 1);
    if (const auto* k = std::get_if<KunduParams>(&spec.model.shape)) {
        double log_earlier = std::log(stream());  // U_{-1}
        for (auto& out : log_x) {
            const double log_later = std::log(stream());
            out = std::max(log_earlier / k->alpha, log_later / k->beta);
            log_earlier = log_later;
        }
        return log_x;
    }
    const auto& a = std::get<AmParams>(spec.model.shape);
    const double power = a.alpha / (a.alpha - a.delta);
    log_x[0] = std::log(stream()) / a.alpha;
    for (std::size_t n = 1; n < log_x.size(); ++n) {
        log_x[n] = std::max(log_x[n - 1] * power, std::log(stream()) / a.delta);
    }
    return log_x;
}

Path generate_path(const ProcessSpec& spec) {
    std::vector<double> values = generate_log_pfd_path(spec);
    const Family family = family_of(spec.model.kind);
    const double sigma = spec.model.scale();
    for (auto& v : values) v = from_log_pfd(family, sigma, v);
    return Path{std::move(values), spec, "simulated", {}};
}

Baseline pareto_baseline(double sigma) {
    if (!positive_finite(sigma)) throw DomainError("Pareto baseline sigma must be positive");
    Baseline b;
    b.survival = [sigma](double x) { return x <= sigma ? 1.0 : sigma / x; };
    b.quantile = [sigma](double y) { return sigma / (1.0 - y); };
    b.lower = sigma;
    b.upper = HUGE_VAL;
    b.description = "pareto(" + format_number(sigma) + ")";
    return b;
}

Baseline exponential_baseline(double rate) {
    if (!positive_finite(rate)) throw DomainError("exponential baseline rate must be positive");
    Baseline b;
    b.survival = [rate](double x) { return x <= 0.0 ? 1.0 : std::exp(-rate * x); };
    b.quantile = [rate](double y) { return -std::log1p(-y) / rate; };
    b.lower = 0.0;
    b.upper = HUGE_VAL;
    b.description = "exponential(" + format_number(rate) + ")";
    return b;
}

Baseline parse_baseline(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw UsageError("baseline must look like pareto:<sigma> or exponential:<rate>");
    }
    const std::string_view name = text.substr(0, colon);
    const std::string_view number = text.substr(colon + 1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec != std::errc{} || end != number.data() + number.size()) {
        throw UsageError("baseline parameter '" + std::string(number) + "' is not a number");
    }
    if (name == "pareto") return pareto_baseline(value);
    if (name == "exponential") return exponential_baseline(value);
    throw UsageError("unknown baseline '" + std::string(name) + "'");
}

Path transform_marginal(const Path& path, const Baseline& baseline, HazardTransform direction) {
    Path out;
    out.values.reserve(path.values.size());
    for (std::size_t i = 0; i < path.values.size(); ++i) {
        const double v = path.values[i];
        if (!(v > 0.0 && v < 1.0)) {
            throw DomainError("transform input at index " + std::to_string(i) +
                              " is not strictly inside (0, 1)");
        }
        out.values.push_back(baseline.quantile(v));
    }
    out.spec = path.spec;
    out.source = path.source;
    out.transform =
        (direction == HazardTransform::PH ? "ph:" : "prh:") + baseline.description;
    return out;
}

}  // namespace phproc
