#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phproc/distributions.hpp"

namespace phproc {

enum class Kind { KunduPFD, AmPFD, KunduCPFD, AmCPFD, KunduPareto, AmPareto };

/// CLI spelling, e.g. "kundu-cpfd".
std::string to_string(Kind kind);
/// Accepts the CLI spelling; throws UsageError otherwise.
Kind parse_kind(std::string_view name);

bool is_kundu(Kind kind) noexcept;
bool is_pareto(Kind kind) noexcept;
Family family_of(Kind kind) noexcept;

/// Moving-extremum construction over overlapping pairs of uniforms.
/// alpha acts on the earlier uniform of each pair, beta on the later one.
struct KunduParams {
    double alpha = 1.0;
    double beta = 1.0;
};

/// Recursive construction; requires 0 < delta < alpha.
struct AmParams {
    double alpha = 1.0;
    double delta = 0.5;
};

using ShapeParams = std::variant<KunduParams, AmParams>;

/// A process kind together with its parameters (everything but length and seed).
struct Model {
    Kind kind = Kind::KunduCPFD;
    ShapeParams shape = KunduParams{};
    std::optional<double> sigma;  // present iff the kind is a Pareto kind

    static Model kundu(Kind kind, double alpha, double beta,
                       std::optional<double> sigma = std::nullopt);
    static Model am(Kind kind, double alpha, double delta,
                    std::optional<double> sigma = std::nullopt);

    /// Shape of the PFD building block: alpha + beta (Kundu) or alpha (A-M).
    double marginal_shape() const;
    double scale() const { return sigma.value_or(1.0); }
};

/// Throws DomainError unless kind, shape and sigma are consistent and valid.
void validate(const Model& model);

/// Stationary marginal law: PFD/CPFD(alpha+beta) or Pareto(sigma, alpha+beta)
/// for Kundu kinds, the same with alpha for A-M kinds.
Marginal stationary_marginal(const Model& model);

struct ProcessSpec {
    Model model;
    std::size_t length = 1;  // path covers indices 0..length
    std::uint64_t seed = 0;
};

void validate(const ProcessSpec& spec);

struct Path {
    std::vector<double> values;          // indices 0..m
    std::optional<ProcessSpec> spec;     // empty for ingested data
    std::string source = "simulated";
    std::string transform;               // e.g. "ph:pareto(1)"; empty if untransformed

    std::size_t size() const noexcept { return values.size(); }
};

/// One step of a recursion. Kundu kinds consume (u_earlier, u_later) and ignore
/// prev; A-M kinds consume one uniform and need the previous value.
double step(const Model& model, std::optional<double> prev, std::span<const double> uniforms);

/// Path over indices 0..spec.length. Kundu kinds draw length + 2 uniforms so
/// that index 0 is already stationary; A-M kinds start from the stationary
/// marginal. Identical specs give bitwise-identical paths.
Path generate_path(const ProcessSpec& spec);

/// log of the PFD building block (log X_n or log Y_n) driving generate_path.
/// Every kind sharing a seed and shape maps from the same sequence.
std::vector<double> generate_log_pfd_path(const ProcessSpec& spec);

/// Baseline distribution F0 for proportional (reversed) hazard transforms.
struct Baseline {
    std::function<double(double)> survival;  // 1 - F0
    std::function<double(double)> quantile;  // F0^-1 on (0, 1)
    double lower = 0.0;                      // support (lower, upper)
    double upper = 0.0;
    std::string description;
};

Baseline pareto_baseline(double sigma);
Baseline exponential_baseline(double rate);
/// Parses "pareto:<sigma>" or "exponential:<rate>".
Baseline parse_baseline(std::string_view text);

enum class HazardTransform { PH, PRH };

/// Applies F0^-1 pointwise. For PH, a CPFD(gamma) input yields survival
/// [1 - F0]^gamma; for PRH, a PFD(gamma) input yields cdf F0^gamma.
Path transform_marginal(const Path& path, const Baseline& baseline, HazardTransform direction);

}  // namespace phproc
