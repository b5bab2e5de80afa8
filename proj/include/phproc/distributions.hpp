#pragma once

#include <string>
#include <variant>

namespace phproc {

enum class Family { PFD, CPFD, ParetoI };

std::string to_string(Family family);

/// Power function distribution, F(x) = x^alpha on (0, 1). Beta(alpha, 1).
class Pfd {
public:
    explicit Pfd(double alpha);

    double alpha() const noexcept { return alpha_; }
    double cdf(double x) const noexcept;
    double survival(double x) const noexcept;
    double quantile(double p) const;
    double sample(double u) const;

private:
    double alpha_;
};

/// Complementary power function distribution, survival (1 - x)^alpha on (0, 1).
/// Beta(1, alpha).
class Cpfd {
public:
    explicit Cpfd(double alpha);

    double alpha() const noexcept { return alpha_; }
    double cdf(double x) const noexcept;
    double survival(double x) const noexcept;
    double quantile(double p) const;
    double sample(double u) const;

private:
    double alpha_;
};

/// Classical Pareto, survival (x / sigma)^-alpha on (sigma, inf).
class ParetoI {
public:
    ParetoI(double sigma, double alpha);

    double sigma() const noexcept { return sigma_; }
    double alpha() const noexcept { return alpha_; }
    double cdf(double x) const noexcept;
    double survival(double x) const noexcept;
    double quantile(double p) const;
    double sample(double u) const;

private:
    double sigma_;
    double alpha_;
};

using Marginal = std::variant<Pfd, Cpfd, ParetoI>;

Family family_of(const Marginal& dist) noexcept;

// Free-function surface over the three families. Out-of-support x clamps to a
// probability of 0 or 1; quantile and sample reject arguments outside (0, 1).
double dist_cdf(const Marginal& dist, double x) noexcept;
double dist_survival(const Marginal& dist, double x) noexcept;
double dist_quantile(const Marginal& dist, double p);
double dist_sample(const Marginal& dist, double u);

}  // namespace phproc
