#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "phproc/inference.hpp"
#include "phproc/processes.hpp"

namespace phproc {

struct Series {
    std::vector<double> values;
    std::string source;
};

/// Reads one numeric column of a CSV file. `column` is a header name or a
/// 0-based index; without it the single column, a column named "value", or the
/// last column is used. A first row that is not numeric in the chosen column is
/// taken as the header. Throws InputError on unreadable files, missing columns,
/// non-numeric rows (listing their line numbers) and fewer than 3 values.
Series load_series(const std::string& path, const std::optional<std::string>& column = {});

/// Checks length >= 3 and finite values (InputError otherwise).
void validate(const Series& series);

/// Complementary empirical cdf with plotting positions: the value with ascending
/// (average) rank r maps to 1 - r / (m + 1). Order is preserved.
Series ecdf_transform(const Series& series);

enum class FitTransform { Auto, ComplementaryEcdf, None };

/// "auto", "ecdf" or "none"; UsageError otherwise.
FitTransform parse_fit_transform(const std::string& text);

struct FitReport {
    Kind kind = Kind::KunduCPFD;
    Estimate estimate;
    std::optional<double> mse;   // absent when the estimate is invalid
    std::string transform;       // "complementary-ecdf" or "none"
    SummaryStats stats;          // of the fitted-space values
    std::size_t size = 0;
};

/// (1/m) sum (F(x_(i)) - i/(m+1))^2 over the sorted values.
double cdf_mse(std::vector<double> values, const Marginal& fitted);

/// Summarize + estimate on the fitted-space series. Auto applies the
/// complementary ecdf for CPFD kinds and leaves Pareto data raw.
FitReport fit(const Series& series, Kind kind, FitTransform transform = FitTransform::Auto);

}  // namespace phproc
