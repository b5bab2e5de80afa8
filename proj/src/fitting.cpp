#include "phproc/fitting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "phproc/error.hpp"

namespace phproc {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\"");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::optional<double> parse_number(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const char* begin = text.data();
    if (*begin == '+') ++begin;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::optional<std::size_t> parse_index(const std::string& text) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

}  // namespace

Series load_series(const std::string& path, const std::optional<std::string>& column) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");

    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
    std::string line;
    for (std::size_t number = 1; std::getline(in, line); ++number) {
        if (trim(line).empty()) continue;
        rows.emplace_back(number, split_csv(line));
    }
    if (rows.empty()) throw InputError("'" + path + "' is empty");

    const auto& first = rows.front().second;
    const auto index = column ? parse_index(*column) : std::nullopt;
    std::size_t col = 0;
    bool header = false;
    if (column && !index) {
        const auto it = std::find(first.begin(), first.end(), *column);
        if (it == first.end()) throw InputError("column '" + *column + "' not found in '" + path + "'");
        col = static_cast<std::size_t>(it - first.begin());
        header = true;
    } else {
        if (index) {
            col = *index;
        } else {
            const auto it = std::find(first.begin(), first.end(), "value");
            col = it != first.end() ? static_cast<std::size_t>(it - first.begin()) : first.size() - 1;
        }
        if (col >= first.size()) {
            throw InputError("column " + std::to_string(col) + " not found in '" + path + "'");
        }
        header = !parse_number(first[col]).has_value();
    }

    Series series{{}, path};
    std::vector<std::size_t> bad;
    for (std::size_t r = header ? 1 : 0; r < rows.size(); ++r) {
        const auto& [number, fields] = rows[r];
        const auto value = col < fields.size() ? parse_number(fields[col]) : std::nullopt;
        if (value && std::isfinite(*value)) {
            series.values.push_back(*value);
        } else {
            bad.push_back(number);
        }
    }
    if (!bad.empty()) {
        std::ostringstream msg;
        msg << "non-numeric value in '" << path << "' on line";
        msg << (bad.size() > 1 ? "s " : " ");
        for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 10); ++i) {
            msg << (i ? ", " : "") << bad[i];
        }
        if (bad.size() > 10) msg << " and " << bad.size() - 10 << " more";
        throw InputError(msg.str());
    }
    validate(series);
    return series;
}

void validate(const Series& series) {
    if (series.values.size() < 3) {
        throw InputError("series needs at least 3 values, got " +
                         std::to_string(series.values.size()));
    }
    for (double v : series.values) {
        if (!std::isfinite(v)) throw InputError("series contains a non-finite value");
    }
}

Series ecdf_transform(const Series& series) {
    validate(series);
    const std::size_t m = series.values.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return series.values[a] < series.values[b]; });
    Series out{std::vector<double>(m), series.source};
    const double denom = static_cast<double>(m) + 1.0;
    for (std::size_t i = 0; i < m;) {
        std::size_t j = i;
        while (j + 1 < m && series.values[order[j + 1]] == series.values[order[i]]) ++j;
        // ranks i+1..j+1 share their average
        const double rank = (static_cast<double>(i + j) + 2.0) / 2.0;
        for (std::size_t k = i; k <= j; ++k) out.values[order[k]] = 1.0 - rank / denom;
        i = j + 1;
    }
    return out;
}

FitTransform parse_fit_transform(const std::string& text) {
    if (text == "auto") return FitTransform::Auto;
    if (text == "ecdf") return FitTransform::ComplementaryEcdf;
    if (text == "none") return FitTransform::None;
    throw UsageError("unknown fit transform '" + text + "' (expected auto, ecdf or none)");
}

double cdf_mse(std::vector<double> values, const Marginal& fitted) {
    if (values.empty()) throw UsageError("MSE needs at least one value");
    std::sort(values.begin(), values.end());
    const auto m = static_cast<double>(values.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double e = dist_cdf(fitted, values[i]) - static_cast<double>(i + 1) / (m + 1.0);
        sum += e * e;
    }
    return sum / m;
}

FitReport fit(const Series& series, Kind kind, FitTransform transform) {
    validate(series);
    if (family_of(kind) == Family::PFD) {
        throw UsageError("fitting is defined for CPFD and Pareto kinds only");
    }
    if (transform == FitTransform::Auto) {
        transform = family_of(kind) == Family::CPFD ? FitTransform::ComplementaryEcdf
                                                    : FitTransform::None;
    }
    FitReport report;
    report.kind = kind;
    report.size = series.values.size();
    const Series data =
        transform == FitTransform::ComplementaryEcdf ? ecdf_transform(series) : series;
    report.transform = transform == FitTransform::ComplementaryEcdf ? "complementary-ecdf" : "none";

    if (family_of(kind) == Family::CPFD) {
        for (double v : data.values) {
            if (!(v > 0.0 && v < 1.0)) {
                throw DomainError("CPFD fit needs values strictly inside (0, 1); apply the ecdf transform");
            }
        }
    }
    report.stats = summarize(data.values);
    try {
        report.estimate = estimate(kind, report.stats);
    } catch (const DegenerateStatistics& e) {
        throw DegenerateStatistics(std::string("fit of ") + to_string(kind) + ": " + e.what());
    } catch (const InfeasibleStatistics& e) {
        throw InfeasibleStatistics(std::string("fit of ") + to_string(kind) + ": " + e.what());
    }
    if (report.estimate.valid) {
        report.mse = cdf_mse(data.values, stationary_marginal(report.estimate.model));
    }
    return report;
}

}  // namespace phproc
