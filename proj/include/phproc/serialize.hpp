#pragma once

#include <string>

#include "phproc/analytics.hpp"
#include "phproc/fitting.hpp"
#include "phproc/inference.hpp"
#include "phproc/montecarlo.hpp"
#include "phproc/processes.hpp"

namespace phproc {

enum class Format { Csv, Json };

/// "csv" or "json"; UsageError otherwise.
Format parse_format(const std::string& text);

// Every number is written with format_number (12 significant digits).

std::string path_csv(const Path& path);  // index,value
std::string path_json(const Path& path);

std::string moments_csv(const Model& model, const MomentReport& report);  // quantity,value
std::string moments_json(const Model& model, const MomentReport& report);

std::string estimate_csv(const Estimate& est);  // parameter,estimate
std::string estimate_json(const Estimate& est, const SummaryStats& stats);

std::string fit_csv(const FitReport& report);  // parameter,estimate plus mse
std::string fit_json(const FitReport& report);

std::string study_csv(const StudyReport& report);
std::string study_json(const StudyReport& report);

std::string validation_csv(const ValidationReport& report);
std::string validation_json(const ValidationReport& report);

/// Writes to a temporary file beside `path` and renames it into place, so the
/// target is either untouched or complete. Throws InputError on failure.
void write_atomic(const std::string& path, const std::string& content);

/// Resolves a relative output path against $PHPROC_OUTPUT_DIR when it is set.
std::string resolve_output_path(const std::string& path);

}  // namespace phproc
