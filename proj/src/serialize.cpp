#include "phproc/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "phproc/error.hpp"
#include "phproc/format.hpp"

namespace phproc {

using nlohmann::ordered_json;

namespace {

// Numbers go through format_number so JSON and CSV agree digit for digit;
// non-finite values become null.
ordered_json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return ordered_json::parse(format_number(v));
}

ordered_json num(const std::optional<double>& v) { return v ? num(*v) : ordered_json(nullptr); }

std::string text(const std::optional<double>& v) { return v ? format_number(*v) : "n/a"; }

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json model_json(const Model& model) {
    ordered_json j;
    j["kind"] = to_string(model.kind);
    const auto names = parameter_names(model.kind);
    const auto values = parameter_values(model);
    ordered_json params = ordered_json::object();
    for (std::size_t i = 0; i < names.size(); ++i) params[names[i]] = num(values[i]);
    j["parameters"] = params;
    return j;
}

ordered_json stats_json(const SummaryStats& s) {
    return {{"mean", num(s.mean)},         {"p_up", num(s.p_up)},
            {"p_down", num(s.p_down)},     {"p_tie", num(s.p_tie)},
            {"sample_min", num(s.sample_min)}, {"pairs", s.pairs}};
}

std::string parameters_csv(const Model& model) {
    std::string out = "parameter,estimate\n";
    const auto names = parameter_names(model.kind);
    const auto values = parameter_values(model);
    for (std::size_t i = 0; i < names.size(); ++i) {
        out += names[i] + "," + format_number(values[i]) + "\n";
    }
    return out;
}

}  // namespace

Format parse_format(const std::string& t) {
    if (t == "csv") return Format::Csv;
    if (t == "json") return Format::Json;
    throw UsageError("unknown format '" + t + "' (expected csv or json)");
}

std::string path_csv(const Path& path) {
    std::string out = "index,value\n";
    for (std::size_t i = 0; i < path.values.size(); ++i) {
        out += std::to_string(i) + "," + format_number(path.values[i]) + "\n";
    }
    return out;
}

std::string path_json(const Path& path) {
    ordered_json j;
    if (path.spec) {
        j = model_json(path.spec->model);
        j["length"] = path.spec->length;
        j["seed"] = path.spec->seed;
    }
    j["source"] = path.source;
    if (!path.transform.empty()) j["transform"] = path.transform;
    ordered_json values = ordered_json::array();
    for (double v : path.values) values.push_back(num(v));
    j["values"] = values;
    return dump(j);
}

std::string moments_csv(const Model& model, const MomentReport& r) {
    (void)model;
    std::string out = "quantity,value\n";
    out += "mean," + text(r.mean) + "\n";
    out += "variance," + text(r.variance) + "\n";
    out += "lag1_product_moment," + text(r.cross_moment) + "\n";
    out += "lag1_correlation," + text(r.lag1_corr) + "\n";
    if (r.breakdown) {
        out += "region_a," + format_number(r.breakdown->a) + "\n";
        out += "region_b," + format_number(r.breakdown->b) + "\n";
        out += "region_c," + format_number(r.breakdown->c) + "\n";
        out += "region_d," + format_number(r.breakdown->d) + "\n";
    }
    out += "p_down," + format_number(r.moves.down) + "\n";
    out += "p_up," + format_number(r.moves.up) + "\n";
    out += "p_tie," + format_number(r.moves.tie) + "\n";
    return out;
}

std::string moments_json(const Model& model, const MomentReport& r) {
    ordered_json j = model_json(model);
    j["mean"] = num(r.mean);
    j["variance"] = num(r.variance);
    j["lag1_product_moment"] = num(r.cross_moment);
    j["lag1_correlation"] = num(r.lag1_corr);
    if (r.breakdown) {
        j["regions"] = {{"a", num(r.breakdown->a)},
                        {"b", num(r.breakdown->b)},
                        {"c", num(r.breakdown->c)},
                        {"d", num(r.breakdown->d)}};
    }
    j["p_down"] = num(r.moves.down);
    j["p_up"] = num(r.moves.up);
    j["p_tie"] = num(r.moves.tie);
    j["notes"] = r.notes;
    return dump(j);
}

std::string estimate_csv(const Estimate& est) { return parameters_csv(est.model); }

std::string estimate_json(const Estimate& est, const SummaryStats& stats) {
    ordered_json j = model_json(est.model);
    j["branch"] = to_string(est.branch);
    j["valid"] = est.valid;
    j["statistics"] = stats_json(stats);
    j["diagnostics"] = est.diagnostics;
    return dump(j);
}

std::string fit_csv(const FitReport& r) {
    std::string out = parameters_csv(r.estimate.model);
    out += "mse," + text(r.mse) + "\n";
    return out;
}

std::string fit_json(const FitReport& r) {
    ordered_json j = model_json(r.estimate.model);
    j["branch"] = to_string(r.estimate.branch);
    j["valid"] = r.estimate.valid;
    j["mse"] = num(r.mse);
    j["transform"] = r.transform;
    j["size"] = r.size;
    j["statistics"] = stats_json(r.stats);
    j["diagnostics"] = r.estimate.diagnostics;
    return dump(j);
}

std::string study_csv(const StudyReport& report) {
    std::string out = "size,parameter,truth,valid,failures,mean,sd,q025,q50,q975\n";
    for (const auto& c : report.cells) {
        out += std::to_string(c.size) + "," + c.parameter + "," + format_number(c.truth) + "," +
               std::to_string(c.valid) + "," + std::to_string(c.failures) + "," +
               format_number(c.mean) + "," + format_number(c.sd) + "," + format_number(c.q025) +
               "," + format_number(c.q50) + "," + format_number(c.q975) + "\n";
    }
    return out;
}

std::string study_json(const StudyReport& report) {
    ordered_json j = model_json(report.config.model);
    j["replicates"] = report.config.replicates;
    j["seed"] = report.config.master_seed;
    j["sizes"] = report.config.sizes;
    ordered_json cells = ordered_json::array();
    for (const auto& c : report.cells) {
        cells.push_back({{"size", c.size},
                         {"parameter", c.parameter},
                         {"truth", num(c.truth)},
                         {"valid", c.valid},
                         {"failures", c.failures},
                         {"mean", num(c.mean)},
                         {"sd", num(c.sd)},
                         {"q025", num(c.q025)},
                         {"q50", num(c.q50)},
                         {"q975", num(c.q975)}});
    }
    j["cells"] = cells;
    return dump(j);
}

std::string validation_csv(const ValidationReport& report) {
    std::string out = "quantity,closed_form,empirical,std_error,z,pass,p_value\n";
    for (const auto& r : report.rows) {
        out += r.name + "," + format_number(r.closed_form) + "," + format_number(r.empirical) + "," +
               format_number(r.std_error) + "," + format_number(r.z) + "," +
               (r.pass ? "true" : "false") + ",\n";
    }
    out += "marginal_ks,," + format_number(report.ks.thinned.statistic) + ",,," +
           (report.ks.pass ? "true" : "false") + "," + format_number(report.ks.thinned.p_value) +
           "\n";
    return out;
}

std::string validation_json(const ValidationReport& report) {
    ordered_json j = model_json(report.model);
    j["length"] = report.path_length;
    j["seed"] = report.seed;
    j["batches"] = report.batches;
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"quantity", r.name},
                        {"closed_form", num(r.closed_form)},
                        {"empirical", num(r.empirical)},
                        {"std_error", num(r.std_error)},
                        {"z", num(r.z)},
                        {"pass", r.pass}});
    }
    j["rows"] = rows;
    j["marginal_ks"] = {{"statistic", num(report.ks.thinned.statistic)},
                        {"p_value", num(report.ks.thinned.p_value)},
                        {"sample_size", report.ks.thinned.sample_size},
                        {"stride", report.ks.stride},
                        {"full_path_statistic", num(report.ks.full_path_statistic)},
                        {"pass", report.ks.pass}};
    j["skipped"] = report.skipped;
    j["all_pass"] = report.all_pass();
    return dump(j);
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw InputError("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw InputError("cannot move output into '" + path + "'");
    }
}

std::string resolve_output_path(const std::string& path) {
    const std::filesystem::path p(path);
    const char* dir = std::getenv("PHPROC_OUTPUT_DIR");
    if (p.is_absolute() || dir == nullptr || *dir == '\0') return path;
    return (std::filesystem::path(dir) / p).string();
}

}  // namespace phproc
