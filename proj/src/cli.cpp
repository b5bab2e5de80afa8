#include "phproc/cli.hpp"

#include <optional>

#include <CLI11.hpp>

#include "phproc/analytics.hpp"
#include "phproc/error.hpp"
#include "phproc/fitting.hpp"
#include "phproc/inference.hpp"
#include "phproc/montecarlo.hpp"
#include "phproc/processes.hpp"
#include "phproc/serialize.hpp"

namespace phproc {

namespace {

struct ModelFlags {
    std::string kind;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> delta;
    std::optional<double> sigma;

    void add_kind(CLI::App* app) {
        app->add_option("--kind", kind, "process kind, e.g. kundu-cpfd or am-pareto")->required();
    }

    void add_params(CLI::App* app) {
        add_kind(app);
        app->add_option("--alpha", alpha, "shape alpha")->required();
        app->add_option("--beta", beta, "shape beta (kundu kinds)");
        app->add_option("--delta", delta, "shape delta (am kinds)");
        app->add_option("--sigma", sigma, "scale (pareto kinds)");
    }

    Model model() const {
        const Kind k = parse_kind(kind);
        if (is_pareto(k) && !sigma) throw UsageError(kind + " needs --sigma");
        if (!is_pareto(k) && sigma) throw UsageError(kind + " takes no --sigma");
        if (is_kundu(k)) {
            if (!beta) throw UsageError(kind + " needs --beta");
            if (delta) throw UsageError(kind + " takes --beta, not --delta");
            return Model::kundu(k, *alpha, *beta, sigma);
        }
        if (!delta) throw UsageError(kind + " needs --delta");
        if (beta) throw UsageError(kind + " takes --delta, not --beta");
        return Model::am(k, *alpha, *delta, sigma);
    }
};

struct OutputFlags {
    std::string output;
    std::string format;

    void add(CLI::App* app) {
        app->add_option("-o,--output", output, "output file (default: standard output)");
        app->add_option("--format", format, "csv or json (default: from the file extension, else csv)");
    }

    Format resolved_format() const {
        if (!format.empty()) return parse_format(format);
        const bool json = output.size() >= 5 && output.compare(output.size() - 5, 5, ".json") == 0;
        return json ? Format::Json : Format::Csv;
    }

    void emit(const std::string& content, std::ostream& out) const {
        if (output.empty()) {
            out << content;
        } else {
            write_atomic(resolve_output_path(output), content);
        }
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stationary minification processes: simulation, moments and estimation", "phproc"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for every subcommand");

    ModelFlags mf;
    OutputFlags of;
    std::size_t length = 0;
    std::uint64_t seed = 0;
    std::string baseline;
    std::string transform;
    std::string input;
    std::optional<std::string> column;
    std::vector<std::size_t> sizes;
    std::size_t replicates = 2000;
    unsigned threads = 0;
    std::size_t batches = kDefaultBatches;

    auto* simulate = app.add_subcommand("simulate", "generate a sample path");
    mf.add_params(simulate);
    simulate->add_option("--length", length, "path length m (indices 0..m)")->required();
    simulate->add_option("--seed", seed, "random seed")->required();
    simulate->add_option("--baseline", baseline, "pareto:<sigma> or exponential:<rate>");
    simulate->add_option("--transform", transform, "ph (cpfd kinds) or prh (pfd kinds)");
    of.add(simulate);

    auto* moments = app.add_subcommand("moments", "closed-form moments and move probabilities");
    mf.add_params(moments);
    of.add(moments);

    auto* estimate_cmd = app.add_subcommand("estimate", "method-of-moments estimates from a series");
    mf.add_kind(estimate_cmd);
    estimate_cmd->add_option("--input", input, "CSV file")->required();
    estimate_cmd->add_option("--column", column, "column name or 0-based index");
    of.add(estimate_cmd);

    auto* bootstrap = app.add_subcommand("bootstrap", "sampling distribution of the estimators");
    mf.add_params(bootstrap);
    bootstrap->add_option("--sizes", sizes, "comma-separated path sizes")->required()->delimiter(',');
    bootstrap->add_option("--replicates", replicates, "datasets per size")->capture_default_str();
    bootstrap->add_option("--seed", seed, "master seed")->required();
    bootstrap->add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();
    of.add(bootstrap);

    auto* fit_cmd = app.add_subcommand("fit", "fit a kind to a series and report the MSE");
    mf.add_kind(fit_cmd);
    fit_cmd->add_option("--input", input, "CSV file")->required();
    fit_cmd->add_option("--column", column, "column name or 0-based index");
    fit_cmd->add_option("--transform", transform, "auto, ecdf or none")->default_str("auto");
    of.add(fit_cmd);

    auto* validate_cmd = app.add_subcommand("validate", "closed forms against a simulated path");
    mf.add_params(validate_cmd);
    validate_cmd->add_option("--length", length, "path length (at least 10000)")->required();
    validate_cmd->add_option("--seed", seed, "random seed")->required();
    validate_cmd->add_option("--batches", batches, "batches for standard errors")->capture_default_str();
    of.add(validate_cmd);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("phproc");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return 2;
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        const Format format = of.resolved_format();
        const bool json = format == Format::Json;
        if (active == simulate) {
            const Model model = mf.model();
            Path path = generate_path({model, length, seed});
            if (!baseline.empty() || !transform.empty()) {
                if (baseline.empty()) throw UsageError("--transform needs --baseline");
                const std::string t = transform.empty() ? "ph" : transform;
                HazardTransform direction;
                if (t == "ph") {
                    if (family_of(model.kind) != Family::CPFD) {
                        throw UsageError("the ph transform takes a cpfd kind");
                    }
                    direction = HazardTransform::PH;
                } else if (t == "prh") {
                    if (family_of(model.kind) != Family::PFD) {
                        throw UsageError("the prh transform takes a pfd kind");
                    }
                    direction = HazardTransform::PRH;
                } else {
                    throw UsageError("unknown transform '" + t + "' (expected ph or prh)");
                }
                path = transform_marginal(path, parse_baseline(baseline), direction);
            }
            of.emit(json ? path_json(path) : path_csv(path), out);
        } else if (active == moments) {
            const Model model = mf.model();
            const MomentReport report = theoretical_moments(model);
            of.emit(json ? moments_json(model, report) : moments_csv(model, report), out);
        } else if (active == estimate_cmd) {
            const Kind kind = parse_kind(mf.kind);
            const Series series = load_series(input, column);
            const SummaryStats stats = summarize(series.values);
            const Estimate est = estimate(kind, stats);
            if (!est.valid) {
                throw DomainError("estimates violate the " + to_string(kind) +
                                  " constraints: " + est.diagnostics.front());
            }
            of.emit(json ? estimate_json(est, stats) : estimate_csv(est), out);
        } else if (active == bootstrap) {
            StudyConfig config{mf.model(), sizes, replicates, seed, threads};
            const StudyReport report = simulation_study(config);
            of.emit(json ? study_json(report) : study_csv(report), out);
        } else if (active == fit_cmd) {
            const Kind kind = parse_kind(mf.kind);
            const FitTransform t = parse_fit_transform(transform.empty() ? "auto" : transform);
            const FitReport report = fit(load_series(input, column), kind, t);
            if (!report.estimate.valid) {
                throw DomainError("estimates violate the " + to_string(kind) +
                                  " constraints: " + report.estimate.diagnostics.front());
            }
            of.emit(json ? fit_json(report) : fit_csv(report), out);
        } else if (active == validate_cmd) {
            const ValidationReport report = empirical_check(mf.model(), length, seed, batches);
            of.emit(json ? validation_json(report) : validation_csv(report), out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << active->help();
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace phproc
