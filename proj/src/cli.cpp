#include "bpso/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bpso/bench.hpp"
#include "json.hpp"

namespace bpso {

namespace {

namespace fs = std::filesystem;

struct ParamFlags {
    std::optional<double> gamma, beta, tau, w, phi, eta, beta_g, beta_b, bb_scale, kernel_mu;
    std::optional<std::size_t> window;
    std::string prior, cov_mode, assumption, kernel;

    AlgorithmOverrides resolve() const
    {
        AlgorithmOverrides o;
        o.gamma = gamma;
        o.beta = beta;
        o.tau = tau;
        o.w = w;
        o.phi = phi;
        o.eta = eta;
        o.beta_g = beta_g;
        o.beta_b = beta_b;
        o.bb_scale = bb_scale;
        o.kernel_mu = kernel_mu;
        o.window = window;
        if (!prior.empty())
            o.prior = parse_prior(prior);
        if (!cov_mode.empty())
            o.cov_mode = parse_cov_mode(cov_mode);
        if (!assumption.empty())
            o.assumption = parse_assumption(assumption);
        if (!kernel.empty())
            o.kernel = parse_kernel_id(kernel);
        return o;
    }
};

struct SharedFlags {
    std::size_t dim = 10;
    std::size_t particles = 100;
    std::size_t max_iters = 100000;
    double stop_threshold = 1e-3;
    std::uint64_t seed = 0;
    double noise = 0.0;
    std::string out;
    ParamFlags params;

    RunConfig run_config() const
    {
        RunConfig c;
        c.dim = dim;
        c.particles = particles;
        c.max_iterations = max_iters;
        c.stop_threshold = stop_threshold;
        c.seed = seed;
        c.noise_sigma = noise;
        c.overrides = params.resolve();
        return c;
    }
};

void add_shared(CLI::App& app, SharedFlags& f)
{
    app.add_option("--dim", f.dim, "Search-space dimension")->capture_default_str();
    app.add_option("--particles", f.particles, "Swarm size")->capture_default_str();
    app.add_option("--max-iters", f.max_iters, "Iteration budget, initial evaluation included")
        ->capture_default_str();
    app.add_option("--stop-threshold", f.stop_threshold, "Swarm-spread stop threshold, 0 disables")
        ->capture_default_str();
    app.add_option("--seed", f.seed, "Seed (base seed for suites)")->capture_default_str();
    app.add_option("--noise", f.noise, "Std. deviation of additive evaluation noise")->capture_default_str();

    ParamFlags& p = f.params;
    app.add_option("--gamma", p.gamma, "Step size of the Bayesian variants [0.8]");
    app.add_option("--beta", p.beta,
                   "Component precision [0.4 dependence, 0.1 independence, 0.4 kernel-dep, 0.1 kernel-indep]");
    app.add_option("--tau", p.tau, "Temporal discount of older records [0.5]");
    app.add_option("--window", p.window, "Posterior history window in iterations [100]");
    app.add_option("--prior", p.prior, "uniform | gaussian [uniform]");
    app.add_option("--assumption", p.assumption,
                   "bayes-standard only: dependence | independence [independence]");
    app.add_option("--w", p.w, "Inertia [0.7298 standard, 1 constricted]");
    app.add_option("--phi", p.phi, "Personal-best acceleration [1.49618 standard, 2.05 constricted]");
    app.add_option("--eta", p.eta, "Global-best acceleration [1.49618 standard, 2.05 constricted]");
    app.add_option("--cov-mode", p.cov_mode,
                   "Bare-bones covariance: per_dimension | scalar [per_dimension for barebones, scalar for "
                   "barebones-scalar]");
    app.add_option("--bb-scale", p.bb_scale, "Bare-bones covariance multiplier [0.2]");
    app.add_option("--kernel", p.kernel,
                   "sqrt_shift | sinc | poisson | trig | linear [trig for kernel-standard, poisson otherwise]");
    app.add_option("--kernel-mu", p.kernel_mu, "Kernel shape parameter mu [1]");
    app.add_option("--beta-g", p.beta_g, "kernel-standard global-best coefficient [2]");
    app.add_option("--beta-b", p.beta_b, "kernel-standard personal-best coefficient [2]");
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        if (!item.empty())
            items.push_back(item);
    return items;
}

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot write " + path.string());
    file << text;
    if (!file)
        throw std::runtime_error("failed writing " + path.string());
}

/// Fills options not given on the command line from a "key = value" file.
/// Keys are long option names without the leading dashes; an optional
/// [run] or [suite] section header must match the subcommand.
void apply_config_file(CLI::App& sub, const CLI::Option* config_opt)
{
    if (config_opt->count() == 0)
        return;
    const std::string path = config_opt->as<std::string>();
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path);
    for (const CLI::ConfigItem& item : CLI::ConfigINI().from_config(in)) {
        if (item.name == "++" || item.name == "--")
            continue;
        if (!item.parents.empty() && (item.parents.size() > 1 || item.parents[0] != sub.get_name()))
            throw ConfigError("unexpected section in " + path + ": " + item.fullname());
        CLI::Option* opt = sub.get_option_no_throw("--" + item.name);
        if (opt == nullptr || opt == config_opt)
            throw ConfigError("unknown key '" + item.name + "' in " + path);
        if (opt->count() > 0)
            continue;
        std::string value;
        for (const std::string& v : item.inputs)
            value += (value.empty() ? "" : ",") + v;
        opt->add_result(value);
        opt->run_callback();
    }
}

std::string extension_of(ReportFormat format)
{
    switch (format) {
    case ReportFormat::csv: return "csv";
    case ReportFormat::json: return "json";
    case ReportFormat::markdown: return "md";
    }
    return "txt";
}

int cmd_list(std::ostream& out)
{
    out << "algorithms:\n";
    for (AlgorithmId id : kAllAlgorithms)
        out << "  " << to_string(id) << "\n";
    out << "objectives:\n";
    for (ObjectiveId id : kAllObjectives)
        out << "  " << to_string(id) << "\n";
    out << "kernels:\n";
    for (KernelId id : {KernelId::sqrt_shift, KernelId::sinc, KernelId::poisson, KernelId::trig, KernelId::linear})
        out << "  " << to_string(id) << "\n";
    return 0;
}

int cmd_run(const SharedFlags& f, const std::string& algo, const std::string& fn, const std::string& trace_path,
            std::ostream& out)
{
    RunConfig config = f.run_config();
    config.algorithm = parse_algorithm_id(algo);
    config.objective = parse_objective_id(fn);
    config.record_trace = !trace_path.empty();
    const RunResult r = run_single(config);

    nlohmann::ordered_json doc;
    doc["algorithm"] = algo;
    doc["function"] = fn;
    doc["seed"] = config.seed;
    doc["best_value"] = r.best_value;
    doc["iterations"] = r.iterations_used;
    doc["stop_reason"] = std::string(to_string(r.stop_reason));
    doc["best_position"] = std::vector<double>(r.best_position.begin(), r.best_position.end());

    out << "algorithm:    " << algo << "\n"
        << "function:     " << fn << "\n"
        << "seed:         " << config.seed << "\n"
        << "best_value:   " << num(r.best_value) << "\n"
        << "iterations:   " << r.iterations_used << "\n"
        << "stop_reason:  " << to_string(r.stop_reason) << "\n"
        << "wall_time_s:  " << r.wall_time << "\n"
        << "best_position:";
    for (double v : r.best_position)
        out << " " << num(v);
    out << "\n";

    if (!f.out.empty())
        write_file(f.out, doc.dump(2) + "\n");
    if (!trace_path.empty()) {
        std::string text;
        for (std::size_t i = 0; i < r.trace.size(); ++i)
            text += std::to_string(i + 1) + " " + num(r.trace[i]) + "\n";
        write_file(trace_path, text);
    }
    return 0;
}

int cmd_suite(const SharedFlags& f, const std::string& algos, const std::string& fns, std::size_t runs,
              std::size_t workers, const std::string& format_name, const std::string& config_path,
              std::ostream& out)
{
    SuiteConfig config;
    config.run = f.run_config();
    config.base_seed = f.seed;
    config.runs_per_cell = runs;
    config.workers = workers;
    for (const std::string& a : split_list(algos))
        config.algorithms.push_back(parse_algorithm_id(a));
    for (const std::string& fn : split_list(fns))
        config.objectives.push_back(parse_objective_id(fn));
    const ReportFormat format = parse_report_format(format_name);

    const SuiteResult result = run_suite(config);

    const fs::path dir = f.out.empty() ? fs::path("bpso-suite") : fs::path(f.out);
    fs::create_directories(dir);
    std::ostringstream results;
    write_results(results, result.records);
    write_file(dir / "results.jsonl", results.str());
    const std::string report = render_report(result.report, format);
    write_file(dir / ("report." + extension_of(format)), report);
    if (!config_path.empty())
        fs::copy_file(config_path, dir / fs::path(config_path).filename(), fs::copy_options::overwrite_existing);

    out << report;
    return 0;
}

int cmd_report(const std::string& input, const std::string& format_name, const std::string& out_path,
               std::ostream& out)
{
    const ReportFormat format = parse_report_format(format_name);
    std::ifstream in(input);
    if (!in)
        throw ConfigError("cannot open results file " + input);
    const std::string text = render_report(build_report(read_results(in)), format);
    if (out_path.empty())
        out << text;
    else
        write_file(out_path, text);
    return 0;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bayesian-framework particle swarm optimizers and benchmark harness", "bpso"};
    app.require_subcommand(1);

    CLI::App* list = app.add_subcommand("list", "Print algorithm, objective and kernel ids");

    SharedFlags run_flags;
    std::string run_algo = "standard", run_fn = "sphere", trace_path;
    CLI::App* run = app.add_subcommand("run", "Single seeded run");
    CLI::Option* run_config =
        run->add_option("--config", "Plain-text key = value file; command-line flags take precedence");
    run->add_option("--algo", run_algo, "Algorithm id")->capture_default_str();
    run->add_option("--fn", run_fn, "Objective id")->capture_default_str();
    add_shared(*run, run_flags);
    run->add_option("--out", run_flags.out, "Write the result as JSON to this file");
    run->add_option("--trace", trace_path, "Write the global best per iteration to this file");

    SharedFlags suite_flags;
    std::string suite_algos = "barebones,gaussian-indep", suite_fns = "sphere,griewank";
    std::string suite_format = "markdown";
    std::size_t suite_runs = 100;
    std::size_t suite_workers = 0;
    CLI::App* suite = app.add_subcommand("suite", "Repeated seeded runs per (algorithm, function) with statistics");
    CLI::Option* suite_config = suite->add_option(
        "--config", "Plain-text key = value file, copied into the output directory; flags take precedence");
    suite->add_option("--algos", suite_algos, "Comma-separated algorithm ids")->capture_default_str();
    suite->add_option("--fns", suite_fns, "Comma-separated objective ids")->capture_default_str();
    suite->add_option("--runs", suite_runs, "Runs per cell")->capture_default_str();
    suite->add_option("--workers", suite_workers, "Parallel runs [BPSO_WORKERS, else hardware threads]");
    suite->add_option("--format", suite_format, "Report format: csv | json | markdown")->capture_default_str();
    add_shared(*suite, suite_flags);
    suite->add_option("--out", suite_flags.out, "Output directory [bpso-suite]");

    std::string report_input, report_format = "markdown", report_out;
    CLI::App* report = app.add_subcommand("report", "Re-render a report from a results file");
    report->add_option("results", report_input, "Results file written by suite")->required();
    report->add_option("--format", report_format, "csv | json | markdown")->capture_default_str();
    report->add_option("--out", report_out, "Write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "bpso: " << e.what() << "\n";
        return 2;
    }

    try {
        if (list->parsed())
            return cmd_list(out);
        if (run->parsed()) {
            apply_config_file(*run, run_config);
            return cmd_run(run_flags, run_algo, run_fn, trace_path, out);
        }
        if (suite->parsed()) {
            apply_config_file(*suite, suite_config);
            std::string config_path = suite_config->count() > 0 ? suite_config->as<std::string>() : "";
            return cmd_suite(suite_flags, suite_algos, suite_fns, suite_runs, suite_workers, suite_format,
                             config_path, out);
        }
        if (report->parsed())
            return cmd_report(report_input, report_format, report_out, out);
    } catch (const ConfigError& e) {
        err << "bpso: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "bpso: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "bpso: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

int parse_and_dispatch(int argc, const char* const* argv)
{
    return parse_and_dispatch(argc, argv, std::cout, std::cerr);
}

}  // namespace bpso
