#include "bpso/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace bpso {

std::string_view to_string(StopReason reason)
{
    return reason == StopReason::max_iterations ? "max_iterations" : "swarm_collapsed";
}

StopReason parse_stop_reason(std::string_view name)
{
    if (name == "max_iterations")
        return StopReason::max_iterations;
    if (name == "swarm_collapsed")
        return StopReason::swarm_collapsed;
    throw ConfigError("unknown stop reason '" + std::string(name) + "'");
}

void RunConfig::validate() const
{
    if (particles < 2)
        throw ConfigError("at least 2 particles are required");
    if (max_iterations < 1)
        throw ConfigError("max_iterations must be at least 1");
    if (dim < 1)
        throw ConfigError("dimension must be at least 1");
    if (!(stop_threshold >= 0.0))
        throw ConfigError("stop threshold must be non-negative");
    if (!(noise_sigma >= 0.0))
        throw ConfigError("noise sigma must be non-negative");
}

RunResult run_single(const RunConfig& config)
{
    config.validate();
    const auto started = std::chrono::steady_clock::now();
    const Objective objective = Objective::make(config.objective, config.dim, config.noise_sigma);
    std::unique_ptr<Optimizer> optimizer = make_optimizer(config.algorithm, config.overrides, config.dim);

    RngStream rng(config.seed);
    SwarmState state = init_swarm(config.particles, objective, rng);
    optimizer->start(state);

    RunResult result;
    result.iterations_used = 1;
    if (config.record_trace)
        result.trace.push_back(state.global_best_raw);

    bool collapsed = config.stop_threshold > 0.0 && stop_check(state, config.stop_threshold);
    while (!collapsed && result.iterations_used < config.max_iterations) {
        state = optimizer->step(std::move(state), objective, rng);
        ++result.iterations_used;
        if (config.record_trace)
            result.trace.push_back(state.global_best_raw);
        collapsed = config.stop_threshold > 0.0 && stop_check(state, config.stop_threshold);
    }

    result.best_value = state.global_best_raw;
    result.best_position = state.global_best_position;
    result.stop_reason = collapsed ? StopReason::swarm_collapsed : StopReason::max_iterations;
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

std::size_t default_worker_count()
{
    if (const char* env = std::getenv("BPSO_WORKERS")) {
        char* end = nullptr;
        const unsigned long value = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && value > 0)
            return value;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SuiteResult run_suite(const SuiteConfig& config)
{
    if (config.runs_per_cell < 2)
        throw ConfigError("runs per cell must be at least 2");
    if (config.algorithms.empty() || config.objectives.empty())
        throw ConfigError("a suite needs at least one algorithm and one function");
    config.run.validate();
    // Fail on bad parameters before spawning anything.
    for (AlgorithmId id : config.algorithms)
        make_optimizer(id, config.run.overrides, config.run.dim);

    struct Job {
        AlgorithmId algorithm;
        ObjectiveId objective;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (ObjectiveId fn : config.objectives)
        for (AlgorithmId algo : config.algorithms)
            for (std::size_t k = 0; k < config.runs_per_cell; ++k)
                jobs.push_back({algo, fn, derive_run_seed(config.base_seed, k)});

    std::vector<RunRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size())
                return;
            try {
                RunConfig run = config.run;
                run.algorithm = jobs[i].algorithm;
                run.objective = jobs[i].objective;
                run.seed = jobs[i].seed;
                run.record_trace = false;
                const RunResult r = run_single(run);
                records[i] = {std::string(to_string(run.algorithm)), std::string(to_string(run.objective)),
                              run.seed,
                              r.best_value,
                              r.iterations_used,
                              std::string(to_string(r.stop_reason))};
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(jobs.size());
            }
        }
    };

    const std::size_t workers =
        std::min(jobs.size(), config.workers > 0 ? config.workers : default_worker_count());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    SuiteResult result;
    result.report = build_report(records);
    result.records = std::move(records);
    return result;
}

BenchmarkReport build_report(const std::vector<RunRecord>& records)
{
    BenchmarkReport report;
    std::map<std::pair<std::string, std::string>, std::vector<double>> samples;
    for (const RunRecord& r : records) {
        if (std::find(report.functions.begin(), report.functions.end(), r.function) == report.functions.end())
            report.functions.push_back(r.function);
        if (std::find(report.algorithms.begin(), report.algorithms.end(), r.algorithm) == report.algorithms.end())
            report.algorithms.push_back(r.algorithm);
        samples[{r.algorithm, r.function}].push_back(r.best_value);
    }

    for (const std::string& fn : report.functions) {
        for (const std::string& algo : report.algorithms) {
            auto it = samples.find({algo, fn});
            if (it == samples.end())
                continue;
            if (it->second.size() < 2)
                throw UsageError("cell " + algo + "/" + fn + " has fewer than 2 runs");
            report.cells.push_back({algo, fn, mean(it->second), sample_stddev(it->second), it->second.size()});
        }
        for (std::size_t i = 0; i < report.algorithms.size(); ++i) {
            for (std::size_t j = i + 1; j < report.algorithms.size(); ++j) {
                auto a = samples.find({report.algorithms[j], fn});
                auto b = samples.find({report.algorithms[i], fn});
                if (a == samples.end() || b == samples.end())
                    continue;
                report.comparisons.push_back(
                    {report.algorithms[j], report.algorithms[i], fn, welch_t_test(a->second, b->second)});
            }
        }
    }
    return report;
}

const CellStats* BenchmarkReport::cell(std::string_view algorithm, std::string_view function) const
{
    for (const CellStats& c : cells)
        if (c.algorithm == algorithm && c.function == function)
            return &c;
    return nullptr;
}

const Comparison* BenchmarkReport::comparison(std::string_view a, std::string_view b,
                                              std::string_view function) const
{
    for (const Comparison& c : comparisons)
        if (c.function == function &&
            ((c.algorithm_a == a && c.algorithm_b == b) || (c.algorithm_a == b && c.algorithm_b == a)))
            return &c;
    return nullptr;
}

}  // namespace bpso
