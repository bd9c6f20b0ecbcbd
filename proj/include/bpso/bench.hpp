#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bpso/algorithms.hpp"
#include "bpso/objectives.hpp"
#include "bpso/stats.hpp"

namespace bpso {

enum class StopReason { max_iterations, swarm_collapsed };

std::string_view to_string(StopReason reason);
StopReason parse_stop_reason(std::string_view name);

struct RunConfig {
    AlgorithmId algorithm = AlgorithmId::standard;
    ObjectiveId objective = ObjectiveId::sphere;
    std::size_t dim = 10;
    std::size_t particles = 100;
    /// Generations including the initial evaluation; 1 returns the best of
    /// the initial swarm.
    std::size_t max_iterations = 100000;
    /// Swarm-spread threshold below which the run stops; 0 disables the check.
    double stop_threshold = 1e-3;
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;
    AlgorithmOverrides overrides{};
    bool record_trace = false;

    void validate() const;
};

struct RunResult {
    double best_value = 0.0;
    Vector best_position;
    std::size_t iterations_used = 0;
    StopReason stop_reason = StopReason::max_iterations;
    double wall_time = 0.0;
    /// Global-best value after every generation (only with record_trace).
    std::vector<double> trace;
};

RunResult run_single(const RunConfig& config);

/// One line of a results file.
struct RunRecord {
    std::string algorithm;
    std::string function;
    std::uint64_t seed = 0;
    double best_value = 0.0;
    std::size_t iterations = 0;
    std::string stop_reason;

    bool operator==(const RunRecord&) const = default;
};

struct CellStats {
    std::string algorithm;
    std::string function;
    double mean = 0.0;
    double sd = 0.0;
    std::size_t runs = 0;

    bool operator==(const CellStats&) const = default;
};

struct Comparison {
    std::string algorithm_a;
    std::string algorithm_b;
    std::string function;
    TTestResult test;
};

inline constexpr const char* kTTestMethod = "welch-two-tailed";

struct BenchmarkReport {
    std::vector<std::string> algorithms;
    std::vector<std::string> functions;
    std::vector<CellStats> cells;
    std::vector<Comparison> comparisons;
    std::string t_test = kTTestMethod;

    const CellStats* cell(std::string_view algorithm, std::string_view function) const;
    const Comparison* comparison(std::string_view a, std::string_view b, std::string_view function) const;
};

struct SuiteConfig {
    std::vector<AlgorithmId> algorithms;
    std::vector<ObjectiveId> objectives;
    std::size_t runs_per_cell = 30;
    std::uint64_t base_seed = 0;
    /// Everything but algorithm, objective and seed is taken from here.
    RunConfig run{};
    /// 0 selects BPSO_WORKERS or, failing that, the hardware concurrency.
    std::size_t workers = 0;
};

struct SuiteResult {
    std::vector<RunRecord> records;
    BenchmarkReport report;
};

/// Runs every (algorithm, function, run) job with seed
/// derive_run_seed(base_seed, run), joins, and aggregates. Records are ordered
/// by function, then algorithm, then run index regardless of worker count.
SuiteResult run_suite(const SuiteConfig& config);

/// Cells in (function, algorithm) order and Welch comparisons for each
/// algorithm pair per function. Throws UsageError for a cell with < 2 runs.
BenchmarkReport build_report(const std::vector<RunRecord>& records);

/// Worker count from the BPSO_WORKERS environment variable, if set and valid.
std::size_t default_worker_count();

enum class ReportFormat { csv, json, markdown };
ReportFormat parse_report_format(std::string_view name);

std::string render_report(const BenchmarkReport& report, ReportFormat format);
BenchmarkReport parse_report_csv(const std::string& csv);

/// Results file: one JSON object per line with keys in the order
/// algorithm, function, seed, best_value, iterations, stop_reason.
void write_results(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_results(std::istream& in);

}  // namespace bpso
