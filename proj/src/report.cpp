#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "bpso/bench.hpp"
#include "json.hpp"

namespace bpso {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

double parse_number(const std::string& text)
{
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0')
        throw UsageError("malformed number '" + text + "' in report csv");
    return v;
}

std::string render_csv(const BenchmarkReport& report)
{
    std::string out = "# t_test: " + report.t_test + "\n";
    out += "kind,function,algorithm_a,algorithm_b,mean,sd,runs,t,df,p,degenerate\n";
    for (const CellStats& c : report.cells)
        out += "cell," + c.function + "," + c.algorithm + ",," + number(c.mean) + "," + number(c.sd) + "," +
               std::to_string(c.runs) + ",,,,\n";
    for (const Comparison& c : report.comparisons)
        out += "comparison," + c.function + "," + c.algorithm_a + "," + c.algorithm_b + ",,,," +
               number(c.test.t) + "," + number(c.test.df) + "," + number(c.test.p) + "," +
               (c.test.degenerate ? "1" : "0") + "\n";
    return out;
}

std::string render_json(const BenchmarkReport& report)
{
    ordered_json doc;
    doc["t_test"] = report.t_test;
    doc["algorithms"] = report.algorithms;
    doc["functions"] = report.functions;
    doc["cells"] = ordered_json::array();
    for (const CellStats& c : report.cells)
        doc["cells"].push_back(
            {{"algorithm", c.algorithm}, {"function", c.function}, {"mean", c.mean}, {"sd", c.sd}, {"runs", c.runs}});
    doc["comparisons"] = ordered_json::array();
    for (const Comparison& c : report.comparisons)
        doc["comparisons"].push_back({{"algorithm_a", c.algorithm_a},
                                      {"algorithm_b", c.algorithm_b},
                                      {"function", c.function},
                                      {"t", c.test.t},
                                      {"df", c.test.df},
                                      {"p", c.test.p},
                                      {"degenerate", c.test.degenerate}});
    return doc.dump(2) + "\n";
}

std::string render_markdown(const BenchmarkReport& report)
{
    std::string out = "### Mean value (standard deviation)\n\n| Function |";
    for (const std::string& a : report.algorithms)
        out += " " + a + " |";
    out += "\n|---|";
    for (std::size_t i = 0; i < report.algorithms.size(); ++i)
        out += "---|";
    out += "\n";
    for (const std::string& fn : report.functions) {
        out += "| " + fn + " |";
        for (const std::string& a : report.algorithms) {
            const CellStats* c = report.cell(a, fn);
            out += c ? " " + short_number(c->mean) + " (" + short_number(c->sd) + ") |" : " |";
        }
        out += "\n";
    }
    if (report.comparisons.empty())
        return out;

    std::vector<std::pair<std::string, std::string>> pairs;
    for (const Comparison& c : report.comparisons) {
        std::pair<std::string, std::string> key{c.algorithm_a, c.algorithm_b};
        if (std::find(pairs.begin(), pairs.end(), key) == pairs.end())
            pairs.push_back(key);
    }
    out += "\n### t-test p-values (" + report.t_test + ", * marks p < 0.05)\n\n| Function |";
    for (const auto& [a, b] : pairs)
        out += " " + a + " vs " + b + " |";
    out += "\n|---|";
    for (std::size_t i = 0; i < pairs.size(); ++i)
        out += "---|";
    out += "\n";
    for (const std::string& fn : report.functions) {
        out += "| " + fn + " |";
        for (const auto& [a, b] : pairs) {
            const Comparison* c = report.comparison(a, b, fn);
            if (!c) {
                out += " |";
                continue;
            }
            out += " " + short_number(c->test.p) + (c->test.p < 0.05 ? "*" : "") + " |";
        }
        out += "\n";
    }
    return out;
}

}  // namespace

ReportFormat parse_report_format(std::string_view name)
{
    if (name == "csv")
        return ReportFormat::csv;
    if (name == "json")
        return ReportFormat::json;
    if (name == "markdown")
        return ReportFormat::markdown;
    throw ConfigError("unknown report format '" + std::string(name) + "' (expected csv, json or markdown)");
}

std::string render_report(const BenchmarkReport& report, ReportFormat format)
{
    if (report.cells.empty())
        throw UsageError("cannot render an empty report");
    switch (format) {
    case ReportFormat::csv: return render_csv(report);
    case ReportFormat::json: return render_json(report);
    case ReportFormat::markdown: return render_markdown(report);
    }
    return {};
}

BenchmarkReport parse_report_csv(const std::string& csv)
{
    BenchmarkReport report;
    std::istringstream in(csv);
    std::string line;
    bool header_seen = false;
    const std::string meta = "# t_test: ";
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line.rfind(meta, 0) == 0) {
            report.t_test = line.substr(meta.size());
            continue;
        }
        if (!header_seen) {
            if (line.rfind("kind,", 0) != 0)
                throw UsageError("report csv is missing its header line");
            header_seen = true;
            continue;
        }
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 11)
            throw UsageError("report csv row has " + std::to_string(f.size()) + " fields, expected 11");
        if (f[0] == "cell") {
            CellStats c{f[2], f[1], parse_number(f[4]), parse_number(f[5]),
                        static_cast<std::size_t>(std::stoull(f[6]))};
            if (std::find(report.functions.begin(), report.functions.end(), c.function) == report.functions.end())
                report.functions.push_back(c.function);
            if (std::find(report.algorithms.begin(), report.algorithms.end(), c.algorithm) ==
                report.algorithms.end())
                report.algorithms.push_back(c.algorithm);
            report.cells.push_back(std::move(c));
        } else if (f[0] == "comparison") {
            Comparison c{f[2], f[3], f[1], {parse_number(f[7]), parse_number(f[8]), parse_number(f[9]), f[10] == "1"}};
            report.comparisons.push_back(std::move(c));
        } else {
            throw UsageError("unknown report csv row kind '" + f[0] + "'");
        }
    }
    return report;
}

void write_results(std::ostream& out, const std::vector<RunRecord>& records)
{
    for (const RunRecord& r : records) {
        ordered_json line;
        line["algorithm"] = r.algorithm;
        line["function"] = r.function;
        line["seed"] = r.seed;
        line["best_value"] = r.best_value;
        line["iterations"] = r.iterations;
        line["stop_reason"] = r.stop_reason;
        out << line.dump() << "\n";
    }
}

std::vector<RunRecord> read_results(std::istream& in)
{
    std::vector<RunRecord> records;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty())
            continue;
        try {
            const ordered_json j = ordered_json::parse(line);
            RunRecord r;
            r.algorithm = j.at("algorithm").get<std::string>();
            r.function = j.at("function").get<std::string>();
            r.seed = j.at("seed").get<std::uint64_t>();
            r.best_value = j.at("best_value").get<double>();
            r.iterations = j.at("iterations").get<std::size_t>();
            r.stop_reason = j.at("stop_reason").get<std::string>();
            records.push_back(std::move(r));
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("results file line " + std::to_string(number) + ": " + e.what());
        }
    }
    return records;
}

}  // namespace bpso
