#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "params.hpp"
#include "run.hpp"
#include "stats.hpp"
#include "tuning.hpp"

namespace sensesearch
{

/// Best-so-far F1 of one run, as change points.
struct RunCurve
{
    Algorithm algorithm = Algorithm::SimulatedAnnealing;
    std::uint64_t seed = 0;
    std::size_t budget = 0;
    std::vector<TracePoint> points;
};

/// Expands change points onto the grid 1..budget, carrying the last value
/// forward. Calls before the first point read 0.
inline std::vector<double> step_values(const std::vector<TracePoint>& points, std::size_t budget)
{
    std::vector<double> values(budget, 0.0);
    double current = 0.0;
    std::size_t p = 0;
    for (std::size_t call = 1; call <= budget; ++call) {
        while (p < points.size() && points[p].call <= call) {
            current = points[p].best;
            ++p;
        }
        values[call - 1] = current;
    }
    return values;
}

enum class BudgetScope
{
    Document, ///< every document gets its own scorer and the full budget
    Corpus,   ///< the corpus is searched as one concatenated document
};

inline BudgetScope parse_budget_scope(std::string_view s)
{
    if (s == "document") return BudgetScope::Document;
    if (s == "corpus") return BudgetScope::Corpus;
    throw ConfigError("budget_scope must be 'document' or 'corpus', got '" + std::string(s) + "'");
}

struct ExperimentSpec
{
    std::string corpus_path;
    std::vector<Algorithm> algorithms;
    /// Explicit parameter values per algorithm, by field name.
    std::map<Algorithm, std::map<std::string, double>> params;
    std::vector<std::size_t> budgets;
    std::size_t runs = 100;
    std::uint64_t base_seed = 0;
    std::string output_dir = "results";
    bool preset_table = false;
    BudgetScope budget_scope = BudgetScope::Document;
    std::size_t jobs = 1;
    double alpha = 0.05;

    void validate() const
    {
        if (algorithms.empty()) throw ConfigError("no algorithm selected");
        if (budgets.empty()) throw ConfigError("no budget given");
        for (auto b : budgets) {
            if (b == 0) throw ConfigError("budgets must be positive");
        }
        if (runs == 0) throw ConfigError("runs must be at least 1");
    }
};

/**
 * Parameters for one (algorithm, budget) cell: the preset row when
 * preset_table is set and a row exists, overlaid with explicit values.
 * Without a preset every tunable field must be given explicitly.
 */
inline AlgorithmParams resolve_params(const ExperimentSpec& spec, Algorithm algorithm, std::size_t budget)
{
    std::optional<AlgorithmParams> base;
    if (spec.preset_table) {
        base = preset(algorithm, budget);
    }
    const auto it = spec.params.find(algorithm);
    const std::map<std::string, double> empty;
    const auto& explicit_values = it == spec.params.end() ? empty : it->second;
    if (!base) {
        std::string missing;
        for (const auto& f : param_fields(algorithm)) {
            if (!explicit_values.count(std::string(f.name))) {
                missing += (missing.empty() ? "" : ", ") + std::string(f.name);
            }
        }
        if (!missing.empty()) {
            throw ConfigError("no parameters for " + std::string(algorithm_id(algorithm)) + " at budget " +
                              std::to_string(budget) + " (no preset; missing " + missing + ")");
        }
        base = default_params(algorithm);
    }
    AlgorithmParams params = *base;
    try {
        for (const auto& [name, value] : explicit_values) {
            set_param(params, name, value);
        }
        validate(params);
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }
    return params;
}

/// Averaged anytime curve of one (algorithm, budget) cell plus per-run finals.
struct CellResult
{
    Algorithm algorithm = Algorithm::SimulatedAnnealing;
    std::size_t budget = 0;
    AlgorithmParams params;
    std::vector<double> mean;   ///< index k-1 holds call k
    std::vector<double> stddev; ///< sample standard deviation across runs
    std::vector<double> final_f1;
    std::vector<std::uint64_t> run_seeds;
    std::vector<std::size_t> max_calls; ///< per run, maximum over documents
    std::vector<std::vector<double>> run_curves; ///< per run corpus curve, index k-1 holds call k

    /// Per-run best F1 after `call` scorer calls.
    std::vector<double> at_call(std::size_t call) const
    {
        if (call < 1 || call > budget) {
            throw InvalidInput("at_call: call index outside 1..budget");
        }
        std::vector<double> values;
        values.reserve(run_curves.size());
        for (const auto& c : run_curves) {
            values.push_back(c[call - 1]);
        }
        return values;
    }
};

/// Joins every document into one, for corpus-wide budgets.
inline CorpusFile concatenate(const CorpusFile& corpus)
{
    std::vector<WordSlot> words;
    std::vector<std::optional<Sense>> gold;
    std::size_t sentence_offset = 0;
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        const Document& doc = corpus.documents[d];
        std::size_t last = 0;
        for (std::size_t i = 0; i < doc.size(); ++i) {
            WordSlot w = doc[i];
            if (w.sentence) {
                last = std::max(last, *w.sentence);
                w.sentence = *w.sentence + sentence_offset;
            }
            words.push_back(std::move(w));
            gold.push_back(corpus.golds[d][i]);
        }
        sentence_offset += last + 1;
    }
    CorpusFile out;
    bool indexed = std::all_of(corpus.documents.begin(), corpus.documents.end(),
                               [](const Document& d) { return d.has_sentences(); });
    if (!indexed) {
        for (auto& w : words) w.sentence.reset();
    }
    out.documents.emplace_back("corpus", std::move(words));
    out.golds.emplace_back(std::move(gold));
    return out;
}

/**
 * Runs one cell: `runs` seeded runs, each over every document with a fresh
 * scorer. A run's corpus curve is the per-call mean over documents; cells
 * average those curves pointwise. Seeds depend only on (base seed,
 * algorithm, budget, run, document), so output is independent of `jobs`.
 */
inline CellResult run_cell(const CorpusFile& corpus, Algorithm algorithm, const AlgorithmParams& params,
                           std::size_t budget, std::size_t runs, std::uint64_t base_seed, std::size_t jobs)
{
    corpus.validate();
    if (corpus.documents.empty()) {
        throw ConfigError("corpus has no documents");
    }
    const std::size_t docs = corpus.documents.size();
    CellResult cell;
    cell.algorithm = algorithm;
    cell.budget = budget;
    cell.params = params;
    cell.final_f1.resize(runs);
    cell.run_seeds.resize(runs);
    cell.max_calls.resize(runs);
    auto& curves = cell.run_curves;
    curves.resize(runs);

    parallel_for(runs, jobs, [&](std::size_t run) {
        const std::uint64_t run_seed = derive_seed(base_seed, static_cast<std::uint64_t>(algorithm), budget, run);
        std::vector<double> sum(budget, 0.0);
        std::size_t max_calls = 0;
        for (std::size_t d = 0; d < docs; ++d) {
            const RunOutcome out =
                run_once(corpus.documents[d], corpus.golds[d], params, budget, derive_seed(run_seed, d));
            if (out.calls > budget) {
                throw std::logic_error("scorer budget overrun");
            }
            max_calls = std::max(max_calls, out.calls);
            const auto values = step_values(out.trace, budget);
            for (std::size_t k = 0; k < budget; ++k) {
                sum[k] += values[k];
            }
        }
        for (auto& v : sum) {
            v /= static_cast<double>(docs);
        }
        cell.final_f1[run] = sum.back();
        cell.run_seeds[run] = run_seed;
        cell.max_calls[run] = max_calls;
        curves[run] = std::move(sum);
    });

    cell.mean.assign(budget, 0.0);
    cell.stddev.assign(budget, 0.0);
    for (std::size_t k = 0; k < budget; ++k) {
        double s = 0.0;
        for (std::size_t run = 0; run < runs; ++run) {
            s += curves[run][k];
        }
        const double m = s / static_cast<double>(runs);
        double ss = 0.0;
        for (std::size_t run = 0; run < runs; ++run) {
            const double d = curves[run][k] - m;
            ss += d * d;
        }
        cell.mean[k] = m;
        cell.stddev[k] = runs > 1 ? std::sqrt(ss / static_cast<double>(runs - 1)) : 0.0;
    }
    return cell;
}

/// Runs every (algorithm, budget) cell of the spec on an already loaded corpus.
inline std::vector<CellResult> run_experiment(const ExperimentSpec& spec, const CorpusFile& corpus)
{
    spec.validate();
    const CorpusFile searched = spec.budget_scope == BudgetScope::Corpus ? concatenate(corpus) : corpus;
    std::vector<CellResult> cells;
    for (Algorithm a : spec.algorithms) {
        for (std::size_t budget : spec.budgets) {
            cells.push_back(run_cell(searched, a, resolve_params(spec, a, budget), budget, spec.runs, spec.base_seed,
                                     spec.jobs));
        }
    }
    return cells;
}

inline std::vector<CellResult> run_experiment(const ExperimentSpec& spec)
{
    return run_experiment(spec, load_corpus(spec.corpus_path));
}

/// Head-to-head test on per-run final F1 samples.
inline UTestResult compare_at_budget(std::span<const double> a, std::span<const double> b, double alpha = 0.05)
{
    return mann_whitney_u(a, b, alpha);
}

/// Fixed six-decimal rendering with '.' as separator.
inline std::string format_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline std::string curve_file_name(const CellResult& cell)
{
    return std::string(algorithm_id(cell.algorithm)) + "_" + std::to_string(cell.budget) + ".csv";
}

inline std::string runs_file_name(const CellResult& cell)
{
    return std::string(algorithm_id(cell.algorithm)) + "_" + std::to_string(cell.budget) + "_runs.csv";
}

/// algorithm,budget,call,mean_f1,stddev_f1 for calls 1..budget.
inline std::string format_curve_csv(const CellResult& cell)
{
    std::string out = "algorithm,budget,call,mean_f1,stddev_f1\n";
    const std::string prefix = std::string(algorithm_id(cell.algorithm)) + "," + std::to_string(cell.budget) + ",";
    for (std::size_t k = 0; k < cell.mean.size(); ++k) {
        out += prefix + std::to_string(k + 1) + "," + format_real(cell.mean[k]) + "," + format_real(cell.stddev[k]) + "\n";
    }
    return out;
}

/// Per-run final scores, the input of `compare`.
inline std::string format_runs_csv(const CellResult& cell)
{
    std::string out = "algorithm,budget,run,seed,final_f1,max_calls\n";
    for (std::size_t r = 0; r < cell.final_f1.size(); ++r) {
        out += std::string(algorithm_id(cell.algorithm)) + "," + std::to_string(cell.budget) + "," + std::to_string(r) +
               "," + std::to_string(cell.run_seeds[r]) + "," + format_real(cell.final_f1[r]) + "," +
               std::to_string(cell.max_calls[r]) + "\n";
    }
    return out;
}

/// Final means per cell and two-sided U-test p-values against every other
/// algorithm at the same budget (blank against itself).
inline std::string format_summary_csv(const std::vector<CellResult>& cells, double alpha = 0.05)
{
    std::vector<Algorithm> algorithms;
    for (const auto& c : cells) {
        if (std::find(algorithms.begin(), algorithms.end(), c.algorithm) == algorithms.end()) {
            algorithms.push_back(c.algorithm);
        }
    }
    std::string out = "algorithm,budget,runs,final_mean_f1,final_stddev_f1";
    for (Algorithm a : algorithms) {
        out += ",p_vs_" + std::string(algorithm_id(a));
    }
    out += "\n";
    for (const auto& c : cells) {
        out += std::string(algorithm_id(c.algorithm)) + "," + std::to_string(c.budget) + "," +
               std::to_string(c.final_f1.size()) + "," + format_real(c.mean.back()) + "," + format_real(c.stddev.back());
        for (Algorithm a : algorithms) {
            out += ",";
            if (a == c.algorithm) {
                continue;
            }
            for (const auto& other : cells) {
                if (other.algorithm == a && other.budget == c.budget) {
                    out += format_real(compare_at_budget(c.final_f1, other.final_f1, alpha).p_value);
                    break;
                }
            }
        }
        out += "\n";
    }
    return out;
}

/// Plain `key = value` tuning report. Parameter lines use the experiment
/// config keys, so the report can be pasted into a `run` config.
inline std::string format_tune_report(const TuneResult& result, const TuneJob& job)
{
    const Algorithm a = job.space.algorithm;
    std::string out;
    out += "algorithm = " + std::string(algorithm_id(a)) + "\n";
    out += "budget = " + std::to_string(job.budget_per_run) + "\n";
    out += "runs_per_candidate = " + std::to_string(job.runs_per_candidate) + "\n";
    out += "tuning_documents = " + std::to_string(job.docs.size()) + "\n";
    out += "evaluated_candidates = " + std::to_string(result.evaluated_candidates) + "\n";
    out += "scorer_calls = " + std::to_string(result.scorer_calls) + "\n";
    out += "mean_f1 = " + format_real(result.mean_f1) + "\n";
    for (const auto& f : param_fields(a)) {
        out += std::string(algorithm_id(a)) + "." + std::string(f.name) + " = " +
               format_real(get_param(result.best_params, f.name)) + "\n";
    }
    return out;
}

/// One-row CSV: algorithm,budget,mean_f1,evaluated_candidates,<parameters...>
inline std::string format_tune_csv(const TuneResult& result, const TuneJob& job)
{
    const Algorithm a = job.space.algorithm;
    std::string header = "algorithm,budget,mean_f1,evaluated_candidates";
    std::string row = std::string(algorithm_id(a)) + "," + std::to_string(job.budget_per_run) + "," +
                      format_real(result.mean_f1) + "," + std::to_string(result.evaluated_candidates);
    for (const auto& f : param_fields(a)) {
        header += "," + std::string(f.name);
        row += "," + format_real(get_param(result.best_params, f.name));
    }
    return header + "\n" + row + "\n";
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write '" + path.string() + "'");
    }
    out << text;
}

/// Writes <algorithm>_<budget>.csv, <algorithm>_<budget>_runs.csv and summary.csv.
inline void write_experiment(const std::vector<CellResult>& cells, const std::string& output_dir, double alpha = 0.05)
{
    const std::filesystem::path dir(output_dir);
    std::filesystem::create_directories(dir);
    for (const auto& c : cells) {
        write_text_file(dir / curve_file_name(c), format_curve_csv(c));
        write_text_file(dir / runs_file_name(c), format_runs_csv(c));
    }
    write_text_file(dir / "summary.csv", format_summary_csv(cells, alpha));
}

/// Reads the final_f1 column of a runs CSV.
inline std::vector<double> read_final_f1(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(1, "empty CSV file");
    }
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    const auto col = std::find(header.begin(), header.end(), "final_f1");
    if (col == header.end()) {
        throw ParseError(1, "'" + path + "' has no final_f1 column (pass a *_runs.csv file)");
    }
    const auto index = static_cast<std::size_t>(col - header.begin());
    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t i = 0;
        std::optional<double> v;
        while (std::getline(ss, cell, ',')) {
            if (i++ == index) {
                try {
                    std::size_t used = 0;
                    v = std::stod(cell, &used);
                    if (used != cell.size()) v.reset();
                } catch (const std::exception&) {
                    v.reset();
                }
            }
        }
        if (!v) {
            throw ParseError(line_no, "bad final_f1 value in '" + path + "'");
        }
        values.push_back(*v);
    }
    if (values.empty()) {
        throw ParseError(line_no, "'" + path + "' holds no runs");
    }
    return values;
}

namespace detail
{

inline std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(std::string_view s)
{
    std::vector<std::string> items;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(',', start);
        auto item = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (!item.empty()) items.push_back(std::move(item));
        if (pos == std::string_view::npos) return items;
        start = pos + 1;
    }
}

inline double parse_number(std::size_t line, const std::string& key, const std::string& value)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used == value.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw ParseError(line, "'" + key + "' expects a number, got '" + value + "'");
}

inline std::uint64_t parse_count(std::size_t line, const std::string& key, const std::string& value)
{
    const auto v = parse_unsigned<std::uint64_t>(value);
    if (!v) throw ParseError(line, "'" + key + "' expects a non-negative integer, got '" + value + "'");
    return *v;
}

inline bool parse_bool(std::size_t line, const std::string& key, const std::string& value)
{
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ParseError(line, "'" + key + "' expects true or false, got '" + value + "'");
}

} // namespace detail

/**
 * Flat `key = value` experiment file. Recognized keys: corpus, algorithms
 * (comma list), budgets (comma list), runs, seed, out, preset_table,
 * budget_scope, jobs, alpha, and `<algorithm>.<parameter>` for explicit
 * parameter values (e.g. `sa.cooling_rate = 0.1`). `#` starts a comment line.
 */
inline ExperimentSpec parse_experiment_config(std::istream& in, ExperimentSpec spec = {})
{
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(line_no, "expected 'key = value'");
        }
        const std::string key = detail::trim(std::string_view(line).substr(0, eq));
        const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
        if (key == "corpus") {
            spec.corpus_path = value;
        } else if (key == "algorithms") {
            spec.algorithms.clear();
            for (const auto& id : detail::split_list(value)) spec.algorithms.push_back(parse_algorithm(id));
        } else if (key == "budgets") {
            spec.budgets.clear();
            for (const auto& b : detail::split_list(value)) spec.budgets.push_back(detail::parse_count(line_no, key, b));
        } else if (key == "runs") {
            spec.runs = detail::parse_count(line_no, key, value);
        } else if (key == "seed") {
            spec.base_seed = detail::parse_count(line_no, key, value);
        } else if (key == "out") {
            spec.output_dir = value;
        } else if (key == "preset_table") {
            spec.preset_table = detail::parse_bool(line_no, key, value);
        } else if (key == "budget_scope") {
            spec.budget_scope = parse_budget_scope(value);
        } else if (key == "jobs") {
            spec.jobs = detail::parse_count(line_no, key, value);
        } else if (key == "alpha") {
            spec.alpha = detail::parse_number(line_no, key, value);
        } else if (const auto dot = key.find('.'); dot != std::string::npos) {
            const Algorithm a = parse_algorithm(key.substr(0, dot));
            const std::string field = key.substr(dot + 1);
            AlgorithmParams probe = default_params(a);
            const double v = detail::parse_number(line_no, key, value);
            try {
                set_param(probe, field, v);
            } catch (const InvalidInput& e) {
                throw ParseError(line_no, e.what());
            }
            spec.params[a][field] = v;
        } else {
            throw ParseError(line_no, "unknown key '" + key + "'");
        }
    }
    return spec;
}

inline ExperimentSpec load_experiment_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    return parse_experiment_config(in);
}

} // namespace sensesearch
