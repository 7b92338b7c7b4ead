// Command-line front end: experiments, parameter tuning, corpus generation,
// one-shot scoring and head-to-head U tests.

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <sensesearch/sensesearch.hpp>

namespace ss = sensesearch;

namespace
{

struct RunOptions
{
    std::string config;
    std::string corpus;
    std::vector<std::size_t> budgets;
    std::size_t runs = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> algorithms;
    std::string out;
    bool preset_table = false;
    std::size_t jobs = 1;
    std::string budget_scope;
};

int run_command(const RunOptions& o, const CLI::App& cmd)
{
    ss::ExperimentSpec spec = o.config.empty() ? ss::ExperimentSpec{} : ss::load_experiment_config(o.config);
    if (cmd.count("--corpus")) spec.corpus_path = o.corpus;
    if (cmd.count("--budget")) spec.budgets = o.budgets;
    if (cmd.count("--runs")) spec.runs = o.runs;
    if (cmd.count("--seed")) spec.base_seed = o.seed;
    if (cmd.count("--preset-table")) spec.preset_table = true;
    if (cmd.count("--jobs")) spec.jobs = o.jobs;
    if (cmd.count("--budget-scope")) spec.budget_scope = ss::parse_budget_scope(o.budget_scope);
    if (cmd.count("--algo")) {
        spec.algorithms.clear();
        for (const auto& id : o.algorithms) spec.algorithms.push_back(ss::parse_algorithm(id));
    }
    if (cmd.count("--out")) {
        spec.output_dir = o.out;
    } else if (const char* env = std::getenv("SENSESEARCH_OUT"); env && *env) {
        spec.output_dir = env;
    }
    if (spec.corpus_path.empty()) {
        throw ss::ConfigError("no corpus given (--corpus or 'corpus' in the config file)");
    }

    const auto cells = ss::run_experiment(spec);
    ss::write_experiment(cells, spec.output_dir, spec.alpha);
    for (const auto& c : cells) {
        std::cout << ss::algorithm_id(c.algorithm) << " budget " << c.budget << ": final mean F1 "
                  << ss::format_real(c.mean.back()) << " over " << c.final_f1.size() << " runs\n";
    }
    std::cout << "wrote " << cells.size() << " curves to " << spec.output_dir << "\n";
    return 0;
}

struct TuneOptions
{
    std::string corpus;
    std::string algorithm;
    std::size_t budget = 200;
    std::size_t runs = 20;
    std::size_t meta_iterations = 50;
    std::size_t meta_nests = 4;
    std::size_t meta_destroyed = 1;
    std::size_t tuning_sentences = 2;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    double alpha = 0.05;
    std::string out;
};

int tune_command(const TuneOptions& o)
{
    const ss::CorpusFile corpus = ss::load_corpus(o.corpus);
    ss::TuneJob job;
    job.space = ss::ParamSpace::defaults(ss::parse_algorithm(o.algorithm));
    job.budget_per_run = o.budget;
    job.runs_per_candidate = o.runs;
    job.meta_iterations = o.meta_iterations;
    job.meta_nests = o.meta_nests;
    job.meta_destroyed = o.meta_destroyed;
    job.seed = o.seed;
    job.jobs = o.jobs;
    job.alpha = o.alpha;
    if (o.tuning_sentences > 0) {
        const auto split = ss::split_tuning_subset(corpus, o.tuning_sentences);
        for (const auto& name : split.exhausted_documents) {
            std::cerr << "warning: document '" << name << "' is used entirely for tuning\n";
        }
        job.docs = split.tuning.documents;
        job.golds = split.tuning.golds;
    } else {
        job.docs = corpus.documents;
        job.golds = corpus.golds;
    }

    const ss::TuneResult result = ss::tune(job);
    const std::string report = ss::format_tune_report(result, job);
    std::cout << report;
    if (!o.out.empty()) {
        const std::filesystem::path dir(o.out);
        std::filesystem::create_directories(dir);
        const std::string stem = "tune_" + o.algorithm + "_" + std::to_string(o.budget);
        ss::write_text_file(dir / (stem + ".txt"), report);
        ss::write_text_file(dir / (stem + ".csv"), ss::format_tune_csv(result, job));
    }
    return 0;
}

struct GenOptions
{
    std::size_t docs = 5;
    std::size_t words = 100;
    ss::Sense max_senses = 5;
    std::size_t sentence_length = 20;
    std::uint64_t seed = 0;
    std::string out;
};

int gen_command(const GenOptions& o)
{
    const auto corpus = ss::generate_corpus(o.docs, o.words, o.max_senses, o.sentence_length, o.seed);
    if (o.out.empty()) {
        std::cout << ss::format_corpus(corpus);
    } else {
        ss::save_corpus(corpus, o.out);
    }
    return 0;
}

int score_command(const std::string& corpus_path, const std::string& assignments_path)
{
    const ss::CorpusFile corpus = ss::load_corpus(corpus_path);
    std::ifstream in(assignments_path);
    if (!in) {
        throw ss::ConfigError("cannot open '" + assignments_path + "'");
    }
    const auto configurations = ss::parse_configurations(in, corpus);
    double sum = 0.0;
    std::cout << "document,f1\n";
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        const double f = ss::f1(configurations[d], corpus.golds[d]);
        sum += f;
        std::cout << corpus.documents[d].name() << "," << ss::format_real(f) << "\n";
    }
    std::cout << "mean," << ss::format_real(sum / static_cast<double>(corpus.documents.size())) << "\n";
    return 0;
}

int compare_command(const std::string& a, const std::string& b, double alpha)
{
    const auto sa = ss::read_final_f1(a);
    const auto sb = ss::read_final_f1(b);
    const auto r = ss::compare_at_budget(sa, sb, alpha);
    double ma = 0.0;
    double mb = 0.0;
    for (double v : sa) ma += v;
    for (double v : sb) mb += v;
    std::cout << "n_a = " << sa.size() << "\n"
              << "n_b = " << sb.size() << "\n"
              << "mean_a = " << ss::format_real(ma / static_cast<double>(sa.size())) << "\n"
              << "mean_b = " << ss::format_real(mb / static_cast<double>(sb.size())) << "\n"
              << "u = " << ss::format_real(r.u_statistic) << "\n"
              << "p_value = " << ss::format_real(r.p_value) << "\n"
              << "method = " << (r.exact ? "exact" : "normal") << "\n"
              << "significant = " << (r.significant ? "true" : "false") << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Stochastic global search for sense assignment: SA, GA, bat and cuckoo search"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment and write anytime F1 curves as CSV");
    run_cmd->add_option("--config", run.config, "Key-value experiment file")->check(CLI::ExistingFile);
    run_cmd->add_option("--corpus", run.corpus, "Corpus file");
    run_cmd->add_option("--budget", run.budgets, "Scorer-call budget (repeatable)");
    run_cmd->add_option("--runs", run.runs, "Seeded runs per algorithm and budget");
    run_cmd->add_option("--seed", run.seed, "Base seed");
    run_cmd->add_option("--algo", run.algorithms, "Algorithm: sa, ga, ba, csa (repeatable)");
    run_cmd->add_option("--out", run.out, "Output directory (overrides SENSESEARCH_OUT)");
    run_cmd->add_flag("--preset-table", run.preset_table, "Use the shipped parameter rows for 200/800/2000/4000 calls");
    run_cmd->add_option("--jobs", run.jobs, "Worker threads")->check(CLI::PositiveNumber);
    run_cmd->add_option("--budget-scope", run.budget_scope, "document or corpus");

    TuneOptions tune;
    auto* tune_cmd = app.add_subcommand("tune", "Estimate parameters with a cuckoo search over the parameter box");
    tune_cmd->add_option("--corpus", tune.corpus, "Corpus file")->required();
    tune_cmd->add_option("--algo", tune.algorithm, "Algorithm: sa, ga, ba, csa")->required();
    tune_cmd->add_option("--budget", tune.budget, "Scorer-call budget per run")->capture_default_str();
    tune_cmd->add_option("--runs", tune.runs, "Runs per candidate")->capture_default_str();
    tune_cmd->add_option("--meta-iterations", tune.meta_iterations, "Meta-search iterations")->capture_default_str();
    tune_cmd->add_option("--meta-nests", tune.meta_nests, "Meta-search nests")->capture_default_str();
    tune_cmd->add_option("--meta-destroyed", tune.meta_destroyed, "Worst meta nests regenerated per iteration")->capture_default_str();
    tune_cmd->add_option("--tuning-sentences", tune.tuning_sentences,
                         "Leading sentences per document used for tuning (0 = whole corpus)")->capture_default_str();
    tune_cmd->add_option("--seed", tune.seed, "Job seed");
    tune_cmd->add_option("--jobs", tune.jobs, "Worker threads")->check(CLI::PositiveNumber);
    tune_cmd->add_option("--alpha", tune.alpha, "U-test significance level")->capture_default_str();
    tune_cmd->add_option("--out", tune.out, "Directory for tune_<algo>_<budget>.txt/.csv");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen-corpus", "Generate a synthetic sense-annotated corpus");
    gen_cmd->add_option("--docs", gen.docs, "Documents")->capture_default_str()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--words", gen.words, "Words per document")->capture_default_str()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--max-senses", gen.max_senses, "Sense counts are uniform in [1, max]")->capture_default_str()
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--sentence-length", gen.sentence_length, "Words per sentence")->capture_default_str()
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen.seed, "Seed");
    gen_cmd->add_option("--out", gen.out, "Output file (default: stdout)");

    std::string score_corpus;
    std::string score_assignments;
    auto* score_cmd = app.add_subcommand("score", "F1 of sense assignments against the corpus gold standard");
    score_cmd->add_option("--corpus", score_corpus, "Corpus file")->required();
    score_cmd->add_option("--assignments", score_assignments, "Lines of '<document> <sense> <sense> ...'")->required();

    std::string compare_a;
    std::string compare_b;
    double compare_alpha = 0.05;
    auto* compare_cmd = app.add_subcommand("compare", "Mann-Whitney U test between two *_runs.csv files");
    compare_cmd->add_option("a", compare_a, "First runs CSV")->required();
    compare_cmd->add_option("b", compare_b, "Second runs CSV")->required();
    compare_cmd->add_option("--alpha", compare_alpha, "Significance level")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run_cmd) return run_command(run, *run_cmd);
        if (*tune_cmd) return tune_command(tune);
        if (*gen_cmd) return gen_command(gen);
        if (*score_cmd) return score_command(score_corpus, score_assignments);
        if (*compare_cmd) return compare_command(compare_a, compare_b, compare_alpha);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
