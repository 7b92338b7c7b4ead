// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Run a subset with e.g. `acceptance 3 6`.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sensesearch/sensesearch.hpp>

#include "../oracles.hpp"

using namespace sensesearch;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const char* id(Algorithm a)
{
    return algorithm_id(a).data();
}

double mean_of(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// 1. f1 against a counting oracle, exact equality, under one second.
Outcome f1_oracle()
{
    Rng rng(1001);
    std::vector<std::vector<Sense>> cfgs;
    std::vector<std::vector<std::optional<Sense>>> golds;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 1 + rng.below(60);
        std::vector<Sense> cfg(n);
        std::vector<std::optional<Sense>> gold(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto k = static_cast<Sense>(1 + rng.below(6));
            cfg[i] = static_cast<Sense>(rng.below(k));
            if (!rng.bernoulli(0.2)) gold[i] = static_cast<Sense>(rng.below(k));
        }
        cfgs.push_back(std::move(cfg));
        golds.push_back(std::move(gold));
    }
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t mismatches = 0;
    for (std::size_t t = 0; t < cfgs.size(); ++t) {
        if (f1(Configuration(cfgs[t]), GoldStandard(golds[t])) != oracle::f1_by_counting(cfgs[t], golds[t])) {
            ++mismatches;
        }
    }
    const double elapsed = seconds_since(t0);
    return {mismatches == 0 && elapsed < 1.0, fmt("%zu/1000 mismatches, %.3f s", mismatches, elapsed)};
}

// 2. Budget accounting over budgets {200, 800, 2000}, 20 seeds, 4 algorithms.
Outcome budget_accounting()
{
    const auto corpus = generate_corpus(1, 100, 5, 10, 2);
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t violations = 0;
    std::size_t runs = 0;
    for (Algorithm a : kAllAlgorithms) {
        for (std::size_t budget : {200u, 800u, 2000u}) {
            for (std::uint64_t seed = 0; seed < 20; ++seed) {
                BudgetedScorer scorer(corpus.golds[0], budget);
                const auto best = run_algorithm(corpus.documents[0], scorer, *preset(a, budget), seed);
                ++runs;
                if (scorer.calls() > budget || !scorer.best_configuration() || best != *scorer.best_configuration()) {
                    ++violations;
                }
            }
        }
    }
    const double elapsed = seconds_since(t0);
    return {violations == 0 && elapsed < 10.0, fmt("%zu/%zu runs violate, %.2f s", violations, runs, elapsed)};
}

// 3. Exhaustive optimum reached at budget 16000 with the 4000-call presets.
Outcome exhaustive_equivalence()
{
    const auto corpus = generate_corpus(10, 6, 4, 3, 2024);
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    std::map<Algorithm, std::size_t> worst;
    for (Algorithm a : kAllAlgorithms) worst[a] = 100;
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        const Document& doc = corpus.documents[d];
        if (doc.search_space_size() > 4096) {
            return {false, "fixture exceeds 4096 configurations"};
        }
        std::vector<Sense> counts;
        for (const auto& w : doc.words()) counts.push_back(w.sense_count);
        const double optimum = oracle::exhaustive_optimum(counts, corpus.golds[d].senses());
        for (Algorithm a : kAllAlgorithms) {
            const auto params = *preset(a, 4000);
            std::size_t hits = 0;
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                const double got = run_once(doc, corpus.golds[d], params, 16000, derive_seed(seed, d)).best_f1;
                hits += a == Algorithm::Bat ? got >= 0.85 * optimum : got == optimum;
            }
            worst[a] = std::min(worst[a], hits);
            pass = pass && hits >= (a == Algorithm::Bat ? 90u : 95u);
        }
    }
    const double elapsed = seconds_since(t0);
    pass = pass && elapsed < 300.0;
    for (Algorithm a : kAllAlgorithms) detail += fmt("%s min %zu/100, ", id(a), worst[a]);
    return {pass, detail + fmt("%.1f s", elapsed)};
}

// 4. Early-budget ordering and late catch-up with tuned parameters.
Outcome early_ordering()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto full = generate_corpus(3, 120, 9, 10, 44);
    const auto split = split_tuning_subset(full, 2);
    const Algorithm algorithms[] = {Algorithm::SimulatedAnnealing, Algorithm::Genetic, Algorithm::Cuckoo};
    std::map<Algorithm, std::vector<double>> at100;
    std::map<Algorithm, double> at16000;
    for (Algorithm a : algorithms) {
        std::map<std::size_t, AlgorithmParams> tuned;
        for (std::size_t budget : {200u, 4000u}) {
            TuneJob job;
            job.space = ParamSpace::defaults(a);
            job.budget_per_run = budget;
            job.runs_per_candidate = 20;
            job.docs = split.tuning.documents;
            job.golds = split.tuning.golds;
            job.meta_iterations = 40;
            job.meta_nests = 4;
            job.meta_destroyed = 1;
            job.seed = 9;
            tuned[budget] = tune(job).best_params;
        }
        const auto early = run_cell(split.evaluation, a, tuned[200], 200, 100, 1, 1);
        at100[a] = early.at_call(100);
        if (a != Algorithm::Genetic) {
            at16000[a] = run_cell(split.evaluation, a, tuned[4000], 16000, 100, 1, 1).mean.back();
        }
    }
    const auto csa = Algorithm::Cuckoo;
    const auto vs_ga = mann_whitney_u(at100[csa], at100[Algorithm::Genetic]);
    const auto vs_sa = mann_whitney_u(at100[csa], at100[Algorithm::SimulatedAnnealing]);
    const double m_csa = mean_of(at100[csa]);
    const double m_ga = mean_of(at100[Algorithm::Genetic]);
    const double m_sa = mean_of(at100[Algorithm::SimulatedAnnealing]);
    const double gap = std::abs(at16000[Algorithm::SimulatedAnnealing] - at16000[csa]);
    const double elapsed = seconds_since(t0);
    const bool pass = m_csa > m_ga && vs_ga.p_value < 0.05 && m_csa > m_sa && vs_sa.p_value < 0.05 && gap <= 0.02 &&
                      elapsed < 900.0;
    return {pass, fmt("@100 csa %.4f ga %.4f (p %.2g) sa %.4f (p %.2g); @16000 sa %.4f csa %.4f; %.1f s", m_csa, m_ga,
                      vs_ga.p_value, m_sa, vs_sa.p_value, at16000[Algorithm::SimulatedAnnealing], at16000[csa], elapsed)};
}

// 5. BA stops on its own before the budget is spent.
Outcome bat_convergence()
{
    const auto corpus = generate_corpus(1, 100, 9, 10, 5);
    const BaParams params{10, 0.0, 1.0, 10.0, 10.0, 0.1, 0.9};
    const std::size_t budget = 20000;
    std::size_t early = 0;
    std::size_t max_calls = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = run_once(corpus.documents[0], corpus.golds[0], params, budget, seed);
        early += r.calls < budget;
        max_calls = std::max(max_calls, r.calls);
    }
    return {early == 20, fmt("%zu/20 seeds stopped early, max %zu of %zu calls", early, max_calls, budget)};
}

// 6. Lévy sampler median and support.
Outcome levy_sampler()
{
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(6);
    const LevyParams p{0.0, 1.0};
    std::vector<double> draws(1000000);
    std::size_t at_or_below = 0;
    for (auto& d : draws) {
        d = sample_levy(p, rng);
        at_or_below += d <= p.location;
    }
    std::nth_element(draws.begin(), draws.begin() + 500000, draws.end());
    const double median = draws[500000];
    const double rel = std::abs(median - 2.1981) / 2.1981;
    const double elapsed = seconds_since(t0);
    return {rel <= 0.02 && at_or_below == 0 && elapsed < 5.0,
            fmt("median %.4f (%.2f%% off), %zu draws <= location, %.2f s", median, 100 * rel, at_or_below, elapsed)};
}

// 7. Exact U test against enumeration; U_A + U_B = n_A n_B.
Outcome mann_whitney()
{
    Rng rng(77);
    auto sample = [&](std::size_t n) {
        std::vector<double> v(n);
        const int levels = 2 + static_cast<int>(rng.below(10));
        for (auto& x : v) x = static_cast<double>(rng.below(static_cast<std::uint64_t>(levels)));
        return v;
    };
    std::size_t mismatches = 0;
    std::set<std::pair<std::size_t, std::size_t>> sizes;
    for (int t = 0; t < 100; ++t) {
        const std::size_t na = 1 + rng.below(16);
        const std::size_t nb = 1 + rng.below(std::max<std::size_t>(1, 64 / na));
        const auto a = sample(na);
        const auto b = sample(nb);
        sizes.insert({na, nb});
        const auto r = mann_whitney_u(a, b);
        if (!r.exact || std::abs(r.p_value - oracle::exact_u_p_by_enumeration(a, b)) > 1e-12 ||
            r.u_a != oracle::u_a(a, b)) {
            ++mismatches;
        }
    }
    // Every size pair with n_A * n_B <= 64, one random input each.
    for (std::size_t na = 1; na <= 64; ++na) {
        for (std::size_t nb = 1; na * nb <= 64; ++nb) {
            const auto a = sample(na);
            const auto b = sample(nb);
            const auto r = mann_whitney_u(a, b);
            if (std::abs(r.p_value - oracle::exact_u_p_by_enumeration(a, b)) > 1e-12) ++mismatches;
            sizes.insert({na, nb});
        }
    }
    std::size_t sum_failures = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto a = sample(1 + rng.below(120));
        const auto b = sample(1 + rng.below(120));
        const auto r = mann_whitney_u(a, b);
        if (r.u_a + r.u_b != static_cast<double>(a.size() * b.size())) ++sum_failures;
    }
    return {mismatches == 0 && sum_failures == 0,
            fmt("%zu p-value mismatches over %zu size pairs, %zu U-sum failures", mismatches, sizes.size(), sum_failures)};
}

std::map<std::string, std::string> read_dir(const std::filesystem::path& dir)
{
    std::map<std::string, std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        std::ifstream in(e.path(), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        files[e.path().filename().string()] = ss.str();
    }
    return files;
}

// 8. Byte-identical CSVs, sequential and parallel.
Outcome determinism()
{
    const auto root = std::filesystem::temp_directory_path() / "sensesearch_acceptance_determinism";
    std::filesystem::remove_all(root);
    std::filesystem::create_directories(root);
    const auto corpus_path = (root / "corpus.txt").string();
    save_corpus(generate_corpus(3, 40, 6, 10, 8), corpus_path);

    ExperimentSpec spec;
    spec.corpus_path = corpus_path;
    spec.algorithms = {kAllAlgorithms[0], kAllAlgorithms[1], kAllAlgorithms[2], kAllAlgorithms[3]};
    spec.budgets = {200, 800};
    spec.runs = 12;
    spec.base_seed = 2024;
    spec.preset_table = true;

    std::vector<std::map<std::string, std::string>> outputs;
    for (std::size_t jobs : {1u, 1u, 4u}) {
        spec.jobs = jobs;
        const auto dir = root / ("jobs" + std::to_string(jobs) + "_" + std::to_string(outputs.size()));
        write_experiment(run_experiment(spec), dir.string(), spec.alpha);
        outputs.push_back(read_dir(dir));
    }
    const bool same = outputs[0] == outputs[1] && outputs[0] == outputs[2];
    std::filesystem::remove_all(root);
    return {same && outputs[0].size() == 17, fmt("%zu files per execution, identical: %s", outputs[0].size(),
                                                 same ? "yes" : "no")};
}

// 9. Tuned SA beats default SA on a 50-word corpus at budget 200.
Outcome tuner_sanity()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto corpus = generate_corpus(1, 50, 9, 10, 99);
    TuneJob job;
    job.space = ParamSpace::defaults(Algorithm::SimulatedAnnealing);
    job.budget_per_run = 200;
    job.runs_per_candidate = 30;
    job.docs = corpus.documents;
    job.golds = corpus.golds;
    job.meta_iterations = 50;
    job.meta_nests = 4;
    job.meta_destroyed = 1;
    job.seed = 3;
    const auto result = tune(job);

    // Fresh seeds, and a different candidate index per side so the samples are independent.
    TuneJob fresh = job;
    fresh.seed = 12345;
    fresh.runs_per_candidate = 100;
    auto point_of = [&](const AlgorithmParams& p) {
        std::vector<double> point;
        for (const auto& d : job.space.dimensions) point.push_back(get_param(p, d.name));
        return point;
    };
    const auto baseline = evaluate_candidate(fresh, point_of(default_params(Algorithm::SimulatedAnnealing)), 0);
    const auto tuned = evaluate_candidate(fresh, point_of(result.best_params), 1);
    const auto u = mann_whitney_u(tuned.sample, baseline.sample);
    const double elapsed = seconds_since(t0);
    return {tuned.mean > baseline.mean && u.p_value < 0.05 && elapsed < 600.0,
            fmt("default %.4f, tuned %.4f (cooling %.3f, %g iterations), p %.2g, %.1f s", baseline.mean, tuned.mean,
                get_param(result.best_params, "cooling_rate"), get_param(result.best_params, "iterations_per_cycle"),
                u.p_value, elapsed)};
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"f1 matches counting oracle", f1_oracle},
        {"budget accounting", budget_accounting},
        {"exhaustive optimum reached", exhaustive_equivalence},
        {"early-budget ordering", early_ordering},
        {"bat swarm converges early", bat_convergence},
        {"levy sampler median", levy_sampler},
        {"mann-whitney exact branch", mann_whitney},
        {"byte-identical output", determinism},
        {"tuner beats defaults", tuner_sanity},
    };
    std::set<std::size_t> selected;
    for (int i = 1; i < argc; ++i) selected.insert(static_cast<std::size_t>(std::atoi(argv[i])));

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        if (!selected.empty() && !selected.count(k + 1)) continue;
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
