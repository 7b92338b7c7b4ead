#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "levy.hpp"
#include "parallel.hpp"
#include "params.hpp"
#include "run.hpp"
#include "stats.hpp"

namespace sensesearch
{

struct ParamDimension
{
    std::string name;
    double lower = 0.0;
    double upper = 0.0;
    bool integer = false;

    bool pinned() const noexcept { return lower == upper; }
};

/// Search box over one algorithm's parameters. Unlisted parameters keep
/// their default_params() value.
struct ParamSpace
{
    Algorithm algorithm = Algorithm::SimulatedAnnealing;
    std::vector<ParamDimension> dimensions;

    /// Boxes wide enough to contain the shipped preset rows.
    static ParamSpace defaults(Algorithm a)
    {
        switch (a) {
        case Algorithm::SimulatedAnnealing:
            return {a, {{"cooling_rate", 0.01, 0.99, false}, {"iterations_per_cycle", 1, 200, true}}};
        case Algorithm::Genetic:
            return {a,
                    {{"population_size", 2, 100, true}, {"crossover_rate", 0, 1, false}, {"mutation_rate", 0, 0.2, false}}};
        case Algorithm::Bat:
            return {a,
                    {{"bat_count", 1, 60, true},
                     {"min_frequency", 0, 100, false},
                     {"max_frequency", 0, 100, false},
                     {"min_loudness", 0, 40, false},
                     {"max_loudness", 0, 40, false},
                     {"alpha", 0.01, 1, false},
                     {"gamma", 0.01, 1, false}}};
        case Algorithm::Cuckoo:
            return {a,
                    {{"nest_count", 1, 20, true},
                     {"destroyed_per_iteration", 0, 19, true},
                     {"levy_location", 0, 20, false},
                     {"levy_scale", 0.01, 5, false}}};
        }
        return {};
    }

    void validate() const
    {
        AlgorithmParams probe = default_params(algorithm);
        for (const auto& d : dimensions) {
            if (!(d.lower <= d.upper) || !std::isfinite(d.lower) || !std::isfinite(d.upper)) {
                throw InvalidInput("parameter box for '" + d.name + "' is empty");
            }
            set_param(probe, d.name, d.lower); // throws on unknown names
        }
    }

    bool contains(std::span<const double> point) const
    {
        if (point.size() != dimensions.size()) {
            return false;
        }
        for (std::size_t i = 0; i < point.size(); ++i) {
            const auto& d = dimensions[i];
            if (!(point[i] >= d.lower && point[i] <= d.upper)) {
                return false;
            }
            if (d.integer && point[i] != std::round(point[i])) {
                return false;
            }
        }
        return true;
    }

    /// Clamps into the box and rounds integer coordinates.
    std::vector<double> snap(std::span<const double> point) const
    {
        std::vector<double> out(point.begin(), point.end());
        for (std::size_t i = 0; i < out.size() && i < dimensions.size(); ++i) {
            const auto& d = dimensions[i];
            out[i] = std::clamp(out[i], d.lower, d.upper);
            if (d.integer) {
                out[i] = std::clamp(std::round(out[i]), std::ceil(d.lower), std::floor(d.upper));
            }
        }
        return out;
    }

    /**
     * Maps a point to a valid parameter set. Swapped min/max pairs are put
     * back in order and CSA's destroyed count is capped below the nest count.
     */
    AlgorithmParams decode(std::span<const double> point) const
    {
        if (!contains(point)) {
            throw InvalidInput("parameter point lies outside the search box");
        }
        AlgorithmParams params = default_params(algorithm);
        for (std::size_t i = 0; i < point.size(); ++i) {
            set_param(params, dimensions[i].name, point[i]);
        }
        if (auto* ba = std::get_if<BaParams>(&params)) {
            if (ba->min_frequency > ba->max_frequency) std::swap(ba->min_frequency, ba->max_frequency);
            if (ba->min_loudness > ba->max_loudness) std::swap(ba->min_loudness, ba->max_loudness);
        }
        if (auto* csa = std::get_if<CsaParams>(&params)) {
            csa->destroyed_per_iteration = std::min(csa->destroyed_per_iteration, csa->nest_count - 1);
        }
        if (auto* ga = std::get_if<GaParams>(&params)) {
            ga->population_size = std::max<std::size_t>(ga->population_size, 2);
        }
        validate_params(params);
        return params;
    }

private:
    static void validate_params(const AlgorithmParams& p) { sensesearch::validate(p); }
};

struct TuneJob
{
    ParamSpace space;
    std::size_t budget_per_run = 200;
    std::size_t runs_per_candidate = 20;
    std::vector<Document> docs;
    std::vector<GoldStandard> golds;
    std::size_t meta_iterations = 50;
    std::size_t meta_nests = 1;
    std::size_t meta_destroyed = 0;
    /// Step length as a fraction of each dimension's range.
    LevyParams meta_levy{0.0, 0.02};
    double alpha = 0.05;
    /// Mean gain that wins without a significant U test.
    double slack = 0.01;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;

    void validate() const
    {
        space.validate();
        if (budget_per_run == 0) throw InvalidInput("tune: budget per run must be positive");
        if (runs_per_candidate < 2) throw InvalidInput("tune: at least two runs per candidate are needed");
        if (docs.empty() || docs.size() != golds.size()) throw InvalidInput("tune: need aligned tuning documents");
        for (std::size_t i = 0; i < docs.size(); ++i) {
            if (docs[i].empty()) throw InvalidInput("tune: empty tuning document");
            golds[i].validate(docs[i]);
        }
        if (meta_nests == 0) throw InvalidInput("tune: need at least one meta nest");
        if (meta_destroyed >= meta_nests && !(meta_nests == 1 && meta_destroyed == 0)) {
            throw InvalidInput("tune: must keep at least one meta nest per iteration");
        }
        meta_levy.validate();
        if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("tune: alpha must lie in (0, 1)");
    }
};

struct CandidateEvaluation
{
    std::vector<double> point;
    /// Per run: unweighted mean over tuning documents of the best F1.
    std::vector<double> sample;
    double mean = 0.0;
    std::size_t scorer_calls = 0;
};

/// Runs the candidate runs_per_candidate times on every tuning document.
/// Seeds derive from (job seed, candidate index, run, document).
inline CandidateEvaluation evaluate_candidate(const TuneJob& job, std::span<const double> point,
                                              std::size_t candidate_index = 0)
{
    const AlgorithmParams params = job.space.decode(point);
    const std::size_t runs = job.runs_per_candidate;
    const std::size_t docs = job.docs.size();
    std::vector<double> f1s(runs * docs);
    std::vector<std::size_t> calls(runs * docs);
    parallel_for(runs * docs, job.jobs, [&](std::size_t k) {
        const std::size_t run = k / docs;
        const std::size_t doc = k % docs;
        const auto outcome = run_once(job.docs[doc], job.golds[doc], params, job.budget_per_run,
                                      derive_seed(job.seed, candidate_index, run, doc));
        f1s[k] = outcome.best_f1;
        calls[k] = outcome.calls;
    });

    CandidateEvaluation eval;
    eval.point.assign(point.begin(), point.end());
    eval.sample.resize(runs);
    for (std::size_t run = 0; run < runs; ++run) {
        double sum = 0.0;
        for (std::size_t doc = 0; doc < docs; ++doc) {
            sum += f1s[run * docs + doc];
        }
        eval.sample[run] = sum / static_cast<double>(docs);
    }
    eval.mean = std::accumulate(eval.sample.begin(), eval.sample.end(), 0.0) / static_cast<double>(runs);
    eval.scorer_calls = std::accumulate(calls.begin(), calls.end(), std::size_t{0});
    return eval;
}

struct TuneResult
{
    AlgorithmParams best_params;
    std::vector<double> best_point;
    double mean_f1 = 0.0;
    std::vector<double> sample_f1s;
    std::size_t evaluated_candidates = 0;
    std::size_t scorer_calls = 0;
    /// Best nest mean after initialization and after each meta-iteration.
    std::vector<double> best_mean_history;
};

/**
 * Continuous cuckoo search over the parameter box.
 *
 * A challenger is a clone of a random nest with every free coordinate moved
 * by a signed Lévy step (magnitude sample_levy(meta_levy) times the range).
 * It replaces a different random nest (the same one when meta_nests == 1)
 * iff its mean is higher and the U test is significant, or its mean is
 * higher by more than job.slack. The meta_destroyed worst nests are then
 * regenerated at random points.
 */
inline TuneResult tune(const TuneJob& job)
{
    job.validate();
    const ParamSpace& space = job.space;
    Rng rng(derive_seed(job.seed, 0x7475'6e65ULL));
    std::size_t evaluated = 0;
    std::size_t calls = 0;

    auto evaluate = [&](const std::vector<double>& point) {
        CandidateEvaluation e = evaluate_candidate(job, point, evaluated++);
        calls += e.scorer_calls;
        return e;
    };
    auto random_point = [&]() {
        std::vector<double> p(space.dimensions.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            const auto& d = space.dimensions[i];
            p[i] = d.pinned() ? d.lower : rng.uniform(d.lower, d.upper);
        }
        return space.snap(p);
    };
    auto sort_nests = [](std::vector<CandidateEvaluation>& nests) {
        std::stable_sort(nests.begin(), nests.end(),
                         [](const CandidateEvaluation& a, const CandidateEvaluation& b) { return a.mean < b.mean; });
    };

    std::vector<CandidateEvaluation> nests;
    nests.reserve(job.meta_nests);
    for (std::size_t k = 0; k < job.meta_nests; ++k) {
        nests.push_back(evaluate(random_point()));
    }
    sort_nests(nests);

    TuneResult result;
    result.best_mean_history.push_back(nests.back().mean);

    bool all_pinned = std::all_of(space.dimensions.begin(), space.dimensions.end(),
                                  [](const ParamDimension& d) { return d.pinned(); });
    for (std::size_t it = 0; it < job.meta_iterations && !all_pinned; ++it) {
        const std::size_t n = nests.size();
        const std::size_t i = rng.below(n);
        std::vector<double> point = nests[i].point;
        for (std::size_t d = 0; d < point.size(); ++d) {
            const auto& dim = space.dimensions[d];
            if (dim.pinned()) {
                continue;
            }
            const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
            point[d] += sign * sample_levy(job.meta_levy, rng) * (dim.upper - dim.lower);
        }
        CandidateEvaluation challenger = evaluate(space.snap(point));

        std::size_t j = i;
        if (n > 1) {
            j = rng.below(n - 1);
            if (j >= i) {
                ++j;
            }
        }
        const double gain = challenger.mean - nests[j].mean;
        if (gain > 0.0) {
            const auto test = mann_whitney_u(challenger.sample, nests[j].sample, job.alpha);
            if (test.significant || gain > job.slack) {
                nests[j] = std::move(challenger);
            }
        }
        sort_nests(nests);
        for (std::size_t k = 0; k < job.meta_destroyed; ++k) {
            nests[k] = evaluate(random_point());
        }
        if (job.meta_destroyed > 0) {
            sort_nests(nests);
        }
        result.best_mean_history.push_back(nests.back().mean);
    }

    const CandidateEvaluation& best = nests.back();
    result.best_params = space.decode(best.point);
    result.best_point = best.point;
    result.mean_f1 = best.mean;
    result.sample_f1s = best.sample;
    result.evaluated_candidates = evaluated;
    result.scorer_calls = calls;
    return result;
}

/// Tuning and evaluation halves of a corpus.
struct CorpusSplit
{
    CorpusFile tuning;
    CorpusFile evaluation;
    /// Documents that had nothing left for evaluation and were dropped from it.
    std::vector<std::string> exhausted_documents;
};

/**
 * Moves the first `sentences_per_doc` sentences of every document (with the
 * matching gold entries) into the tuning corpus; the rest is kept for
 * evaluation. Every word lands on exactly one side.
 */
inline CorpusSplit split_tuning_subset(const CorpusFile& corpus, std::size_t sentences_per_doc)
{
    corpus.validate();
    if (sentences_per_doc == 0) {
        throw InvalidInput("split: sentences per document must be positive");
    }
    CorpusSplit split;
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        const Document& doc = corpus.documents[d];
        const GoldStandard& gold = corpus.golds[d];
        if (!doc.has_sentences()) {
            throw InvalidInput("split: document '" + doc.name() + "' has no sentence boundaries");
        }
        std::size_t seen = 0;
        std::size_t cut = 0;
        while (cut < doc.size()) {
            if (cut == 0 || *doc[cut].sentence != *doc[cut - 1].sentence) {
                if (++seen > sentences_per_doc) {
                    break;
                }
            }
            ++cut;
        }
        auto slice = [&](std::size_t from, std::size_t to, CorpusFile& into) {
            std::vector<WordSlot> words(doc.words().begin() + static_cast<std::ptrdiff_t>(from),
                                        doc.words().begin() + static_cast<std::ptrdiff_t>(to));
            std::vector<std::optional<Sense>> g(gold.senses().begin() + static_cast<std::ptrdiff_t>(from),
                                                gold.senses().begin() + static_cast<std::ptrdiff_t>(to));
            into.documents.emplace_back(doc.name(), std::move(words));
            into.golds.emplace_back(std::move(g));
        };
        slice(0, cut, split.tuning);
        if (cut < doc.size()) {
            slice(cut, doc.size(), split.evaluation);
        } else {
            split.exhausted_documents.push_back(doc.name());
        }
    }
    return split;
}

} // namespace sensesearch
