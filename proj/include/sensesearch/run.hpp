#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "algorithms.hpp"
#include "scorer.hpp"

namespace sensesearch
{

/// Result of one seeded run on one document.
struct RunOutcome
{
    Configuration best;
    double best_f1 = 0.0;
    std::size_t calls = 0;
    std::vector<TracePoint> trace;
};

/// Runs an algorithm against a fresh budgeted oracle scorer.
inline RunOutcome run_once(const Document& doc, const GoldStandard& gold, const AlgorithmParams& params,
                           std::size_t budget, std::uint64_t seed)
{
    BudgetedScorer scorer(gold, budget);
    RunOutcome out;
    out.best = run_algorithm(doc, scorer, params, seed);
    out.best_f1 = scorer.best_score();
    out.calls = scorer.calls();
    out.trace = scorer.trace();
    return out;
}

} // namespace sensesearch
