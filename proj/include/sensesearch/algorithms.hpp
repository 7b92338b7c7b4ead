#pragma once

#include <cstdint>
#include <variant>

#include "bat_algorithm.hpp"
#include "cuckoo_search.hpp"
#include "genetic_algorithm.hpp"
#include "params.hpp"
#include "scorer.hpp"
#include "simulated_annealing.hpp"

namespace sensesearch
{

/// Dispatches to the algorithm selected by the parameter type.
template <ConfigurationScorer Scorer>
Configuration run_algorithm(const Document& doc, Scorer& scorer, const AlgorithmParams& params, std::uint64_t seed)
{
    return std::visit(
        [&](const auto& p) -> Configuration {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, SaParams>) {
                return simulated_annealing(doc, scorer, p, seed);
            } else if constexpr (std::is_same_v<P, GaParams>) {
                return genetic_algorithm(doc, scorer, p, seed);
            } else if constexpr (std::is_same_v<P, BaParams>) {
                return bat_algorithm(doc, scorer, p, seed);
            } else {
                return cuckoo_search(doc, scorer, p, seed);
            }
        },
        params);
}

} // namespace sensesearch
