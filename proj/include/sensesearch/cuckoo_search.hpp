#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "core.hpp"
#include "levy.hpp"
#include "params.hpp"
#include "scorer.hpp"

namespace sensesearch
{

/// Flights are cut at this many changes per polysemous word. Past that point
/// every word has been redrawn dozens of times and the clone is as mixed as a
/// longer flight would leave it.
inline constexpr std::size_t kFlightMixingFactor = 64;

struct Nest
{
    Configuration configuration;
    double score = 0.0;
};

/**
 * Discrete cuckoo search.
 *
 * Each iteration clones a uniformly drawn nest i, moves the clone by a Lévy
 * flight of flight_distance() random changes and scores it. The clone takes
 * the place of a different uniformly drawn nest j if it scores strictly
 * higher. With a single nest, j is the parent itself, which turns the search
 * into Lévy-flight hill climbing. Nests are then sorted ascending by score
 * and the lowest destroyed_per_iteration are replaced by fresh random nests.
 */
template <ConfigurationScorer Scorer>
class CuckooNests
{
public:
    CuckooNests(const Document& doc, Scorer& scorer, const CsaParams& params, std::uint64_t seed)
        : doc_(doc), scorer_(scorer), params_(params), rng_(seed)
    {
        params_.validate();
    }

    bool initialize()
    {
        nests_.clear();
        nests_.reserve(params_.nest_count);
        for (std::size_t i = 0; i < params_.nest_count; ++i) {
            auto nest = fresh_nest();
            if (!nest) {
                return false;
            }
            nests_.push_back(std::move(*nest));
        }
        sort();
        return true;
    }

    /// False once the budget is spent.
    bool iterate()
    {
        const std::size_t n = nests_.size();
        const std::size_t i = rng_.below(n);
        const std::size_t distance =
            std::min(flight_distance(params_.levy, rng_), kFlightMixingFactor * doc_.changeable().size());
        Nest cuckoo{make_random_changes(doc_, nests_[i].configuration, distance, rng_), 0.0};
        auto s = scorer_.score(cuckoo.configuration);
        if (!s) {
            return false;
        }
        cuckoo.score = *s;

        std::size_t j = i;
        if (n > 1) {
            j = rng_.below(n - 1);
            if (j >= i) {
                ++j;
            }
        }
        if (cuckoo.score > nests_[j].score) {
            nests_[j] = std::move(cuckoo);
        }
        sort();

        for (std::size_t k = 0; k < params_.destroyed_per_iteration; ++k) {
            auto nest = fresh_nest();
            if (!nest) {
                sort();
                return false;
            }
            nests_[k] = std::move(*nest);
        }
        if (params_.destroyed_per_iteration > 0) {
            sort();
        }
        return true;
    }

    const std::vector<Nest>& nests() const noexcept { return nests_; }

private:
    std::optional<Nest> fresh_nest()
    {
        Nest nest{random_configuration(doc_, rng_), 0.0};
        auto s = scorer_.score(nest.configuration);
        if (!s) {
            return std::nullopt;
        }
        nest.score = *s;
        return nest;
    }

    void sort()
    {
        std::stable_sort(nests_.begin(), nests_.end(),
                         [](const Nest& a, const Nest& b) { return a.score < b.score; });
    }

    const Document& doc_;
    Scorer& scorer_;
    CsaParams params_;
    Rng rng_;
    std::vector<Nest> nests_;
};

template <ConfigurationScorer Scorer>
Configuration cuckoo_search(const Document& doc, Scorer& scorer, const CsaParams& params, std::uint64_t seed)
{
    CuckooNests<Scorer> nests(doc, scorer, params, seed);
    if (nests.initialize()) {
        while (nests.iterate()) {
        }
    }
    return best_of(scorer);
}

} // namespace sensesearch
