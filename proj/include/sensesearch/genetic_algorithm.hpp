#pragma once

#include <cstddef>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "core.hpp"
#include "params.hpp"
#include "scorer.hpp"

namespace sensesearch
{

/// Swaps the tails of a and b from position `cut` on. cut in [1, size).
inline std::pair<Configuration, Configuration> single_point_crossover(const Configuration& a,
                                                                      const Configuration& b,
                                                                      std::size_t cut)
{
    if (a.size() != b.size()) {
        throw InvalidInput("crossover: parents differ in length");
    }
    if (cut < 1 || cut >= a.size()) {
        throw InvalidInput("crossover: cut point out of range");
    }
    std::vector<Sense> x = a.assignments();
    std::vector<Sense> y = b.assignments();
    for (std::size_t i = cut; i < x.size(); ++i) {
        std::swap(x[i], y[i]);
    }
    return {Configuration(std::move(x)), Configuration(std::move(y))};
}

/// Roulette-wheel pick over non-negative fitness values, uniform if all are zero.
inline std::size_t roulette_select(const std::vector<double>& fitness, Rng& rng)
{
    double total = 0.0;
    for (double f : fitness) {
        total += f;
    }
    if (!(total > 0.0)) {
        return rng.below(fitness.size());
    }
    const double r = rng.uniform01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        acc += fitness[i];
        if (r < acc) {
            return i;
        }
    }
    return fitness.size() - 1;
}

/// Each polysemous gene independently moves to a different sense with probability `rate`.
inline void mutate(const Document& doc, Configuration& cfg, double rate, Rng& rng)
{
    if (rate <= 0.0) {
        return;
    }
    for (std::size_t w : doc.changeable()) {
        if (rng.bernoulli(rate)) {
            const Sense current = cfg[w];
            const auto r = static_cast<Sense>(rng.below(doc[w].sense_count - 1));
            cfg.assign(w, r < current ? r : r + 1);
        }
    }
}

/**
 * Generational GA with roulette selection, single-point crossover, per-gene
 * mutation and one elite.
 *
 * The elite is copied with its cached score; every other member of a new
 * generation is scored, including unmodified copies of a parent.
 */
template <ConfigurationScorer Scorer>
Configuration genetic_algorithm(const Document& doc, Scorer& scorer, const GaParams& params, std::uint64_t seed)
{
    params.validate();
    Rng rng(seed);

    std::vector<Configuration> population;
    std::vector<double> fitness;
    population.reserve(params.population_size);
    fitness.reserve(params.population_size);
    for (std::size_t i = 0; i < params.population_size; ++i) {
        Configuration c = random_configuration(doc, rng);
        auto s = scorer.score(c);
        if (!s) {
            return best_of(scorer);
        }
        population.push_back(std::move(c));
        fitness.push_back(*s);
    }

    std::vector<Configuration> next;
    std::vector<double> next_fitness;
    for (;;) {
        next.clear();
        next_fitness.clear();

        std::size_t elite = 0;
        for (std::size_t i = 1; i < fitness.size(); ++i) {
            if (fitness[i] > fitness[elite]) {
                elite = i;
            }
        }
        next.push_back(population[elite]);
        next_fitness.push_back(fitness[elite]);

        while (next.size() < params.population_size) {
            const std::size_t p1 = roulette_select(fitness, rng);
            const std::size_t p2 = roulette_select(fitness, rng);
            Configuration c1 = population[p1];
            Configuration c2 = population[p2];
            if (doc.size() >= 2 && rng.bernoulli(params.crossover_rate)) {
                const std::size_t cut = 1 + rng.below(doc.size() - 1);
                std::tie(c1, c2) = single_point_crossover(c1, c2, cut);
            }
            mutate(doc, c1, params.mutation_rate, rng);
            mutate(doc, c2, params.mutation_rate, rng);

            for (Configuration* child : {&c1, &c2}) {
                if (next.size() == params.population_size) {
                    break;
                }
                auto s = scorer.score(*child);
                if (!s) {
                    return best_of(scorer);
                }
                next.push_back(std::move(*child));
                next_fitness.push_back(*s);
            }
        }
        std::swap(population, next);
        std::swap(fitness, next_fitness);
    }
}

} // namespace sensesearch
