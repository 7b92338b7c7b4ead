#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "core.hpp"
#include "params.hpp"
#include "scorer.hpp"

namespace sensesearch
{

/// Number of single-change probes used to calibrate the initial temperature.
inline constexpr std::size_t kTemperatureProbes = 50;

/// Temperature at which a worsening move of size mean_loss is accepted with
/// probability `acceptance`. Falls back to 1 when no loss was observed.
inline double calibrated_temperature(double mean_loss, double acceptance)
{
    if (!(mean_loss > 0.0)) {
        return 1.0;
    }
    return -mean_loss / std::log(acceptance);
}

/// Metropolis acceptance for a score change `delta` (new - current).
inline bool accept_move(double delta, double temperature, Rng& rng)
{
    if (delta >= 0.0) {
        return true;
    }
    if (!(temperature > 0.0)) {
        return false;
    }
    return rng.uniform01() < std::exp(delta / temperature);
}

/**
 * Simulated annealing over sense assignments.
 *
 * Scores a random start, then spends kTemperatureProbes calls on single
 * changes from it to calibrate T0 so that the mean observed loss is accepted
 * with probability params.initial_acceptance. The walk then runs cycles of
 * iterations_per_cycle single-change moves with geometric cooling between
 * cycles until the scorer's budget runs out.
 */
template <ConfigurationScorer Scorer>
Configuration simulated_annealing(const Document& doc, Scorer& scorer, const SaParams& params,
                                  std::uint64_t seed)
{
    params.validate();
    Rng rng(seed);

    Configuration current = random_configuration(doc, rng);
    auto scored = scorer.score(current);
    if (!scored) {
        return best_of(scorer);
    }
    double current_score = *scored;

    double loss_sum = 0.0;
    std::size_t losses = 0;
    for (std::size_t k = 0; k < kTemperatureProbes; ++k) {
        const Configuration probe = make_random_changes(doc, current, 1, rng);
        auto s = scorer.score(probe);
        if (!s) {
            return best_of(scorer);
        }
        if (*s < current_score) {
            loss_sum += current_score - *s;
            ++losses;
        }
    }
    double temperature =
        calibrated_temperature(losses ? loss_sum / static_cast<double>(losses) : 0.0, params.initial_acceptance);

    for (;;) {
        for (std::size_t it = 0; it < params.iterations_per_cycle; ++it) {
            Configuration next = make_random_changes(doc, current, 1, rng);
            auto s = scorer.score(next);
            if (!s) {
                return best_of(scorer);
            }
            if (accept_move(*s - current_score, temperature, rng)) {
                current = std::move(next);
                current_score = *s;
            }
        }
        temperature *= params.cooling_rate;
    }
}

} // namespace sensesearch
