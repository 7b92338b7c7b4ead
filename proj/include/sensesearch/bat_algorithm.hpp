#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "core.hpp"
#include "params.hpp"
#include "scorer.hpp"

namespace sensesearch
{

struct BatState
{
    Configuration position;
    std::size_t velocity = 0;
    double frequency = 0.0;
    double loudness = 0.0;
    double pulse_rate = 0.0;
    double initial_pulse_rate = 0.0;
    double score = 0.0;
    bool finished = false;
};

/**
 * Discrete bat swarm.
 *
 * Per bat and iteration, one of two moves is scored:
 *  - local flight (pulse rate below a uniform draw): the best bat's position
 *    with floor(mean loudness) random changes;
 *  - global flight: a new frequency, velocity accumulates the Hamming
 *    distance to the best bat and is scaled by the frequency, truncated and
 *    clamped to [0, word count], then the bat makes `velocity` changes.
 * The move is kept only when the bat's loudness beats a uniform draw in
 * [min_loudness, max_loudness] and the score beats the best bat's score.
 * Acceptance shrinks loudness by alpha and resets the pulse rate to
 * r0 * (1 - exp(-gamma * iteration)). A bat whose loudness falls below
 * min_loudness is finished; the swarm stops when every bat is finished.
 *
 * Draw order: per bat at initialization position, frequency, loudness, pulse
 * rate; per move the branch draw, then the frequency on the global branch,
 * then the changes, then the loudness threshold.
 */
template <ConfigurationScorer Scorer>
class BatSwarm
{
public:
    BatSwarm(const Document& doc, Scorer& scorer, const BaParams& params, std::uint64_t seed)
        : doc_(doc), scorer_(scorer), params_(params), rng_(seed)
    {
        params_.validate();
    }

    /// Creates and scores the bats. False if the budget ran out first.
    bool initialize()
    {
        bats_.clear();
        bats_.reserve(params_.bat_count);
        for (std::size_t i = 0; i < params_.bat_count; ++i) {
            BatState bat;
            bat.position = random_configuration(doc_, rng_);
            bat.frequency = rng_.uniform(params_.min_frequency, params_.max_frequency);
            bat.loudness = rng_.uniform(params_.min_loudness, params_.max_loudness);
            bat.pulse_rate = rng_.uniform01();
            bat.initial_pulse_rate = bat.pulse_rate;
            auto s = scorer_.score(bat.position);
            if (!s) {
                return false;
            }
            bat.score = *s;
            bats_.push_back(std::move(bat));
        }
        best_ = 0;
        for (std::size_t i = 1; i < bats_.size(); ++i) {
            if (bats_[i].score > bats_[best_].score) {
                best_ = i;
            }
        }
        return true;
    }

    /// One pass over every bat. False once the budget is spent or every bat finished.
    bool iterate()
    {
        ++iteration_;
        for (std::size_t b = 0; b < bats_.size(); ++b) {
            BatState& bat = bats_[b];
            const Configuration previous_position = bat.position;
            const std::size_t previous_velocity = bat.velocity;
            const double previous_score = bat.score;
            const double best_score = bats_[best_].score;

            if (bat.pulse_rate < rng_.uniform01()) {
                const auto changes = static_cast<std::size_t>(std::max(0.0, std::floor(average_loudness())));
                bat.position = make_random_changes(doc_, bats_[best_].position, changes, rng_);
            } else {
                bat.frequency = rng_.uniform(params_.min_frequency, params_.max_frequency);
                const double scaled =
                    std::floor(static_cast<double>(bat.velocity + hamming_distance(bat.position, bats_[best_].position)) *
                               bat.frequency);
                bat.velocity = static_cast<std::size_t>(std::clamp(scaled, 0.0, static_cast<double>(doc_.size())));
                bat.position = make_random_changes(doc_, bat.position, bat.velocity, rng_);
            }

            auto s = scorer_.score(bat.position);
            if (!s) {
                bat.position = previous_position;
                bat.velocity = previous_velocity;
                return false;
            }
            bat.score = *s;

            if (bat.loudness >= rng_.uniform(params_.min_loudness, params_.max_loudness) && bat.score > best_score) {
                bat.loudness *= params_.alpha;
                if (!bat.finished && bat.loudness < params_.min_loudness) {
                    bat.finished = true;
                    ++finished_;
                }
                bat.pulse_rate = bat.initial_pulse_rate * (1.0 - std::exp(-params_.gamma * static_cast<double>(iteration_)));
                best_ = b;
            } else {
                bat.position = previous_position;
                bat.velocity = previous_velocity;
                bat.score = previous_score;
            }
        }
        return finished_ < bats_.size();
    }

    double average_loudness() const
    {
        double total = 0.0;
        for (const auto& bat : bats_) {
            total += bat.loudness;
        }
        return bats_.empty() ? 0.0 : total / static_cast<double>(bats_.size());
    }

    const std::vector<BatState>& bats() const noexcept { return bats_; }
    std::size_t best_index() const noexcept { return best_; }
    std::size_t finished_count() const noexcept { return finished_; }
    std::size_t iteration() const noexcept { return iteration_; }
    bool converged() const noexcept { return !bats_.empty() && finished_ == bats_.size(); }

private:
    const Document& doc_;
    Scorer& scorer_;
    BaParams params_;
    Rng rng_;
    std::vector<BatState> bats_;
    std::size_t best_ = 0;
    std::size_t finished_ = 0;
    std::size_t iteration_ = 0;
};

/// Runs a bat swarm until every bat is finished or the budget is spent.
template <ConfigurationScorer Scorer>
Configuration bat_algorithm(const Document& doc, Scorer& scorer, const BaParams& params, std::uint64_t seed)
{
    BatSwarm<Scorer> swarm(doc, scorer, params, seed);
    if (swarm.initialize()) {
        while (swarm.iterate()) {
        }
    }
    return best_of(scorer);
}

} // namespace sensesearch
