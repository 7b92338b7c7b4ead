#pragma once

#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "core.hpp"
#include "error.hpp"

namespace sensesearch
{

/// Reference annotation aligned with a document. An empty entry means "not annotated".
class GoldStandard
{
public:
    GoldStandard() = default;
    explicit GoldStandard(std::vector<std::optional<Sense>> senses) : senses_(std::move(senses)) {}

    std::size_t size() const noexcept { return senses_.size(); }
    const std::optional<Sense>& operator[](std::size_t i) const { return senses_[i]; }
    const std::vector<std::optional<Sense>>& senses() const noexcept { return senses_; }

    std::size_t annotated_count() const noexcept
    {
        std::size_t n = 0;
        for (const auto& s : senses_) {
            n += s.has_value() ? 1 : 0;
        }
        return n;
    }

    /// Throws InvalidInput naming the first misaligned or out-of-range word.
    void validate(const Document& doc) const
    {
        if (senses_.size() != doc.size()) {
            throw InvalidInput("gold standard for '" + doc.name() + "' has " +
                               std::to_string(senses_.size()) + " entries, document has " +
                               std::to_string(doc.size()));
        }
        for (std::size_t i = 0; i < senses_.size(); ++i) {
            if (senses_[i] && *senses_[i] >= doc[i].sense_count) {
                throw InvalidInput("gold sense " + std::to_string(*senses_[i]) + " out of range for word " +
                                   std::to_string(i) + " of '" + doc.name() + "'");
            }
        }
    }

    friend bool operator==(const GoldStandard&, const GoldStandard&) = default;

private:
    std::vector<std::optional<Sense>> senses_;
};

/**
 * F1 of a configuration against the gold standard.
 *
 * precision = correct / attempted, recall = correct / annotated. Every word
 * is attempted, so 2PR/(P+R) reduces to 2*correct / (attempted + annotated),
 * which is evaluated in that form to keep the result correctly rounded.
 */
inline double f1(const Configuration& cfg, const GoldStandard& gold)
{
    if (cfg.size() != gold.size()) {
        throw InvalidInput("f1: configuration and gold standard lengths differ");
    }
    std::size_t correct = 0;
    std::size_t annotated = 0;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        if (gold[i]) {
            ++annotated;
            correct += *gold[i] == cfg[i] ? 1 : 0;
        }
    }
    if (correct == 0) {
        return 0.0;
    }
    return static_cast<double>(2 * correct) / static_cast<double>(cfg.size() + annotated);
}

/// A point where the best-so-far score changed.
struct TracePoint
{
    std::size_t call = 0;
    double best = 0.0;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

/// What the algorithms need from a scorer: a budgeted evaluation that returns
/// nullopt once the budget is spent, and the best configuration it has seen.
template <typename S>
concept ConfigurationScorer = requires(S& s, const S& cs, const Configuration& c) {
    { s.score(c) } -> std::same_as<std::optional<double>>;
    { cs.best_configuration() } -> std::convertible_to<const std::optional<Configuration>&>;
    { cs.exhausted() } -> std::convertible_to<bool>;
};

/**
 * Oracle F1 wrapped in a call budget.
 *
 * Each score() consumes one call. Once `budget` calls were made, score()
 * returns nullopt and leaves the state untouched, so the best-so-far and the
 * trace stay available. Ties keep the configuration seen first.
 */
class BudgetedScorer
{
public:
    using Observer = std::function<void(std::size_t call, const Configuration&, double)>;

    BudgetedScorer(GoldStandard gold, std::size_t budget) : gold_(std::move(gold)), budget_(budget)
    {
        if (budget_ == 0) {
            throw InvalidInput("BudgetedScorer: budget must be positive");
        }
    }

    std::optional<double> score(const Configuration& cfg)
    {
        if (exhausted()) {
            return std::nullopt;
        }
        const double value = f1(cfg, gold_);
        ++calls_;
        if (!best_config_ || value > best_score_) {
            best_score_ = value;
            best_config_ = cfg;
            trace_.push_back({calls_, value});
        }
        if (observer_) {
            observer_(calls_, cfg, value);
        }
        return value;
    }

    bool exhausted() const noexcept { return calls_ >= budget_; }
    std::size_t calls() const noexcept { return calls_; }
    std::size_t budget() const noexcept { return budget_; }
    std::size_t remaining() const noexcept { return budget_ - calls_; }

    /// 0 before the first call.
    double best_score() const noexcept { return best_score_; }
    const std::optional<Configuration>& best_configuration() const noexcept { return best_config_; }
    const std::vector<TracePoint>& trace() const noexcept { return trace_; }
    const GoldStandard& gold() const noexcept { return gold_; }

    /// Called after every accepted evaluation. Test instrumentation.
    void set_observer(Observer observer) { observer_ = std::move(observer); }

private:
    GoldStandard gold_;
    std::size_t budget_;
    std::size_t calls_ = 0;
    double best_score_ = 0.0;
    std::optional<Configuration> best_config_;
    std::vector<TracePoint> trace_;
    Observer observer_;
};

static_assert(ConfigurationScorer<BudgetedScorer>);

/// The scorer's best configuration; the return value of every algorithm.
template <ConfigurationScorer Scorer>
Configuration best_of(const Scorer& scorer)
{
    if (!scorer.best_configuration()) {
        throw InvalidInput("scorer was exhausted before any evaluation");
    }
    return *scorer.best_configuration();
}

} // namespace sensesearch
