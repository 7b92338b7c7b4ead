#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace sensesearch
{

using Sense = std::uint32_t;

/// One word of a document: its surface form, how many senses it can take and
/// which sentence it belongs to (absent when the source carries no boundaries).
struct WordSlot
{
    std::string surface;
    Sense sense_count = 1;
    std::optional<std::size_t> sentence;

    friend bool operator==(const WordSlot&, const WordSlot&) = default;
};

/**
 * The search space: an ordered list of word slots.
 *
 * Invariants checked on construction: at least one sense per slot, sentence
 * indices non-decreasing, and either every slot or no slot carries a
 * sentence index. The indices of polysemous slots are cached since every
 * random change draws from them.
 */
class Document
{
public:
    Document() = default;

    Document(std::string name, std::vector<WordSlot> words)
        : name_(std::move(name)), words_(std::move(words))
    {
        std::optional<std::size_t> previous;
        const bool indexed = !words_.empty() && words_.front().sentence.has_value();
        for (std::size_t i = 0; i < words_.size(); ++i) {
            const WordSlot& w = words_[i];
            if (w.sense_count < 1) {
                throw InvalidInput("document '" + name_ + "': word " + std::to_string(i) +
                                   " has no senses");
            }
            if (w.sentence.has_value() != indexed) {
                throw InvalidInput("document '" + name_ + "': word " + std::to_string(i) +
                                   " mixes indexed and unindexed sentences");
            }
            if (indexed && previous && *w.sentence < *previous) {
                throw InvalidInput("document '" + name_ + "': sentence index decreases at word " +
                                   std::to_string(i));
            }
            previous = w.sentence;
            if (w.sense_count >= 2) {
                changeable_.push_back(i);
            }
        }
    }

    const std::string& name() const noexcept { return name_; }
    const std::vector<WordSlot>& words() const noexcept { return words_; }
    std::size_t size() const noexcept { return words_.size(); }
    bool empty() const noexcept { return words_.empty(); }
    const WordSlot& operator[](std::size_t i) const { return words_[i]; }

    /// Indices of words with at least two senses.
    const std::vector<std::size_t>& changeable() const noexcept { return changeable_; }

    bool has_sentences() const noexcept { return !words_.empty() && words_.front().sentence.has_value(); }

    /// Number of configurations, saturating at UINT64_MAX.
    std::uint64_t search_space_size() const noexcept
    {
        std::uint64_t total = 1;
        for (const auto& w : words_) {
            if (total > UINT64_MAX / w.sense_count) {
                return UINT64_MAX;
            }
            total *= w.sense_count;
        }
        return total;
    }

    friend bool operator==(const Document& a, const Document& b)
    {
        return a.name_ == b.name_ && a.words_ == b.words_;
    }

private:
    std::string name_;
    std::vector<WordSlot> words_;
    std::vector<std::size_t> changeable_;
};

/// One sense index per document word. A point in the search space.
class Configuration
{
public:
    Configuration() = default;
    explicit Configuration(std::vector<Sense> assignments) : assignments_(std::move(assignments)) {}

    std::size_t size() const noexcept { return assignments_.size(); }
    Sense operator[](std::size_t i) const { return assignments_[i]; }
    const std::vector<Sense>& assignments() const noexcept { return assignments_; }

    void assign(std::size_t i, Sense s) { assignments_.at(i) = s; }

    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    std::vector<Sense> assignments_;
};

/// True when cfg has one in-range sense per word of doc.
inline bool is_valid(const Document& doc, const Configuration& cfg) noexcept
{
    if (cfg.size() != doc.size()) {
        return false;
    }
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        if (cfg[i] >= doc[i].sense_count) {
            return false;
        }
    }
    return true;
}

inline void require_valid(const Document& doc, const Configuration& cfg)
{
    if (!is_valid(doc, cfg)) {
        throw InvalidInput("configuration does not fit document '" + doc.name() + "'");
    }
}

/// Draws every assignment uniformly and independently, word by word.
inline Configuration random_configuration(const Document& doc, Rng& rng)
{
    if (doc.empty()) {
        throw InvalidInput("random_configuration: empty document");
    }
    std::vector<Sense> a(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        a[i] = static_cast<Sense>(rng.below(doc[i].sense_count));
    }
    return Configuration(std::move(a));
}

/// Applies one random change in place: a uniformly chosen polysemous word moves
/// to a uniformly chosen different sense. No-op on a space with no polysemous word.
inline void apply_random_change(const Document& doc, Configuration& cfg, Rng& rng)
{
    const auto& candidates = doc.changeable();
    if (candidates.empty()) {
        return;
    }
    const std::size_t w = candidates[rng.below(candidates.size())];
    const Sense current = cfg[w];
    const auto r = static_cast<Sense>(rng.below(doc[w].sense_count - 1));
    cfg.assign(w, r < current ? r : r + 1);
}

/// Returns a copy of cfg after `count` sequential random changes. Changes may
/// hit the same word more than once, so the result can be closer than `count`.
inline Configuration make_random_changes(const Document& doc, const Configuration& cfg,
                                         std::size_t count, Rng& rng)
{
    require_valid(doc, cfg);
    Configuration out = cfg;
    if (doc.changeable().empty()) {
        return out;
    }
    for (std::size_t k = 0; k < count; ++k) {
        apply_random_change(doc, out, rng);
    }
    return out;
}

inline std::size_t hamming_distance(const Configuration& a, const Configuration& b)
{
    if (a.size() != b.size()) {
        throw InvalidInput("hamming_distance: length mismatch");
    }
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += a[i] != b[i] ? 1 : 0;
    }
    return d;
}

} // namespace sensesearch
