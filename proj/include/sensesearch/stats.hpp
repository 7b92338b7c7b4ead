#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "error.hpp"

namespace sensesearch
{

struct UTestResult
{
    double u_statistic = 0.0; ///< min(U_A, U_B)
    double u_a = 0.0;
    double u_b = 0.0;
    double p_value = 1.0;     ///< two-sided
    bool significant = false;
    bool exact = false;
};

/// Largest n_A * n_B handled by exact enumeration.
inline constexpr std::size_t kExactUTestLimit = 64;

namespace detail
{

/// Pooled mid-ranks, doubled so they are integers. Order: a then b.
inline std::vector<std::int64_t> doubled_ranks(std::span<const double> a, std::span<const double> b)
{
    const std::size_t n = a.size() + b.size();
    std::vector<double> pooled;
    pooled.reserve(n);
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });

    std::vector<std::int64_t> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && pooled[order[j]] == pooled[order[i]]) {
            ++j;
        }
        // positions i..j-1 hold 1-based ranks i+1..j; doubled mid-rank is i+1+j
        const auto mid2 = static_cast<std::int64_t>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) {
            ranks[order[k]] = mid2;
        }
        i = j;
    }
    return ranks;
}

inline void require_samples(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty()) {
        throw InvalidInput("Mann-Whitney U: both samples must be non-empty");
    }
    for (double x : a) {
        if (std::isnan(x)) throw InvalidInput("Mann-Whitney U: NaN in sample");
    }
    for (double x : b) {
        if (std::isnan(x)) throw InvalidInput("Mann-Whitney U: NaN in sample");
    }
}

} // namespace detail

/// U_A = R_A - n_A (n_A + 1) / 2 with mid-ranks for ties.
inline double u_statistic_a(std::span<const double> a, std::span<const double> b)
{
    detail::require_samples(a, b);
    const auto ranks = detail::doubled_ranks(a, b);
    std::int64_t r2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        r2 += ranks[i];
    }
    const auto na = static_cast<double>(a.size());
    return static_cast<double>(r2) / 2.0 - na * (na + 1.0) / 2.0;
}

/**
 * Exact two-sided p-value conditional on the observed ties.
 *
 * Counts, for every subset of size n_A of the pooled mid-ranks, its rank sum
 * (dynamic programming over items and subset size). The p-value is twice the
 * smaller tail probability of the observed U_A, capped at 1.
 */
inline double mann_whitney_exact_p(std::span<const double> a, std::span<const double> b)
{
    detail::require_samples(a, b);
    const auto ranks = detail::doubled_ranks(a, b);
    const std::size_t na = a.size();
    const std::size_t n = ranks.size();
    const std::int64_t max_sum = std::accumulate(ranks.begin(), ranks.end(), std::int64_t{0});

    // counts[k][s]: subsets of size k with doubled rank sum s
    std::vector<std::vector<double>> counts(na + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
    counts[0][0] = 1.0;
    for (std::size_t item = 0; item < n; ++item) {
        const auto r = static_cast<std::size_t>(ranks[item]);
        for (std::size_t k = std::min(na, item + 1); k >= 1; --k) {
            auto& dst = counts[k];
            const auto& src = counts[k - 1];
            for (std::size_t s = dst.size(); s-- > r;) {
                dst[s] += src[s - r];
            }
        }
    }

    std::int64_t observed = 0;
    for (std::size_t i = 0; i < na; ++i) {
        observed += ranks[i];
    }
    double total = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    const auto& dist = counts[na];
    for (std::size_t s = 0; s < dist.size(); ++s) {
        total += dist[s];
        if (static_cast<std::int64_t>(s) <= observed) lower += dist[s];
        if (static_cast<std::int64_t>(s) >= observed) upper += dist[s];
    }
    return std::min(1.0, 2.0 * std::min(lower, upper) / total);
}

/// Normal approximation with tie-corrected variance and continuity correction.
inline double mann_whitney_normal_p(std::span<const double> a, std::span<const double> b)
{
    detail::require_samples(a, b);
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    const double n = na + nb;
    const double ua = u_statistic_a(a, b);

    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::sort(pooled.begin(), pooled.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < pooled.size();) {
        std::size_t j = i + 1;
        while (j < pooled.size() && pooled[j] == pooled[i]) {
            ++j;
        }
        const auto t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    const double variance = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (!(variance > 0.0)) {
        return 1.0;
    }
    const double mean = na * nb / 2.0;
    const double z = std::max(0.0, std::abs(ua - mean) - 0.5) / std::sqrt(variance);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

/// Two-sided Mann-Whitney U test. Exact when n_A * n_B <= kExactUTestLimit.
inline UTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b, double alpha = 0.05)
{
    detail::require_samples(a, b);
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidInput("Mann-Whitney U: alpha must lie in (0, 1)");
    }
    UTestResult r;
    r.u_a = u_statistic_a(a, b);
    r.u_b = static_cast<double>(a.size() * b.size()) - r.u_a;
    r.u_statistic = std::min(r.u_a, r.u_b);
    r.exact = a.size() * b.size() <= kExactUTestLimit;
    r.p_value = r.exact ? mann_whitney_exact_p(a, b) : mann_whitney_normal_p(a, b);
    r.significant = r.p_value < alpha;
    return r;
}

} // namespace sensesearch
