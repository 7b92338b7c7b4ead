#pragma once

#include <cmath>
#include <cstddef>

#include "error.hpp"
#include "rng.hpp"

namespace sensesearch
{

/// Lévy(location, scale). Support is (location, +inf).
struct LevyParams
{
    double location = 0.0;
    double scale = 1.0;

    void validate() const
    {
        if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(location)) {
            throw InvalidInput("Lévy scale must be positive and finite");
        }
    }

    friend bool operator==(const LevyParams&, const LevyParams&) = default;
};

/// Longest flight handed to make_random_changes. The tail is heavy enough that
/// uncapped samples occasionally ask for billions of changes.
inline constexpr std::size_t kMaxFlightDistance = std::size_t{1} << 20;

/// location + scale / Z^2 with Z standard normal.
inline double sample_levy(const LevyParams& params, Rng& rng)
{
    params.validate();
    double z = 0.0;
    do {
        z = rng.normal();
    } while (z == 0.0);
    return params.location + params.scale / (z * z);
}

/// Number of random changes for one flight: the sample truncated toward zero,
/// floored at 0 and capped at kMaxFlightDistance. Zero is a legal flight.
inline std::size_t flight_distance(const LevyParams& params, Rng& rng)
{
    const double d = std::trunc(sample_levy(params, rng));
    if (!(d > 0.0)) {
        return 0;
    }
    if (d >= static_cast<double>(kMaxFlightDistance)) {
        return kMaxFlightDistance;
    }
    return static_cast<std::size_t>(d);
}

/// Median of Lévy(location, scale): location + scale / (2 erfcinv(1/2)^2).
inline double levy_median(const LevyParams& params)
{
    constexpr double kErfcInvHalf = 0.4769362762044698733814; // erfc^-1(0.5)
    return params.location + params.scale / (2.0 * kErfcInvHalf * kErfcInvHalf);
}

} // namespace sensesearch
