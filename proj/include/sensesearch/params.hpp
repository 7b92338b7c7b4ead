#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "error.hpp"
#include "levy.hpp"

namespace sensesearch
{

struct SaParams
{
    double cooling_rate = 0.95;
    std::size_t iterations_per_cycle = 100;
    double initial_acceptance = 0.8;

    void validate() const
    {
        if (!(cooling_rate > 0.0 && cooling_rate < 1.0)) {
            throw InvalidInput("SA cooling rate must lie in (0, 1)");
        }
        if (iterations_per_cycle < 1) {
            throw InvalidInput("SA iterations per cycle must be positive");
        }
        if (!(initial_acceptance > 0.0 && initial_acceptance < 1.0)) {
            throw InvalidInput("SA initial acceptance must lie in (0, 1)");
        }
    }

    friend bool operator==(const SaParams&, const SaParams&) = default;
};

struct GaParams
{
    std::size_t population_size = 50;
    double crossover_rate = 0.7;
    double mutation_rate = 0.01;

    void validate() const
    {
        if (population_size < 2) {
            throw InvalidInput("GA population must hold at least two individuals");
        }
        if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0) || !(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
            throw InvalidInput("GA rates must lie in [0, 1]");
        }
    }

    friend bool operator==(const GaParams&, const GaParams&) = default;
};

struct BaParams
{
    std::size_t bat_count = 50;
    double min_frequency = 0.0;
    double max_frequency = 1.0;
    double min_loudness = 1.0;
    double max_loudness = 2.0;
    double alpha = 0.9;
    double gamma = 0.9;

    void validate() const
    {
        if (bat_count < 1) {
            throw InvalidInput("BA needs at least one bat");
        }
        if (!(min_frequency <= max_frequency) || !(min_loudness <= max_loudness)) {
            throw InvalidInput("BA minimum frequency/loudness must not exceed the maximum");
        }
        if (min_frequency < 0.0 || min_loudness < 0.0) {
            throw InvalidInput("BA frequency and loudness must be non-negative");
        }
        if (!(alpha > 0.0 && alpha <= 1.0)) {
            throw InvalidInput("BA alpha must lie in (0, 1]");
        }
        if (!(gamma > 0.0)) {
            throw InvalidInput("BA gamma must be positive");
        }
    }

    friend bool operator==(const BaParams&, const BaParams&) = default;
};

struct CsaParams
{
    std::size_t nest_count = 1;
    std::size_t destroyed_per_iteration = 0;
    LevyParams levy{1.0, 0.01};

    void validate() const
    {
        if (nest_count < 1) {
            throw InvalidInput("CSA needs at least one nest");
        }
        if (destroyed_per_iteration >= nest_count && !(nest_count == 1 && destroyed_per_iteration == 0)) {
            throw InvalidInput("CSA must keep at least one nest per iteration");
        }
        levy.validate();
    }

    friend bool operator==(const CsaParams&, const CsaParams&) = default;
};

using AlgorithmParams = std::variant<SaParams, GaParams, BaParams, CsaParams>;

enum class Algorithm
{
    SimulatedAnnealing,
    Genetic,
    Bat,
    Cuckoo,
};

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::SimulatedAnnealing, Algorithm::Genetic,
                                               Algorithm::Bat, Algorithm::Cuckoo};

/// Short identifier used in files and on the command line.
inline std::string_view algorithm_id(Algorithm a)
{
    switch (a) {
    case Algorithm::SimulatedAnnealing: return "sa";
    case Algorithm::Genetic: return "ga";
    case Algorithm::Bat: return "ba";
    case Algorithm::Cuckoo: return "csa";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view id)
{
    for (Algorithm a : kAllAlgorithms) {
        if (algorithm_id(a) == id) {
            return a;
        }
    }
    throw ConfigError("unknown algorithm '" + std::string(id) + "' (expected sa, ga, ba or csa)");
}

inline Algorithm algorithm_of(const AlgorithmParams& p)
{
    return static_cast<Algorithm>(p.index());
}

inline void validate(const AlgorithmParams& p)
{
    std::visit([](const auto& v) { v.validate(); }, p);
}

/// A named, tunable scalar of one algorithm's parameter set.
struct ParamField
{
    std::string_view name;
    bool integer = false;
};

/// Tunable fields in canonical order. initial_acceptance is fixed and not listed.
inline std::vector<ParamField> param_fields(Algorithm a)
{
    switch (a) {
    case Algorithm::SimulatedAnnealing: return {{"cooling_rate", false}, {"iterations_per_cycle", true}};
    case Algorithm::Genetic: return {{"population_size", true}, {"crossover_rate", false}, {"mutation_rate", false}};
    case Algorithm::Bat:
        return {{"bat_count", true},    {"min_frequency", false}, {"max_frequency", false}, {"min_loudness", false},
                {"max_loudness", false}, {"alpha", false},         {"gamma", false}};
    case Algorithm::Cuckoo:
        return {{"nest_count", true}, {"destroyed_per_iteration", true}, {"levy_location", false}, {"levy_scale", false}};
    }
    return {};
}

namespace detail
{

inline std::size_t to_count(std::string_view name, double value)
{
    if (!std::isfinite(value) || value < 0.0) {
        throw InvalidInput("parameter '" + std::string(name) + "' must be a non-negative integer");
    }
    return static_cast<std::size_t>(std::llround(value));
}

template <typename Visitor>
auto with_field(AlgorithmParams& params, std::string_view name, Visitor&& visit)
{
    auto unknown = [&]() {
        return InvalidInput("unknown parameter '" + std::string(name) + "' for algorithm " +
                            std::string(algorithm_id(algorithm_of(params))));
    };
    if (auto* p = std::get_if<SaParams>(&params)) {
        if (name == "cooling_rate") return visit(p->cooling_rate);
        if (name == "iterations_per_cycle") return visit(p->iterations_per_cycle);
        if (name == "initial_acceptance") return visit(p->initial_acceptance);
    } else if (auto* p = std::get_if<GaParams>(&params)) {
        if (name == "population_size") return visit(p->population_size);
        if (name == "crossover_rate") return visit(p->crossover_rate);
        if (name == "mutation_rate") return visit(p->mutation_rate);
    } else if (auto* p = std::get_if<BaParams>(&params)) {
        if (name == "bat_count") return visit(p->bat_count);
        if (name == "min_frequency") return visit(p->min_frequency);
        if (name == "max_frequency") return visit(p->max_frequency);
        if (name == "min_loudness") return visit(p->min_loudness);
        if (name == "max_loudness") return visit(p->max_loudness);
        if (name == "alpha") return visit(p->alpha);
        if (name == "gamma") return visit(p->gamma);
    } else if (auto* p = std::get_if<CsaParams>(&params)) {
        if (name == "nest_count") return visit(p->nest_count);
        if (name == "destroyed_per_iteration") return visit(p->destroyed_per_iteration);
        if (name == "levy_location") return visit(p->levy.location);
        if (name == "levy_scale") return visit(p->levy.scale);
    }
    throw unknown();
}

} // namespace detail

/// Sets a field by name. Integer fields are rounded to the nearest count.
inline void set_param(AlgorithmParams& params, std::string_view name, double value)
{
    detail::with_field(params, name, [&](auto& field) {
        if constexpr (std::is_same_v<std::decay_t<decltype(field)>, std::size_t>) {
            field = detail::to_count(name, value);
        } else {
            field = value;
        }
    });
}

inline double get_param(const AlgorithmParams& params, std::string_view name)
{
    AlgorithmParams copy = params;
    return detail::with_field(copy, name, [](auto& field) { return static_cast<double>(field); });
}

/// Parameter rows estimated for scorer-call budgets of 200, 800, 2000 and 4000.
/// Larger budgets reuse the 4000 row; smaller or intermediate ones have no preset.
inline std::optional<AlgorithmParams> preset(Algorithm a, std::size_t budget)
{
    int row = -1;
    switch (budget) {
    case 200: row = 0; break;
    case 800: row = 1; break;
    case 2000: row = 2; break;
    case 4000: row = 3; break;
    default: row = budget > 4000 ? 3 : -1; break;
    }
    if (row < 0) {
        return std::nullopt;
    }
    switch (a) {
    case Algorithm::Bat: {
        static constexpr BaParams rows[] = {
            {50, 45, 100, 23, 24, 0.40, 0.14},
            {50, 38, 38, 6, 10, 0.65, 0.95},
            {50, 28, 100, 0, 38, 0.1, 0.72},
            {50, 0, 100, 0, 38, 0.1, 0.95},
        };
        return rows[row];
    }
    case Algorithm::Cuckoo: {
        static constexpr CsaParams rows[] = {
            {1, 0, {20, 5}},
            {1, 0, {0.37, 5}},
            {1, 0, {5, 0.5}},
            {1, 0, {5, 0.5}},
        };
        return rows[row];
    }
    case Algorithm::Genetic: {
        static constexpr GaParams rows[] = {
            {100, 0.02, 0.01},
            {100, 0.01, 0.01},
            {100, 0.01, 0.01},
            {73, 0.01, 0.01},
        };
        return rows[row];
    }
    case Algorithm::SimulatedAnnealing: {
        static constexpr SaParams rows[] = {
            {0.95, 1, 0.8},
            {0.1, 100, 0.8},
            {0.1, 50, 0.8},
            {0.1, 77, 0.8},
        };
        return rows[row];
    }
    }
    return std::nullopt;
}

/// Untuned starting points. Not estimated on any corpus.
inline AlgorithmParams default_params(Algorithm a)
{
    switch (a) {
    case Algorithm::SimulatedAnnealing: return SaParams{};
    case Algorithm::Genetic: return GaParams{};
    case Algorithm::Bat: return BaParams{};
    case Algorithm::Cuckoo: return CsaParams{};
    }
    return SaParams{};
}

} // namespace sensesearch
