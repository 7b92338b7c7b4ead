#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sensesearch
{

/// Thrown when an argument violates a documented precondition.
class InvalidInput : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed text input (corpus, configuration or config file). Carries the 1-based line.
class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Experiment or tuning setup that cannot be resolved (unknown algorithm, missing parameters).
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace sensesearch
