#pragma once

#include <stdexcept>
#include <string>

namespace epicampaign {

// Error taxonomy used across the library. The CLI maps each class to a
// distinct nonzero exit code and a one-line diagnostic.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParameterError : public std::runtime_error {
public:
    explicit ParameterError(const std::string& msg) : std::runtime_error(msg) {}
};

// Edge-list ingestion: empty input, malformed lines.
class IngestionError : public std::runtime_error {
public:
    explicit IngestionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical integration produced a non-finite value or a state left [0,1]
// by more than the clamping slack.
class IntegrationError : public std::runtime_error {
public:
    explicit IntegrationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bisection could not meet its target inside the multiplier bracket.
class BracketError : public std::runtime_error {
public:
    explicit BracketError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace epicampaign
