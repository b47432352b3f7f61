#pragma once

#include <stdexcept>
#include <string>

namespace specwell {

/// Base of all numerical-pipeline failures; the CLI maps these to exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad user input (config file, CLI flags); the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct MultiWellError : NumericalError {
    explicit MultiWellError(const std::string& msg) : NumericalError(msg) {}
};

struct DegenerateMinimumError : NumericalError {
    explicit DegenerateMinimumError(const std::string& msg) : NumericalError(msg) {}
};

struct PoleRegularityError : NumericalError {
    explicit PoleRegularityError(const std::string& msg) : NumericalError(msg) {}
};

struct TruncatedSpectrumError : NumericalError {
    explicit TruncatedSpectrumError(const std::string& msg) : NumericalError(msg) {}
};

struct QuadratureError : NumericalError {
    explicit QuadratureError(const std::string& msg) : NumericalError(msg) {}
};

struct RootBracketError : NumericalError {
    explicit RootBracketError(const std::string& msg) : NumericalError(msg) {}
};

struct NoiseDominatedError : NumericalError {
    explicit NoiseDominatedError(const std::string& msg) : NumericalError(msg) {}
};

struct IllConditionedError : NumericalError {
    explicit IllConditionedError(const std::string& msg) : NumericalError(msg) {}
};

struct ThresholdNotBracketedError : NumericalError {
    explicit ThresholdNotBracketedError(const std::string& msg) : NumericalError(msg) {}
};

struct NegativeDiscriminantError : NumericalError {
    explicit NegativeDiscriminantError(const std::string& msg) : NumericalError(msg) {}
};

struct NonMonotoneBranchError : NumericalError {
    explicit NonMonotoneBranchError(const std::string& msg) : NumericalError(msg) {}
};

} // namespace specwell
