#ifndef MODEQ_ERRORS_HPP
#define MODEQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace modeq {

// Series or iteration failed to converge within its term cap.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// The requested result cannot be resolved at the working precision.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FitError : std::runtime_error {
    explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Nullspace gap test failed: wrong degree or insufficient precision.
struct AmbiguousNullspaceError : FitError {
    explicit AmbiguousNullspaceError(const std::string& msg) : FitError(msg) {}
};

// No small-denominator rational within tolerance of a fitted coefficient.
struct RationalRoundingError : FitError {
    explicit RationalRoundingError(const std::string& msg) : FitError(msg) {}
};

} // namespace modeq

#endif
