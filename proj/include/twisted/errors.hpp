#pragma once

#include <stdexcept>
#include <string>

namespace twisted {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// |sin t| below the cancellation threshold with no regularization requested.
struct SingularTimeError : Error {
    explicit SingularTimeError(const std::string& what) : Error(what) {}
};

// Evaluation requested outside the regime where the quantity is defined.
struct OutOfRegimeError : Error {
    explicit OutOfRegimeError(const std::string& what) : Error(what) {}
};

// Adaptive quadrature exceeded its panel budget; reported, not truncated.
struct BudgetExceededError : Error {
    explicit BudgetExceededError(const std::string& what) : Error(what) {}
};

// Eigensum route asked for lambda beyond the configured mu cap.
struct CapExceededError : Error {
    explicit CapExceededError(const std::string& what) : Error(what) {}
};

struct GridTooCoarseError : Error {
    explicit GridTooCoarseError(const std::string& what) : Error(what) {}
};

struct NonConvergenceError : Error {
    explicit NonConvergenceError(const std::string& what) : Error(what) {}
};

}  // namespace twisted
