#pragma once

#include <stdexcept>
#include <string>

namespace qednp {

struct UnitError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the domain where a model or grid is defined.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct StepSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitError : std::runtime_error {
    FitError(const std::string& msg, double best_residual)
        : std::runtime_error(msg), residual(best_residual) {}
    double residual;
};

}  // namespace qednp
