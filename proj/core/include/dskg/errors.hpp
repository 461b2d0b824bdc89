// Error taxonomy shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace dskg {

// Input outside a documented precondition (bad argument, bad config).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evaluation point outside the light cone of the source point.
struct OutsideCone : DomainError {
    using DomainError::DomainError;
};

// Series or iteration failed to reach tolerance within its budget.
struct NonConvergent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Transformation is valid but numerically useless here; caller must fall back.
struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A mathematically real quantity came back with a large imaginary part.
struct RealnessFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature exhausted its panel budget before reaching tolerance.
struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite-difference stencil failed to converge under Richardson refinement.
struct DerivativeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive ODE integrator rejected steps down to the minimum step size.
struct StiffnessFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite-difference time step violates the CFL restriction.
struct CFLViolation : DomainError {
    using DomainError::DomainError;
};

// Requested norm is not supported (e.g. q = infinity).
struct UnsupportedNorm : DomainError {
    using DomainError::DomainError;
};

// Unknown data preset name.
struct UnknownPreset : DomainError {
    using DomainError::DomainError;
};

}  // namespace dskg
