#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "oscint/state.hpp"

namespace oscint {

/// A state whose shape does not match its problem, or with non-finite entries.
class InvalidState : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A filter coefficient b1(h*upsilon) or bbar1(h*upsilon) is (numerically) zero.
class CoefficientVanishes : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// sinc(h*upsilon) vanishes, so the factor Psi is undefined.
class SincPole : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The stepsize makes a modified frequency imaginary (radicand < 0 or arcsin argument > 1).
class InadmissibleStepsize : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NoConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the trajectory driver when a step produces a non-finite entry.
/// Carries the last finite state and the index of the step that produced it.
class StepDiverged : public std::runtime_error {
public:
    StepDiverged(State last_finite, std::size_t step)
        : std::runtime_error("step " + std::to_string(step + 1) + " produced a non-finite state"),
          last_finite_(std::move(last_finite)),
          step_(step) {}

    const State& last_finite() const noexcept { return last_finite_; }
    std::size_t step() const noexcept { return step_; }

private:
    State last_finite_;
    std::size_t step_;
};

}  // namespace oscint
