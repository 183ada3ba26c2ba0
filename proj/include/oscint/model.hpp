#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oscint/state.hpp"

namespace oscint {

/// Oscillatory Hamiltonian
///
///   H(q, p) = 1/2 (|p1|^2 + |p2|^2 + omega(q1)^2 / eps^2 |q2|^2) + U(q)
///
/// with a slowly varying, solution-dependent high frequency omega(q1)/eps.
/// Gradients are supplied analytically by the preset that builds the problem.
struct Problem {
    using ScalarFn = std::function<double(std::span<const double> q1)>;
    using VectorFn = std::function<std::vector<double>(std::span<const double> q1)>;
    using PotentialFn = std::function<double(const Positions&)>;
    using GradientFn = std::function<BlockVector(const Positions&)>;
    using ExactFn = std::function<State(double t)>;

    std::string name;
    std::size_t d1 = 0;
    std::size_t d2 = 0;
    double eps = 0.0;
    ScalarFn omega;
    VectorFn grad_omega;
    PotentialFn potential;
    GradientFn grad_potential;
    State initial;
    /// Closed-form flow, set only for problems that have one.
    std::optional<ExactFn> exact;
};

/// omega0 = omega(q1(0)) of the problem's declared initial state and
/// upsilon = omega0 / eps. These define the linear part Omega = diag(0, upsilon I).
struct DerivedConstants {
    double omega0 = 0.0;
    double upsilon = 0.0;

    static DerivedConstants from(const Problem& problem);
    /// omega0 = upsilon = 0: the linear part is dropped and the shifted force
    /// becomes the full force. Used to reduce the ERKN scheme to RKN.
    static DerivedConstants unshifted() noexcept { return {}; }
};

/// Throws InvalidState unless the state has the problem's block sizes and finite entries.
void check_state(const Problem& problem, const State& state);
/// Throws InvalidState for malformed problems (missing callables, bad eps, bad initial state).
void check_problem(const Problem& problem);

double total_energy(const Problem& problem, const State& state);
double action(const Problem& problem, const State& state);

/// g(q) of q'' + Omega^2 q = g(q):
///   g1 = -(omega |q2|^2 / eps^2) grad omega - grad_{q1} U
///   g2 = -((omega^2 - omega0^2) / eps^2) q2 - grad_{q2} U
BlockVector shifted_force(const Problem& problem, const DerivedConstants& constants, const Positions& q);

/// W(q) = (omega^2 - omega0^2) / (2 eps^2) |q2|^2 + U(q); shifted_force = -grad W.
double shift_potential(const Problem& problem, const DerivedConstants& constants, const Positions& q);

/// Unshifted force -grad(omega^2/(2 eps^2) |q2|^2 + U) used by RKN and Stormer-Verlet.
BlockVector full_force(const Problem& problem, const Positions& q);

}  // namespace oscint
