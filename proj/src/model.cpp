#include "oscint/model.hpp"

#include <cmath>
#include <string>

#include "oscint/errors.hpp"

namespace oscint {

namespace {

void expect_size(const std::vector<double>& v, std::size_t n, const char* what) {
    if (v.size() != n) {
        throw InvalidState(std::string(what) + " has length " + std::to_string(v.size()) + ", expected " +
                           std::to_string(n));
    }
}

void expect_positions(const Problem& problem, const Positions& q) {
    expect_size(q.q1, problem.d1, "q1");
    expect_size(q.q2, problem.d2, "q2");
}

double evaluate_omega(const Problem& problem, std::span<const double> q1) {
    const double w = problem.omega(q1);
    if (!(w >= 1.0)) throw InvalidState("omega(q1) = " + std::to_string(w) + " violates omega >= 1");
    return w;
}

}  // namespace

DerivedConstants DerivedConstants::from(const Problem& problem) {
    const double w0 = evaluate_omega(problem, problem.initial.q1);
    return {w0, w0 / problem.eps};
}

void check_state(const Problem& problem, const State& state) {
    expect_size(state.q1, problem.d1, "q1");
    expect_size(state.q2, problem.d2, "q2");
    expect_size(state.p1, problem.d1, "p1");
    expect_size(state.p2, problem.d2, "p2");
    if (!state.all_finite()) throw InvalidState("state has non-finite entries");
}

void check_problem(const Problem& problem) {
    if (problem.d1 == 0 || problem.d2 == 0) throw InvalidState("problem dimensions must be positive");
    if (!(problem.eps > 0.0 && problem.eps < 1.0)) throw InvalidState("eps must lie in (0, 1)");
    if (!problem.omega || !problem.grad_omega || !problem.potential || !problem.grad_potential) {
        throw InvalidState("problem '" + problem.name + "' is missing a callable");
    }
    check_state(problem, problem.initial);
    evaluate_omega(problem, problem.initial.q1);
}

double total_energy(const Problem& problem, const State& state) {
    check_state(problem, state);
    const double w = problem.omega(state.q1);
    const double kinetic = squared_norm(state.p1) + squared_norm(state.p2);
    const double h = 0.5 * (kinetic + w * w / (problem.eps * problem.eps) * squared_norm(state.q2)) +
                     problem.potential(state.positions());
    if (!std::isfinite(h)) throw InvalidState("total energy is not finite");
    return h;
}

double action(const Problem& problem, const State& state) {
    check_state(problem, state);
    const double w = problem.omega(state.q1);
    return 0.5 * squared_norm(state.p2) / w + w / (2.0 * problem.eps * problem.eps) * squared_norm(state.q2);
}

BlockVector shifted_force(const Problem& problem, const DerivedConstants& constants, const Positions& q) {
    expect_positions(problem, q);
    const double eps2 = problem.eps * problem.eps;
    const double w = problem.omega(q.q1);
    const std::vector<double> dw = problem.grad_omega(q.q1);
    BlockVector g = problem.grad_potential(q);

    const double slow_scale = w * squared_norm(q.q2) / eps2;
    for (std::size_t i = 0; i < problem.d1; ++i) g.slow[i] = -slow_scale * dw[i] - g.slow[i];

    const double fast_scale = (w * w - constants.omega0 * constants.omega0) / eps2;
    for (std::size_t i = 0; i < problem.d2; ++i) g.fast[i] = -fast_scale * q.q2[i] - g.fast[i];
    return g;
}

double shift_potential(const Problem& problem, const DerivedConstants& constants, const Positions& q) {
    expect_positions(problem, q);
    const double w = problem.omega(q.q1);
    return (w * w - constants.omega0 * constants.omega0) / (2.0 * problem.eps * problem.eps) *
               squared_norm(q.q2) +
           problem.potential(q);
}

BlockVector full_force(const Problem& problem, const Positions& q) {
    return shifted_force(problem, DerivedConstants::unshifted(), q);
}

}  // namespace oscint
