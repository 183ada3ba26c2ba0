#include "oscint/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "oscint/errors.hpp"

namespace oscint {

std::string_view to_string(Method method) noexcept {
    switch (method) {
        case Method::erkn: return "erkn";
        case Method::rkn: return "rkn";
        case Method::sv: return "sv";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
    if (name == "erkn" || name == "ERKN") return Method::erkn;
    if (name == "rkn" || name == "RKN") return Method::rkn;
    if (name == "sv" || name == "SV") return Method::sv;
    return std::nullopt;
}

std::size_t force_evaluations_per_step(Method method) noexcept {
    return method == Method::sv ? 2 : 1;
}

State erkn_step(const Problem& problem, const DerivedConstants& constants, const FilterTable& filters,
                const State& state, double h) {
    const std::size_t d1 = problem.d1;
    const std::size_t d2 = problem.d2;
    const double half_h = 0.5 * h;
    // cos, sinc and the coefficients are even in h; sin(h upsilon) is odd.
    const double sin_full = h < 0.0 ? -filters.sin_full : filters.sin_full;

    Positions stage{std::vector<double>(d1), std::vector<double>(d2)};
    for (std::size_t i = 0; i < d1; ++i) stage.q1[i] = state.q1[i] + half_h * state.p1[i];
    for (std::size_t i = 0; i < d2; ++i) {
        stage.q2[i] = filters.cos_half * state.q2[i] + half_h * filters.sinc_half * state.p2[i];
    }

    const BlockVector g = shifted_force(problem, constants, stage);

    State next{std::vector<double>(d1), std::vector<double>(d2), std::vector<double>(d1), std::vector<double>(d2)};
    const double h2 = h * h;
    for (std::size_t i = 0; i < d1; ++i) {
        next.q1[i] = state.q1[i] + h * state.p1[i] + h2 * 0.5 * g.slow[i];
        next.p1[i] = state.p1[i] + h * g.slow[i];
    }
    const double rotate = -constants.upsilon * sin_full;
    for (std::size_t i = 0; i < d2; ++i) {
        next.q2[i] = filters.cos_full * state.q2[i] + h * filters.sinc_full * state.p2[i] +
                     h2 * filters.bbar_fast * g.fast[i];
        next.p2[i] = rotate * state.q2[i] + filters.cos_full * state.p2[i] + h * filters.b_fast * g.fast[i];
    }
    return next;
}

State rkn_step(const Problem& problem, const State& state, double h) {
    const std::size_t d1 = problem.d1;
    const std::size_t d2 = problem.d2;
    const double half_h = 0.5 * h;

    Positions stage{std::vector<double>(d1), std::vector<double>(d2)};
    for (std::size_t i = 0; i < d1; ++i) stage.q1[i] = state.q1[i] + half_h * state.p1[i];
    for (std::size_t i = 0; i < d2; ++i) stage.q2[i] = state.q2[i] + half_h * state.p2[i];

    const BlockVector f = full_force(problem, stage);

    State next{std::vector<double>(d1), std::vector<double>(d2), std::vector<double>(d1), std::vector<double>(d2)};
    const double h2 = h * h;
    for (std::size_t i = 0; i < d1; ++i) {
        next.q1[i] = state.q1[i] + h * state.p1[i] + h2 * 0.5 * f.slow[i];
        next.p1[i] = state.p1[i] + h * f.slow[i];
    }
    for (std::size_t i = 0; i < d2; ++i) {
        next.q2[i] = state.q2[i] + h * state.p2[i] + h2 * 0.5 * f.fast[i];
        next.p2[i] = state.p2[i] + h * f.fast[i];
    }
    return next;
}

State sv_step(const Problem& problem, const State& state, double h) {
    const double half_h = 0.5 * h;
    State next = state;

    BlockVector f = full_force(problem, state.positions());
    for (std::size_t i = 0; i < problem.d1; ++i) next.p1[i] += half_h * f.slow[i];
    for (std::size_t i = 0; i < problem.d2; ++i) next.p2[i] += half_h * f.fast[i];

    for (std::size_t i = 0; i < problem.d1; ++i) next.q1[i] += h * next.p1[i];
    for (std::size_t i = 0; i < problem.d2; ++i) next.q2[i] += h * next.p2[i];

    f = full_force(problem, next.positions());
    for (std::size_t i = 0; i < problem.d1; ++i) next.p1[i] += half_h * f.slow[i];
    for (std::size_t i = 0; i < problem.d2; ++i) next.p2[i] += half_h * f.fast[i];
    return next;
}

Stepper::Stepper(const Problem& problem, Method method, double h)
    : problem_(&problem), method_(method), h_(h), constants_(DerivedConstants::from(problem)) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("stepsize must be positive");
    if (method == Method::erkn) filters_ = build_filter_table(h, constants_.upsilon);
}

State Stepper::apply(const State& state, double h) const {
    switch (method_) {
        case Method::erkn: return erkn_step(*problem_, constants_, filters_, state, h);
        case Method::rkn: return rkn_step(*problem_, state, h);
        case Method::sv: return sv_step(*problem_, state, h);
    }
    throw std::logic_error("unknown method");
}

State Stepper::step(const State& state) const { return apply(state, h_); }
State Stepper::step_back(const State& state) const { return apply(state, -h_); }

std::size_t step_count(double t_end, double h) {
    if (!(h > 0.0) || !(t_end >= 0.0) || !std::isfinite(t_end)) {
        throw std::invalid_argument("step_count needs h > 0 and t_end >= 0");
    }
    const double ratio = t_end / h;
    const double n = std::round(ratio);
    if (std::abs(n * h - t_end) > 4.0 * std::numeric_limits<double>::epsilon() * std::max(t_end, h)) {
        throw std::invalid_argument("h = " + std::to_string(h) + " does not divide t_end = " + std::to_string(t_end));
    }
    return static_cast<std::size_t>(n);
}

Trajectory integrate_from(const Problem& problem, const State& start, Method method, double h,
                          std::size_t n_steps, std::size_t observer_stride, const Observer& observer,
                          Record record) {
    check_problem(problem);
    check_state(problem, start);
    if (observer_stride == 0) throw std::invalid_argument("observer stride must be >= 1");

    const Stepper stepper(problem, method, h);
    Trajectory traj;
    traj.method = method;
    traj.h = h;

    auto emit = [&](std::size_t n, const State& s) {
        if (observer) observer(n, s);
        if (record == Record::samples) {
            traj.steps.push_back(n);
            traj.times.push_back(static_cast<double>(n) * h);
            traj.states.push_back(s);
        }
    };

    State current = start;
    emit(0, current);
    for (std::size_t n = 0; n < n_steps; ++n) {
        State next = stepper.step(current);
        if (!next.all_finite()) throw StepDiverged(std::move(current), n);
        current = std::move(next);
        const std::size_t done = n + 1;
        if (done % observer_stride == 0 || done == n_steps) emit(done, current);
    }
    return traj;
}

Trajectory integrate(const Problem& problem, Method method, double h, std::size_t n_steps,
                     std::size_t observer_stride, const Observer& observer, Record record) {
    return integrate_from(problem, problem.initial, method, h, n_steps, observer_stride, observer, record);
}

namespace {

std::vector<State> sample_on_grid(const Problem& problem, std::span<const double> grid, double h) {
    const Stepper stepper(problem, Method::erkn, h);
    const DerivedConstants constants = stepper.constants();

    std::vector<State> out;
    out.reserve(grid.size());
    State current = problem.initial;
    std::size_t n = 0;
    for (double t : grid) {
        const auto target = static_cast<std::size_t>(std::floor(t / h * (1.0 + 1e-12)));
        for (; n < target; ++n) {
            current = stepper.step(current);
            if (!current.all_finite()) throw NoConvergence("reference run diverged at h = " + std::to_string(h));
        }
        const double rest = t - static_cast<double>(n) * h;
        if (rest > 1e-13 * std::max(1.0, t)) {
            const FilterTable partial = build_filter_table(rest, constants.upsilon);
            out.push_back(erkn_step(problem, constants, partial, current, rest));
        } else {
            out.push_back(current);
        }
    }
    return out;
}

}  // namespace

ReferenceSolution reference_solution(const Problem& problem, std::span<const double> grid, double tol,
                                     double h_start) {
    check_problem(problem);
    if (grid.empty()) throw std::invalid_argument("reference grid is empty");
    if (!(tol > 0.0)) throw std::invalid_argument("reference tolerance must be positive");
    if (!(h_start > 0.0)) throw std::invalid_argument("reference h_start must be positive");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw std::invalid_argument("reference grid must be nonnegative and strictly increasing");
        }
    }

    constexpr double kMinStep = 1e-8;
    double h = h_start;
    std::vector<State> coarse = sample_on_grid(problem, grid, h);
    while (true) {
        h *= 0.5;
        if (h < kMinStep) {
            throw NoConvergence("reference solution did not reach tol = " + std::to_string(tol) + " before h < 1e-8");
        }
        std::vector<State> fine = sample_on_grid(problem, grid, h);
        double diff = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) diff = std::max(diff, max_abs_difference(coarse[k], fine[k]));
        if (diff < tol) return {h, std::vector<double>(grid.begin(), grid.end()), std::move(fine)};
        coarse = std::move(fine);
    }
}

}  // namespace oscint
