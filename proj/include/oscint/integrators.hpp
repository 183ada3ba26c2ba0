#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "oscint/kernels.hpp"
#include "oscint/model.hpp"

namespace oscint {

enum class Method { erkn, rkn, sv };

std::string_view to_string(Method method) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

/// Force evaluations per step: 1 for ERKN/RKN, 2 for the restartable SV form.
std::size_t force_evaluations_per_step(Method method) noexcept;

/// One-stage explicit ERKN step with c1 = 1/2, bbar1 = sinc^2(x/2)/2, b1 = cos(x/2) sinc(x/2).
/// `filters` must be built for (|h|, constants.upsilon); a negative h steps backwards.
State erkn_step(const Problem& problem, const DerivedConstants& constants, const FilterTable& filters,
                const State& state, double h);

/// One-stage RKN with c1 = 1/2, bbar1 = 1/2, b1 = 1 on the full force.
State rkn_step(const Problem& problem, const State& state, double h);

/// Stormer-Verlet (kick-drift-kick) on the full force.
State sv_step(const Problem& problem, const State& state, double h);

/// Step map of one method at a fixed stepsize, with the ERKN filter values
/// computed once on construction.
class Stepper {
public:
    Stepper(const Problem& problem, Method method, double h);

    State step(const State& state) const;
    /// Same map with the stepsize negated (the adjoint direction).
    State step_back(const State& state) const;

    Method method() const noexcept { return method_; }
    double h() const noexcept { return h_; }
    const DerivedConstants& constants() const noexcept { return constants_; }
    const FilterTable& filters() const noexcept { return filters_; }

private:
    State apply(const State& state, double h) const;

    const Problem* problem_;
    Method method_;
    double h_;
    DerivedConstants constants_;
    FilterTable filters_;
};

/// Sampled trajectory. steps[k] is the step index of states[k]; times[k] = steps[k] * h.
struct Trajectory {
    Method method = Method::erkn;
    double h = 0.0;
    std::vector<std::size_t> steps;
    std::vector<double> times;
    std::vector<State> states;
};

using Observer = std::function<void(std::size_t step, const State& state)>;

enum class Record { samples, none };

/// Applies the step map n_steps times from problem.initial. The observer sees
/// step 0, every multiple of observer_stride, and the final step. Throws
/// StepDiverged (with the last finite state) on the first non-finite step.
Trajectory integrate(const Problem& problem, Method method, double h, std::size_t n_steps,
                     std::size_t observer_stride, const Observer& observer = {},
                     Record record = Record::samples);

/// As integrate, starting from `start` at step 0. omega0 still comes from
/// problem.initial, so a restarted run continues the same step map.
Trajectory integrate_from(const Problem& problem, const State& start, Method method, double h,
                          std::size_t n_steps, std::size_t observer_stride,
                          const Observer& observer = {}, Record record = Record::samples);

/// Number of steps of size h covering [0, t_end]; throws std::invalid_argument
/// if t_end / h is not an integer to within a few ulps.
std::size_t step_count(double t_end, double h);

struct ReferenceSolution {
    double h = 0.0;
    std::vector<double> grid;
    std::vector<State> states;
};

/// High-accuracy ERKN solution on an increasing time grid. The stepsize is
/// halved from h_start until two successive runs differ by less than tol in
/// max-norm at every grid point; the finer run is returned.
/// Throws NoConvergence when h drops below 1e-8.
ReferenceSolution reference_solution(const Problem& problem, std::span<const double> grid, double tol,
                                     double h_start = 1e-3);

}  // namespace oscint
