#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include "oscint/diagnostics.hpp"
#include "oscint/integrators.hpp"

namespace oscint {

enum class Execution { serial, parallel };

/// Worker count for parallel sections: OSCINT_THREADS if set to a positive
/// integer, otherwise the OpenMP default (machine parallelism).
int thread_budget();

namespace detail {
void rethrow_first(const std::vector<std::exception_ptr>& errors);
}

/// Calls fn(i) for i in [0, n). Iterations must be independent and write only
/// to their own slot. Exceptions are collected per index and the lowest-index
/// one is rethrown after the loop, so failures are reported deterministically.
template <class Fn>
void for_each_index(std::size_t n, Fn&& fn, Execution execution = Execution::parallel) {
    std::vector<std::exception_ptr> errors(n);
    if (execution == Execution::serial) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_budget())
        for (long long i = 0; i < count; ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    }
    detail::rethrow_first(errors);
}

/// Diagnostics for every recorded state of a trajectory. `evaluator` must
/// already have its origin set.
std::vector<DiagnosticSample> evaluate_samples(const DiagnosticEvaluator& evaluator, const Trajectory& trajectory,
                                               Execution execution = Execution::parallel);

}  // namespace oscint
