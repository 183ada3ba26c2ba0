#include "oscint/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oscint {

int thread_budget() {
    if (const char* env = std::getenv("OSCINT_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
            // fall through to the default
        }
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace detail {

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace detail

std::vector<DiagnosticSample> evaluate_samples(const DiagnosticEvaluator& evaluator, const Trajectory& trajectory,
                                               Execution execution) {
    std::vector<DiagnosticSample> out(trajectory.states.size());
    for_each_index(
        out.size(), [&](std::size_t k) { out[k] = evaluator.evaluate(trajectory.times[k], trajectory.states[k]); },
        execution);
    return out;
}

}  // namespace oscint
