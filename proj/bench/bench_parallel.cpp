// Serial vs OpenMP timings for the two parallel kernels: independent study
// cells and batched diagnostic evaluation. Also checks that both paths give
// identical output.
//
//   bench_parallel [t_end]      (default 100)

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "oscint/harness.hpp"
#include "oscint/parallel.hpp"
#include "oscint/problems.hpp"

using namespace oscint;

namespace {

template <class Fn>
double time_ms(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    const double t_end = argc > 1 ? std::atof(argv[1]) : 100.0;
    std::cout << "threads " << thread_budget() << "\n";

    ExperimentConfig config = default_config(Command::conserve);
    config.methods = {Method::erkn, Method::rkn, Method::sv};
    config.t_end = t_end;
    config.table_times.clear();

    std::string serial_csv, parallel_csv;
    config.execution = Execution::serial;
    const double cells_serial = time_ms([&] { serial_csv = conserve_series_csv(run_conserve(config)); });
    config.execution = Execution::parallel;
    const double cells_parallel = time_ms([&] { parallel_csv = conserve_series_csv(run_conserve(config)); });
    std::cout << "conserve cells  serial " << cells_serial << " ms  parallel " << cells_parallel << " ms  speedup "
              << cells_serial / cells_parallel << (serial_csv == parallel_csv ? "  (identical)\n" : "  (MISMATCH)\n");

    const Problem problem = fpu_varying(0.01);
    const double h = 0.01;
    const Trajectory traj = integrate(problem, Method::erkn, h, step_count(t_end, h), 1);
    DiagnosticEvaluator evaluator(problem, Method::erkn, h);
    evaluator.reset(problem.initial);

    std::vector<DiagnosticSample> a, b;
    const double batch_serial = time_ms([&] { a = evaluate_samples(evaluator, traj, Execution::serial); });
    const double batch_parallel = time_ms([&] { b = evaluate_samples(evaluator, traj, Execution::parallel); });
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].Hmod == b[i].Hmod && a[i].Imod == b[i].Imod;
    std::cout << "diagnostics " << a.size() << " samples  serial " << batch_serial << " ms  parallel "
              << batch_parallel << " ms  speedup " << batch_serial / batch_parallel
              << (same ? "  (identical)\n" : "  (MISMATCH)\n");
    return (serial_csv == parallel_csv && same) ? 0 : 1;
}
