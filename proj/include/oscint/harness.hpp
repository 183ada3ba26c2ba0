#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscint/diagnostics.hpp"
#include "oscint/integrators.hpp"
#include "oscint/parallel.hpp"
#include "oscint/problems.hpp"

namespace oscint {

/// Invalid experiment configuration. `line()` is set when the error comes
/// from a config file.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what, std::optional<std::size_t> line = std::nullopt)
        : std::runtime_error(line ? "line " + std::to_string(*line) + ": " + what : what), line_(line) {}

    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    std::optional<std::size_t> line_;
};

enum class Command { run, conserve, converge, drift };
enum class OutputFormat { csv, json };

struct ExperimentConfig {
    PresetId preset = PresetId::fpu_varying;
    std::vector<Method> methods{Method::erkn};
    double eps = 0.01;
    std::vector<double> h_list{0.01};
    double t_end = 1000.0;
    std::size_t sample_stride = 10;
    std::string output_path;  // empty: stdout
    OutputFormat format = OutputFormat::csv;
    /// conserve: times of the log10 error table.
    std::vector<double> table_times;
    /// drift: nested horizons; the run goes to the largest.
    std::vector<double> t_end_list;
    /// converge: max-norm tolerance of the reference solution.
    double reference_tol = 1e-9;
    Execution execution = Execution::parallel;
};

/// Defaults of each subcommand (the published experiment settings).
ExperimentConfig default_config(Command command);

/// Applies `key = value` lines ('#' starts a comment) on top of `base`.
/// Errors carry the 1-based line number.
ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base);
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base);

/// Stepsize tokens: a number, "eps", "eps/k" or "eps*k".
std::vector<double> resolve_stepsizes(const std::vector<std::string>& tokens, double eps);

/// Throws ConfigError when the config is unusable for `command`.
void validate(const ExperimentConfig& config, Command command);

/// One message per (method, h) whose stepsize condition fails for N = 1 at the initial state.
std::vector<std::string> admissibility_warnings(const ExperimentConfig& config);

// --- run -------------------------------------------------------------------

struct RunResult {
    Method method = Method::erkn;
    double h = 0.0;
    std::size_t n_steps = 0;
    std::vector<DiagnosticSample> samples;
    bool diverged = false;
};

RunResult run_single(const ExperimentConfig& config);
std::string run_csv(const RunResult& result);
std::string run_json(const RunResult& result);

// --- conserve --------------------------------------------------------------

struct ConserveCell {
    Method method = Method::erkn;
    double h = 0.0;
    std::size_t n_steps = 0;
    std::vector<DiagnosticSample> samples;
    /// "ok", "diverged" or "inadmissible".
    std::string status = "ok";
};

struct ConserveStudy {
    std::vector<ConserveCell> cells;  // h-major, then method, in declared order
    std::vector<double> table_times;
    std::vector<std::string> warnings;
};

ConserveStudy run_conserve(const ExperimentConfig& config);
/// Rows (method, h, t, err_Imod, err_Hmod, log10_err_Imod, log10_err_Hmod, status).
std::string conserve_series_csv(const ConserveStudy& study);
/// Rows (quantity, t) x columns method@h: log10 errors of Imod and Hmod at the table times.
std::string conserve_table_csv(const ConserveStudy& study);

/// Error of one cell at time t, or nullopt when t was not sampled.
std::optional<DiagnosticSample> sample_at(const ConserveCell& cell, double t);

// --- converge --------------------------------------------------------------

struct ConvergeRow {
    Method method = Method::erkn;
    double h = 0.0;
    std::size_t n_steps = 0;
    std::size_t evals = 0;        // force evaluations, restartable SV form
    std::size_t evals_fused = 0;  // SV with half-step reuse: n_steps + 1
    double error = 0.0;           // max-norm global error at t_end
};

struct ConvergeStudy {
    double t_end = 0.0;
    double reference_h = 0.0;
    std::vector<ConvergeRow> rows;  // method-major, then h
};

ConvergeStudy run_converge(const ExperimentConfig& config);
std::string converge_csv(const ConvergeStudy& study);

/// Least-squares slope of log(error) against log(h) for one method's rows.
double fitted_order(const ConvergeStudy& study, Method method);

// --- drift -----------------------------------------------------------------

struct DriftRow {
    Method method = Method::erkn;
    double h = 0.0;
    double t_end = 0.0;
    double max_energy_error = 0.0;
};

struct DriftStudy {
    std::vector<DriftRow> rows;  // method-major, then t_end
};

DriftStudy run_drift(const ExperimentConfig& config);
std::string drift_csv(const DriftStudy& study);

}  // namespace oscint
