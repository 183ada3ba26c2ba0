// oscint: command-line driver for the oscillatory-integrator experiments.
//
//   oscint run      --preset fpu_varying --method erkn --h 0.01 --t-end 1000
//   oscint conserve --method erkn,sv --h eps,eps/2,eps/4
//   oscint converge
//   oscint drift
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oscint/errors.hpp"
#include "oscint/format.hpp"
#include "oscint/harness.hpp"

namespace {

using namespace oscint;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Flags {
    std::optional<std::string> config_file;
    std::optional<std::string> preset;
    std::vector<std::string> methods;
    std::optional<double> eps;
    std::vector<std::string> h;
    std::optional<double> t_end;
    std::optional<std::size_t> stride;
    std::optional<std::string> out;
    std::optional<std::string> table_out;
    std::optional<std::string> format;
    std::vector<double> table_times;
    std::vector<double> t_end_list;
    std::optional<double> reference_tol;
    bool serial = false;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->set_help_flag("--help", "print this help");
    sub->add_option("--config", f.config_file, "key = value config file, applied before the flags");
    sub->add_option("--preset", f.preset, "fpu_varying | fpu_constant | linear_test | single_fast_dof");
    sub->add_option("--method", f.methods, "erkn | rkn | sv (comma separated for studies)")->delimiter(',');
    sub->add_option("--eps", f.eps, "small parameter eps");
    sub->add_option("--h", f.h, "stepsizes: numbers or eps, eps/k, eps*k")->delimiter(',');
    sub->add_option("--t-end", f.t_end, "final time");
    sub->add_option("--stride", f.stride, "sample every N steps");
    sub->add_option("--out", f.out, "output file (default stdout)");
    sub->add_flag("--serial", f.serial, "run study cells one after another");
}

ExperimentConfig build_config(Command command, const Flags& f) {
    const ExperimentConfig defaults = default_config(command);
    ExperimentConfig c = defaults;
    if (f.config_file) c = load_config_file(*f.config_file, c);

    if (f.preset) {
        const auto id = parse_preset(*f.preset);
        if (!id) throw ConfigError("unknown preset '" + *f.preset + "'");
        c.preset = *id;
    }
    if (!f.methods.empty()) {
        c.methods.clear();
        for (const auto& name : f.methods) {
            const auto m = parse_method(name);
            if (!m) throw ConfigError("unknown method '" + name + "'");
            c.methods.push_back(*m);
        }
    }
    if (f.eps) c.eps = *f.eps;
    if (!f.h.empty()) {
        c.h_list = resolve_stepsizes(f.h, c.eps);
    } else if (command == Command::conserve && c.h_list == defaults.h_list && c.eps != defaults.eps) {
        c.h_list = resolve_stepsizes({"eps", "eps/2", "eps/4"}, c.eps);
    }
    if (f.t_end) c.t_end = *f.t_end;
    if (f.stride) c.sample_stride = *f.stride;
    if (f.out) c.output_path = *f.out;
    if (f.format) c.format = *f.format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (!f.table_times.empty()) c.table_times = f.table_times;
    if (!f.t_end_list.empty()) {
        c.t_end_list = f.t_end_list;
        if (!f.t_end) c.t_end = f.t_end_list.back();
    }
    if (f.reference_tol) c.reference_tol = *f.reference_tol;
    if (f.serial) c.execution = Execution::serial;
    validate(c, command);
    return c;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

std::string default_table_path(const std::string& out) {
    std::filesystem::path p(out);
    return (p.parent_path() / (p.stem().string() + "_table.csv")).string();
}

int dispatch(Command command, const Flags& f) {
    const ExperimentConfig config = build_config(command, f);
    switch (command) {
        case Command::run: {
            const RunResult result = run_single(config);
            write_output(config.output_path, config.format == OutputFormat::json ? run_json(result) : run_csv(result));
            if (result.diverged) {
                std::cerr << "oscint: trajectory diverged after t = "
                          << (result.samples.empty() ? std::string("0") : format_double(result.samples.back().t))
                          << "\n";
                return kExitNumerical;
            }
            return 0;
        }
        case Command::conserve: {
            const ConserveStudy study = run_conserve(config);
            for (const auto& w : study.warnings) std::cerr << "oscint: warning: " << w << "\n";
            for (const auto& cell : study.cells) {
                if (cell.status != "ok") {
                    std::cerr << "oscint: " << to_string(cell.method) << " h=" << format_double(cell.h)
                              << " aborted (" << cell.status << ")\n";
                }
            }
            if (config.output_path.empty() && !f.table_out) {
                std::cout << conserve_series_csv(study) << "\n" << conserve_table_csv(study);
            } else {
                write_output(config.output_path, conserve_series_csv(study));
                write_output(f.table_out ? *f.table_out : default_table_path(config.output_path),
                             conserve_table_csv(study));
            }
            return 0;
        }
        case Command::converge:
            write_output(config.output_path, converge_csv(run_converge(config)));
            return 0;
        case Command::drift:
            write_output(config.output_path, drift_csv(run_drift(config)));
            return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Long-time integration of oscillatory Hamiltonian systems with ERKN, RKN and Stormer-Verlet"};
    app.require_subcommand(1);

    Flags run_flags, conserve_flags, converge_flags, drift_flags;

    auto* run = app.add_subcommand("run", "single trajectory with the full diagnostic stream");
    add_common(run, run_flags);
    run->add_option("--format", run_flags.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    auto* conserve = app.add_subcommand("conserve", "modified action/energy errors and the log10 error table");
    add_common(conserve, conserve_flags);
    conserve->add_option("--table-out", conserve_flags.table_out, "file for the log10 error table");
    conserve->add_option("--table-times", conserve_flags.table_times, "times of the table rows")->delimiter(',');

    auto* converge = app.add_subcommand("converge", "global error against force evaluations");
    add_common(converge, converge_flags);
    converge->add_option("--reference-tol", converge_flags.reference_tol, "reference solution tolerance");

    auto* drift = app.add_subcommand("drift", "maximum energy error against t_end");
    add_common(drift, drift_flags);
    drift->add_option("--t-end-list", drift_flags.t_end_list, "nested horizons")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (run->parsed()) return dispatch(Command::run, run_flags);
        if (conserve->parsed()) return dispatch(Command::conserve, conserve_flags);
        if (converge->parsed()) return dispatch(Command::converge, converge_flags);
        return dispatch(Command::drift, drift_flags);
    } catch (const ConfigError& e) {
        std::cerr << "oscint: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const StepDiverged& e) {
        std::cerr << "oscint: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        std::cerr << "oscint: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const NoConvergence& e) {
        std::cerr << "oscint: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const InvalidState& e) {
        std::cerr << "oscint: " << e.what() << "\n";
        return kExitNumerical;
    }
}
