#include "oscint/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "oscint/errors.hpp"
#include "oscint/format.hpp"

namespace oscint {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_number(const std::string& text, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
    }
}

std::size_t parse_count(const std::string& text, const std::string& key) {
    const double v = parse_number(text, key);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e15) {
        throw ConfigError("'" + key + "' expects a positive integer, got '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

double log10_or_neg_inf(double x) { return x > 0.0 ? std::log10(x) : -std::numeric_limits<double>::infinity(); }

std::string cell_label(Method method, double h) { return std::string(to_string(method)) + "@" + format_double(h); }

Problem build_problem(const ExperimentConfig& config) {
    try {
        return make_preset(config.preset, config.eps);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

// Step index of time t on the grid of h; throws ConfigError if t is off-grid.
std::size_t grid_step(double t, double h, const char* what) {
    try {
        return step_count(t, h);
    } catch (const std::invalid_argument&) {
        throw ConfigError(std::string(what) + " " + format_double(t) + " is not a multiple of h = " + format_double(h));
    }
}

}  // namespace

std::vector<double> resolve_stepsizes(const std::vector<std::string>& tokens, double eps) {
    std::vector<double> out;
    for (const auto& token : tokens) {
        if (token.rfind("eps", 0) == 0) {
            const std::string rest = trim(std::string_view(token).substr(3));
            if (rest.empty()) {
                out.push_back(eps);
            } else if (rest[0] == '/') {
                out.push_back(eps / parse_number(trim(rest.substr(1)), "h"));
            } else if (rest[0] == '*') {
                out.push_back(eps * parse_number(trim(rest.substr(1)), "h"));
            } else {
                throw ConfigError("cannot parse stepsize '" + token + "'");
            }
        } else {
            out.push_back(parse_number(token, "h"));
        }
    }
    return out;
}

ExperimentConfig default_config(Command command) {
    ExperimentConfig c;
    switch (command) {
        case Command::run:
            break;
        case Command::conserve:
            c.methods = {Method::erkn, Method::sv};
            c.h_list = {0.01, 0.005, 0.0025};
            c.table_times = {100, 200, 300, 400, 500, 600, 700, 800, 900};
            break;
        case Command::converge:
            c.preset = PresetId::fpu_constant;
            c.methods = {Method::erkn, Method::rkn, Method::sv};
            c.h_list = {0.01, 0.005, 0.0025, 0.00125};
            c.t_end = 10.0;
            c.sample_stride = 1;
            break;
        case Command::drift:
            c.preset = PresetId::fpu_constant;
            c.methods = {Method::erkn, Method::sv};
            c.h_list = {0.005};
            c.t_end = 1000.0;
            c.t_end_list = {1, 10, 100, 1000};
            c.sample_stride = 1;
            break;
    }
    return c;
}

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base) {
    std::stringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    std::optional<std::pair<std::vector<std::string>, std::size_t>> h_tokens;

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + line + "'", line_no);
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (value.empty()) throw ConfigError("'" + key + "' has an empty value", line_no);

        try {
            if (key == "preset") {
                const auto id = parse_preset(value);
                if (!id) throw ConfigError("unknown preset '" + value + "'");
                base.preset = *id;
            } else if (key == "method" || key == "methods") {
                base.methods.clear();
                for (const auto& name : split_list(value)) {
                    const auto m = parse_method(name);
                    if (!m) throw ConfigError("unknown method '" + name + "'");
                    base.methods.push_back(*m);
                }
            } else if (key == "eps") {
                base.eps = parse_number(value, key);
            } else if (key == "h") {
                h_tokens.emplace(split_list(value), line_no);
            } else if (key == "t_end") {
                base.t_end = parse_number(value, key);
            } else if (key == "stride") {
                base.sample_stride = parse_count(value, key);
            } else if (key == "out") {
                base.output_path = value;
            } else if (key == "format") {
                if (value == "csv") base.format = OutputFormat::csv;
                else if (value == "json") base.format = OutputFormat::json;
                else throw ConfigError("format must be csv or json");
            } else if (key == "table_times") {
                base.table_times.clear();
                for (const auto& t : split_list(value)) base.table_times.push_back(parse_number(t, key));
            } else if (key == "t_end_list") {
                base.t_end_list.clear();
                for (const auto& t : split_list(value)) base.t_end_list.push_back(parse_number(t, key));
            } else if (key == "reference_tol") {
                base.reference_tol = parse_number(value, key);
            } else if (key == "execution") {
                if (value == "serial") base.execution = Execution::serial;
                else if (value == "parallel") base.execution = Execution::parallel;
                else throw ConfigError("execution must be serial or parallel");
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        } catch (const ConfigError& e) {
            if (e.line()) throw;
            throw ConfigError(e.what(), line_no);
        }
    }
    if (h_tokens) {
        try {
            base.h_list = resolve_stepsizes(h_tokens->first, base.eps);
        } catch (const ConfigError& e) {
            throw ConfigError(e.what(), h_tokens->second);
        }
    }
    return base;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config_text(ss.str(), std::move(base));
    } catch (const ConfigError& e) {
        throw ConfigError(path + ":" + e.what(), e.line());
    }
}

void validate(const ExperimentConfig& config, Command command) {
    if (config.methods.empty()) throw ConfigError("no method given");
    if (config.h_list.empty()) throw ConfigError("no stepsize given");
    if (config.sample_stride == 0) throw ConfigError("stride must be >= 1");
    if (!(config.eps > 0.0 && config.eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
    if (!(config.t_end > 0.0) || !std::isfinite(config.t_end)) throw ConfigError("t_end must be positive");
    for (double h : config.h_list) {
        if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("stepsizes must be positive");
    }
    build_problem(config);

    switch (command) {
        case Command::run:
            if (config.methods.size() != 1) throw ConfigError("run takes exactly one method");
            if (config.h_list.size() != 1) throw ConfigError("run takes exactly one stepsize");
            grid_step(config.t_end, config.h_list.front(), "t_end");
            break;
        case Command::conserve:
            for (double h : config.h_list) {
                grid_step(config.t_end, h, "t_end");
                for (double t : config.table_times) {
                    if (!(t > 0.0 && t <= config.t_end)) throw ConfigError("table times must lie in (0, t_end]");
                    if (grid_step(t, h, "table time") % config.sample_stride != 0) {
                        throw ConfigError("table time " + format_double(t) + " is not a sampled step for h = " +
                                          format_double(h) + " and stride " + std::to_string(config.sample_stride));
                    }
                }
            }
            break;
        case Command::converge:
            if (!(config.reference_tol >= 1e-12 && config.reference_tol <= 1e-6)) {
                throw ConfigError("reference_tol must lie in [1e-12, 1e-6]");
            }
            for (double h : config.h_list) grid_step(config.t_end, h, "t_end");
            break;
        case Command::drift:
            if (config.t_end_list.empty()) throw ConfigError("drift needs at least one t_end");
            for (std::size_t i = 0; i < config.t_end_list.size(); ++i) {
                const double t = config.t_end_list[i];
                if (!(t > 0.0) || (i > 0 && !(t > config.t_end_list[i - 1]))) {
                    throw ConfigError("t_end_list must be positive and increasing");
                }
                for (double h : config.h_list) {
                    if (grid_step(t, h, "t_end") % config.sample_stride != 0) {
                        throw ConfigError("t_end " + format_double(t) + " is not a sampled step for h = " +
                                          format_double(h));
                    }
                }
            }
            break;
    }
}

std::vector<std::string> admissibility_warnings(const ExperimentConfig& config) {
    const Problem problem = build_problem(config);
    std::vector<std::string> out;
    for (double h : config.h_list) {
        for (Method m : config.methods) {
            const DerivedConstants constants =
                m == Method::erkn ? DerivedConstants::from(problem) : DerivedConstants::unshifted();
            if (!stepsize_admissible(problem, constants, h, problem.initial.q1, 1)) {
                out.push_back(std::string(to_string(m)) + " h=" + format_double(h) +
                              ": stepsize condition fails for N = 1 at the initial state (lhs = " +
                              format_double(admissibility_lhs(problem, constants, h, problem.initial.q1)) + ")");
            }
        }
    }
    return out;
}

// --- run -------------------------------------------------------------------

RunResult run_single(const ExperimentConfig& config) {
    validate(config, Command::run);
    const Problem problem = build_problem(config);
    RunResult result;
    result.method = config.methods.front();
    result.h = config.h_list.front();
    result.n_steps = step_count(config.t_end, result.h);

    DiagnosticEvaluator evaluator(problem, result.method, result.h);
    evaluator.reset(problem.initial);
    auto observe = [&](std::size_t n, const State& s) {
        result.samples.push_back(evaluator.evaluate(static_cast<double>(n) * result.h, s));
    };
    try {
        integrate(problem, result.method, result.h, result.n_steps, config.sample_stride, observe, Record::none);
    } catch (const StepDiverged&) {
        result.diverged = true;
    }
    return result;
}

std::string run_csv(const RunResult& result) {
    CsvWriter csv({"t", "H", "I", "Imod", "Hmod", "err_Imod", "err_Hmod"});
    for (const auto& s : result.samples) {
        csv.field(s.t).field(s.H).field(s.I).field(s.Imod).field(s.Hmod).field(s.err_Imod).field(s.err_Hmod);
        csv.end_row();
    }
    return csv.str();
}

std::string run_json(const RunResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& s : result.samples) {
        rows.push_back({{"t", s.t},
                        {"H", s.H},
                        {"I", s.I},
                        {"Imod", s.Imod},
                        {"Hmod", s.Hmod},
                        {"err_Imod", s.err_Imod},
                        {"err_Hmod", s.err_Hmod}});
    }
    return rows.dump(1) + "\n";
}

// --- conserve --------------------------------------------------------------

ConserveStudy run_conserve(const ExperimentConfig& config) {
    validate(config, Command::conserve);
    const Problem problem = build_problem(config);

    ConserveStudy study;
    study.table_times = config.table_times;
    study.warnings = admissibility_warnings(config);
    for (double h : config.h_list) {
        for (Method m : config.methods) {
            ConserveCell cell;
            cell.method = m;
            cell.h = h;
            cell.n_steps = step_count(config.t_end, h);
            study.cells.push_back(std::move(cell));
        }
    }

    for_each_index(
        study.cells.size(),
        [&](std::size_t i) {
            ConserveCell& cell = study.cells[i];
            DiagnosticEvaluator evaluator(problem, cell.method, cell.h);
            evaluator.reset(problem.initial);
            auto observe = [&](std::size_t n, const State& s) {
                cell.samples.push_back(evaluator.evaluate(static_cast<double>(n) * cell.h, s));
            };
            try {
                integrate(problem, cell.method, cell.h, cell.n_steps, config.sample_stride, observe, Record::none);
            } catch (const StepDiverged&) {
                cell.status = "diverged";
            } catch (const InadmissibleStepsize&) {
                cell.status = "inadmissible";
            }
        },
        config.execution);
    return study;
}

std::optional<DiagnosticSample> sample_at(const ConserveCell& cell, double t) {
    for (const auto& s : cell.samples) {
        if (std::abs(s.t - t) <= 1e-9 * std::max(1.0, t)) return s;
    }
    return std::nullopt;
}

std::string conserve_series_csv(const ConserveStudy& study) {
    CsvWriter csv({"method", "h", "t", "err_Imod", "err_Hmod", "log10_err_Imod", "log10_err_Hmod", "status"});
    for (const auto& cell : study.cells) {
        for (const auto& s : cell.samples) {
            csv.field(to_string(cell.method)).field(cell.h).field(s.t).field(s.err_Imod).field(s.err_Hmod);
            csv.field(log10_or_neg_inf(s.err_Imod)).field(log10_or_neg_inf(s.err_Hmod)).field("ok");
            csv.end_row();
        }
        if (cell.status != "ok") {
            const double t = cell.samples.empty() ? 0.0 : cell.samples.back().t;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            csv.field(to_string(cell.method)).field(cell.h).field(t).field(nan).field(nan).field(nan).field(nan);
            csv.field(cell.status);
            csv.end_row();
        }
    }
    return csv.str();
}

std::string conserve_table_csv(const ConserveStudy& study) {
    std::vector<std::string> header{"quantity", "t"};
    for (const auto& cell : study.cells) header.push_back(cell_label(cell.method, cell.h));
    CsvWriter csv(std::move(header));
    for (const char* quantity : {"log10_err_Imod", "log10_err_Hmod"}) {
        const bool action_row = std::string_view(quantity) == "log10_err_Imod";
        for (double t : study.table_times) {
            csv.field(quantity).field(t);
            for (const auto& cell : study.cells) {
                const auto s = sample_at(cell, t);
                if (!s) {
                    csv.field(std::numeric_limits<double>::quiet_NaN());
                } else {
                    csv.field(log10_or_neg_inf(action_row ? s->err_Imod : s->err_Hmod));
                }
            }
            csv.end_row();
        }
    }
    return csv.str();
}

// --- converge --------------------------------------------------------------

ConvergeStudy run_converge(const ExperimentConfig& config) {
    validate(config, Command::converge);
    const Problem problem = build_problem(config);

    const double t_end = config.t_end;
    const double h_min = *std::min_element(config.h_list.begin(), config.h_list.end());
    const std::vector<double> grid{t_end};
    ReferenceSolution reference;
    try {
        reference = reference_solution(problem, grid, config.reference_tol, 0.5 * h_min);
    } catch (const CoefficientVanishes& e) {
        throw NoConvergence(e.what());
    }

    ConvergeStudy study;
    study.t_end = t_end;
    study.reference_h = reference.h;
    for (Method m : config.methods) {
        for (double h : config.h_list) {
            ConvergeRow row;
            row.method = m;
            row.h = h;
            row.n_steps = step_count(t_end, h);
            row.evals = force_evaluations_per_step(m) * row.n_steps;
            row.evals_fused = m == Method::sv ? row.n_steps + 1 : row.evals;
            study.rows.push_back(row);
        }
    }

    for_each_index(
        study.rows.size(),
        [&](std::size_t i) {
            ConvergeRow& row = study.rows[i];
            const Trajectory traj =
                integrate(problem, row.method, row.h, row.n_steps, std::max<std::size_t>(row.n_steps, 1));
            row.error = max_abs_difference(traj.states.back(), reference.states.front());
        },
        config.execution);
    return study;
}

std::string converge_csv(const ConvergeStudy& study) {
    CsvWriter csv({"method", "h", "n_steps", "evals", "evals_fused", "error", "log10_evals", "log10_evals_fused",
                   "log10_error"});
    for (const auto& r : study.rows) {
        csv.field(to_string(r.method)).field(r.h).field(r.n_steps).field(r.evals).field(r.evals_fused).field(r.error);
        csv.field(std::log10(static_cast<double>(r.evals)))
            .field(std::log10(static_cast<double>(r.evals_fused)))
            .field(log10_or_neg_inf(r.error));
        csv.end_row();
    }
    return csv.str();
}

double fitted_order(const ConvergeStudy& study, Method method) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& r : study.rows) {
        if (r.method != method) continue;
        const double x = std::log(r.h);
        const double y = std::log(r.error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("fitted_order needs at least two stepsizes");
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

// --- drift -----------------------------------------------------------------

DriftStudy run_drift(const ExperimentConfig& config) {
    validate(config, Command::drift);
    const Problem problem = build_problem(config);

    struct Cell {
        Method method;
        double h;
        std::vector<DriftRow> rows;
    };
    std::vector<Cell> cells;
    for (Method m : config.methods) {
        for (double h : config.h_list) cells.push_back({m, h, {}});
    }

    for_each_index(
        cells.size(),
        [&](std::size_t i) {
            Cell& cell = cells[i];
            std::vector<std::size_t> checkpoints;
            for (double t : config.t_end_list) checkpoints.push_back(step_count(t, cell.h));
            const double h0 = total_energy(problem, problem.initial);
            double running_max = 0.0;
            std::size_t next = 0;
            auto observe = [&](std::size_t n, const State& s) {
                running_max = std::max(running_max, std::abs(total_energy(problem, s) - h0));
                while (next < checkpoints.size() && checkpoints[next] == n) {
                    cell.rows.push_back({cell.method, cell.h, config.t_end_list[next], running_max});
                    ++next;
                }
            };
            integrate(problem, cell.method, cell.h, checkpoints.back(), config.sample_stride, observe, Record::none);
        },
        config.execution);

    DriftStudy study;
    for (auto& cell : cells) {
        for (auto& row : cell.rows) study.rows.push_back(row);
    }
    return study;
}

std::string drift_csv(const DriftStudy& study) {
    CsvWriter csv({"method", "h", "t_end", "max_energy_error", "log10_t_end", "log10_max_energy_error"});
    for (const auto& r : study.rows) {
        csv.field(to_string(r.method)).field(r.h).field(r.t_end).field(r.max_energy_error);
        csv.field(std::log10(r.t_end)).field(log10_or_neg_inf(r.max_energy_error));
        csv.end_row();
    }
    return csv.str();
}

}  // namespace oscint
