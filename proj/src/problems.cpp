#include "oscint/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace oscint {

namespace {

double cube(double x) { return x * x * x; }

// Quartic FPU coupling between the slow and fast chains.
double fpu_potential(const Positions& q) {
    const double a = q.q1[0] - q.q2[0];
    const double b = q.q1[1] - q.q1[2] - q.q1[0] - q.q2[0];
    const double c = q.q1[2] - q.q2[0] - q.q1[1] - q.q2[1];
    const double d = q.q1[2] + q.q2[2];
    return 0.25 * (a * a * a * a + b * b * b * b + c * c * c * c + d * d * d * d);
}

BlockVector fpu_grad_potential(const Positions& q) {
    const double a3 = cube(q.q1[0] - q.q2[0]);
    const double b3 = cube(q.q1[1] - q.q1[2] - q.q1[0] - q.q2[0]);
    const double c3 = cube(q.q1[2] - q.q2[0] - q.q1[1] - q.q2[1]);
    const double d3 = cube(q.q1[2] + q.q2[2]);
    return {{a3 - b3, b3 - c3, -b3 + c3 + d3}, {-a3 - b3 - c3, -c3, d3}};
}

double varying_omega(double q11) {
    const double s = std::sin(q11);
    return 1.0 + s * s;
}

Problem fpu_base(double eps, const char* name) {
    if (!(eps > 0.0 && eps <= 0.1)) throw std::invalid_argument("FPU presets need eps in (0, 0.1]");
    Problem p;
    p.name = name;
    p.d1 = 3;
    p.d2 = 3;
    p.eps = eps;
    p.potential = fpu_potential;
    p.grad_potential = fpu_grad_potential;
    p.initial.q1 = {1.0, 0.0, 0.0};
    p.initial.p1 = {1.0, 0.0, 0.0};
    p.initial.q2 = {eps / varying_omega(1.0), 0.0, 0.0};
    p.initial.p2 = {1.0, 0.0, 0.0};
    return p;
}

}  // namespace

std::string_view to_string(PresetId id) noexcept {
    switch (id) {
        case PresetId::fpu_varying: return "fpu_varying";
        case PresetId::fpu_constant: return "fpu_constant";
        case PresetId::linear_test: return "linear_test";
        case PresetId::single_fast_dof: return "single_fast_dof";
    }
    return "?";
}

std::optional<PresetId> parse_preset(std::string_view name) noexcept {
    for (PresetId id : {PresetId::fpu_varying, PresetId::fpu_constant, PresetId::linear_test,
                        PresetId::single_fast_dof}) {
        if (name == to_string(id)) return id;
    }
    return std::nullopt;
}

Problem fpu_varying(double eps) {
    Problem p = fpu_base(eps, "fpu_varying");
    p.omega = [](std::span<const double> q1) { return varying_omega(q1[0]); };
    p.grad_omega = [](std::span<const double> q1) {
        return std::vector<double>{std::sin(2.0 * q1[0]), 0.0, 0.0};
    };
    return p;
}

Problem fpu_constant(double eps) {
    Problem p = fpu_base(eps, "fpu_constant");
    const double w0 = varying_omega(1.0);
    p.omega = [w0](std::span<const double>) { return w0; };
    p.grad_omega = [](std::span<const double>) { return std::vector<double>(3, 0.0); };
    return p;
}

Problem linear_test(double eps, double omega0) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("linear_test needs eps in (0, 1)");
    if (!(omega0 >= 1.0)) throw std::invalid_argument("linear_test needs omega0 >= 1");
    Problem p;
    p.name = "linear_test";
    p.d1 = 2;
    p.d2 = 2;
    p.eps = eps;
    p.omega = [omega0](std::span<const double>) { return omega0; };
    p.grad_omega = [](std::span<const double>) { return std::vector<double>(2, 0.0); };
    p.potential = [](const Positions&) { return 0.0; };
    p.grad_potential = [](const Positions&) { return BlockVector{{0.0, 0.0}, {0.0, 0.0}}; };
    p.initial.q1 = {1.0, -0.5};
    p.initial.p1 = {0.25, 0.125};
    p.initial.q2 = {eps / omega0, -0.5 * eps / omega0};
    p.initial.p2 = {1.0, 0.5};

    const State start = p.initial;
    const double upsilon = omega0 / eps;
    p.exact = [start, upsilon](double t) {
        State s = start;
        const double c = std::cos(upsilon * t);
        const double sn = std::sin(upsilon * t);
        for (std::size_t i = 0; i < 2; ++i) {
            s.q1[i] = start.q1[i] + t * start.p1[i];
            s.q2[i] = c * start.q2[i] + sn / upsilon * start.p2[i];
            s.p2[i] = -upsilon * sn * start.q2[i] + c * start.p2[i];
        }
        return s;
    };
    return p;
}

Problem single_fast_dof(double eps) {
    if (!(eps > 0.0 && eps <= 0.1)) throw std::invalid_argument("single_fast_dof needs eps in (0, 0.1]");
    Problem p;
    p.name = "single_fast_dof";
    p.d1 = 1;
    p.d2 = 1;
    p.eps = eps;
    p.omega = [](std::span<const double> q1) { return varying_omega(q1[0]); };
    p.grad_omega = [](std::span<const double> q1) { return std::vector<double>{std::sin(2.0 * q1[0])}; };
    p.potential = [](const Positions& q) {
        const double d = q.q1[0] - q.q2[0];
        return 0.25 * d * d * d * d;
    };
    p.grad_potential = [](const Positions& q) {
        const double d3 = cube(q.q1[0] - q.q2[0]);
        return BlockVector{{d3}, {-d3}};
    };
    p.initial.q1 = {1.0};
    p.initial.p1 = {1.0};
    p.initial.q2 = {eps / varying_omega(1.0)};
    p.initial.p2 = {1.0};
    return p;
}

Problem make_preset(PresetId id, double eps) {
    switch (id) {
        case PresetId::fpu_varying: return fpu_varying(eps);
        case PresetId::fpu_constant: return fpu_constant(eps);
        case PresetId::linear_test: return linear_test(eps, varying_omega(1.0));
        case PresetId::single_fast_dof: return single_fast_dof(eps);
    }
    throw std::invalid_argument("unknown preset");
}

}  // namespace oscint
