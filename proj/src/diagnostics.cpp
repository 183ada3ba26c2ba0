#include "oscint/diagnostics.hpp"

#include <climits>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "oscint/errors.hpp"

namespace oscint {

namespace {

// (h / (2 eps)) sinc(h upsilon / 2) omega(q1); the modified frequencies need it <= 1.
double half_lhs(const Problem& problem, const DerivedConstants& constants, double h, std::span<const double> q1) {
    return h / (2.0 * problem.eps) * sinc(0.5 * h * constants.upsilon) * problem.omega(q1);
}

double checked_sqrt_radicand(double a) {
    const double radicand = 1.0 - a * a;
    if (radicand < 0.0) {
        throw InadmissibleStepsize("modified frequency radicand is negative (h sinc(h upsilon/2) omega / (2 eps) = " +
                                   std::to_string(a) + ")");
    }
    return std::sqrt(radicand);
}

double checked_arcsin(double a) {
    if (a > 1.0) {
        throw InadmissibleStepsize("arcsin argument " + std::to_string(a) + " exceeds 1");
    }
    return std::asin(a);
}

}  // namespace

double modified_frequency(const Problem& problem, const DerivedConstants& constants, double h,
                          std::span<const double> q1) {
    return problem.omega(q1) * checked_sqrt_radicand(half_lhs(problem, constants, h, q1));
}

double psi_factor(const FilterTable& filters, const DerivedConstants& constants, double h, double omega_h) {
    if (std::abs(filters.b_fast) <= kCoefficientFloor || std::abs(filters.bbar_fast) <= kCoefficientFloor) {
        throw CoefficientVanishes("Psi needs nonzero b1 and bbar1");
    }
    const double first = filters.cos_half / filters.bbar_fast;
    if (constants.upsilon == 0.0) return first;
    if (std::abs(filters.sinc_full) <= kCoefficientFloor) throw SincPole("sinc(h upsilon) vanishes");

    const double x = h * constants.upsilon;
    const double sinc_ratio = filters.sinc_half / filters.sinc_full;
    const double freq_ratio = omega_h / constants.omega0;
    return first + 0.5 * x * x * filters.sinc_half / filters.b_fast * (sinc_ratio * sinc_ratio) *
                       (freq_ratio * freq_ratio);
}

double modified_action(const Problem& problem, const DerivedConstants& constants, const FilterTable& filters,
                       double h, const State& state) {
    const double wh = modified_frequency(problem, constants, h, state.q1);
    const double psi = psi_factor(filters, constants, h, wh);
    const double eps2 = problem.eps * problem.eps;
    const double kinetic = psi * filters.sinc_full * filters.sinc_full / (2.0 * filters.sinc_half) *
                           squared_norm(state.p2) / (2.0 * wh);
    const double potential = psi * filters.sinc_half / 2.0 * wh / (2.0 * eps2) * squared_norm(state.q2);
    return kinetic + potential;
}

double arcsine_frequency(const Problem& problem, const DerivedConstants& constants, double h,
                         std::span<const double> q1) {
    return 2.0 * problem.eps / h * checked_arcsin(half_lhs(problem, constants, h, q1));
}

double modified_energy(const Problem& problem, const DerivedConstants& constants, const FilterTable& filters,
                       double h, const State& state) {
    const Positions q = state.positions();
    const double w = problem.omega(state.q1);
    const double wh = modified_frequency(problem, constants, h, state.q1);
    const double psi = psi_factor(filters, constants, h, wh);
    const double shift = (1.0 - psi * filters.bbar_fast) * (w * w - constants.omega0 * constants.omega0) /
                         (problem.eps * problem.eps) * squared_norm(state.q2);
    return 0.5 * squared_norm(state.p1) +
           arcsine_frequency(problem, constants, h, state.q1) * modified_action(problem, constants, filters, h, state) +
           problem.potential(q) + shift;
}

double rkn_modified_action(const Problem& problem, double h, const State& state) {
    const double w = problem.omega(state.q1);
    const double wh = w * checked_sqrt_radicand(h * w / (2.0 * problem.eps));
    return squared_norm(state.p2) / (2.0 * wh) + wh / (2.0 * problem.eps * problem.eps) * squared_norm(state.q2);
}

double rkn_modified_energy(const Problem& problem, double h, const State& state) {
    const double w = problem.omega(state.q1);
    const double freq = 2.0 * problem.eps / h * checked_arcsin(h * w / (2.0 * problem.eps));
    return 0.5 * squared_norm(state.p1) + freq * rkn_modified_action(problem, h, state) +
           problem.potential(state.positions());
}

double admissibility_lhs(const Problem& problem, const DerivedConstants& constants, double h,
                         std::span<const double> q1) {
    return h / problem.eps * sinc(0.5 * h * constants.upsilon) * problem.omega(q1);
}

namespace {

bool admissible(double lhs, long long N) {
    return lhs <= 2.0 * std::sin(std::numbers::pi / static_cast<double>(N + 2));
}

}  // namespace

bool stepsize_admissible(const Problem& problem, const DerivedConstants& constants, double h,
                         std::span<const double> q1, int N) {
    if (N < 1 || N % 2 == 0) throw std::invalid_argument("N must be an odd integer >= 1");
    return admissible(admissibility_lhs(problem, constants, h, q1), N);
}

std::optional<int> max_admissible_N(const Problem& problem, const DerivedConstants& constants, double h,
                                    std::span<const double> q1) {
    const double lhs = admissibility_lhs(problem, constants, h, q1);
    if (!admissible(lhs, 1)) return std::nullopt;
    if (lhs <= 0.0) return INT_MAX;

    // sin(pi/(N+2)) >= lhs/2  <=>  N <= pi / arcsin(lhs/2) - 2, then fix rounding.
    const double bound = std::numbers::pi / std::asin(0.5 * lhs) - 2.0;
    if (bound >= static_cast<double>(INT_MAX)) return INT_MAX;
    long long n = static_cast<long long>(std::floor(bound));
    if (n % 2 == 0) --n;
    n = std::max(n, 1LL);
    while (n + 2 <= INT_MAX && admissible(lhs, n + 2)) n += 2;
    while (n > 1 && !admissible(lhs, n)) n -= 2;
    return static_cast<int>(n);
}

DiagnosticEvaluator::DiagnosticEvaluator(const Problem& problem, Method method, double h)
    : problem_(&problem), method_(method), h_(h), constants_(DerivedConstants::from(problem)) {
    if (!(h > 0.0)) throw std::invalid_argument("diagnostics need h > 0");
    if (method == Method::erkn) filters_ = build_filter_table(h, constants_.upsilon);
}

DiagnosticSample DiagnosticEvaluator::values(double t, const State& state) const {
    DiagnosticSample s;
    s.t = t;
    s.H = total_energy(*problem_, state);
    s.I = action(*problem_, state);
    if (method_ == Method::erkn) {
        s.Imod = modified_action(*problem_, constants_, filters_, h_, state);
        s.Hmod = modified_energy(*problem_, constants_, filters_, h_, state);
    } else {
        s.Imod = rkn_modified_action(*problem_, h_, state);
        s.Hmod = rkn_modified_energy(*problem_, h_, state);
    }
    return s;
}

void DiagnosticEvaluator::reset(const State& origin) {
    const DiagnosticSample s = values(0.0, origin);
    Imod0_ = s.Imod;
    Hmod0_ = s.Hmod;
    has_origin_ = true;
}

DiagnosticSample DiagnosticEvaluator::evaluate(double t, const State& state) const {
    if (!has_origin_) throw std::logic_error("DiagnosticEvaluator::evaluate before reset");
    DiagnosticSample s = values(t, state);
    s.err_Imod = std::abs(s.Imod - Imod0_);
    s.err_Hmod = std::abs(s.Hmod - Hmod0_);
    return s;
}

}  // namespace oscint
