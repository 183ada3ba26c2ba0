#pragma once

#include <optional>
#include <span>
#include <vector>

#include "oscint/integrators.hpp"
#include "oscint/kernels.hpp"
#include "oscint/model.hpp"

namespace oscint {

// Modified invariants of the one-stage ERKN scheme and of its upsilon = 0
// reduction (RKN, also used for Stormer-Verlet). All functions are pure.

/// omega_h = omega(q1) sqrt(1 - h^2/(4 eps^2) sinc^2(h upsilon/2) omega(q1)^2).
double modified_frequency(const Problem& problem, const DerivedConstants& constants, double h,
                          std::span<const double> q1);

/// Psi = cos(x/2)/bbar1(x) + x^2/2 * sinc(x/2)/b1(x) * sinc^2(x/2)/sinc^2(x) * omega_h^2/omega0^2,
/// x = h upsilon. Depends on q1 only through omega_h. At upsilon = 0 this is 2.
double psi_factor(const FilterTable& filters, const DerivedConstants& constants, double h, double omega_h);

double modified_action(const Problem& problem, const DerivedConstants& constants, const FilterTable& filters,
                       double h, const State& state);

/// (2 eps / h) arcsin((h / (2 eps)) sinc(h upsilon/2) omega(q1)).
double arcsine_frequency(const Problem& problem, const DerivedConstants& constants, double h,
                         std::span<const double> q1);

double modified_energy(const Problem& problem, const DerivedConstants& constants, const FilterTable& filters,
                       double h, const State& state);

double rkn_modified_action(const Problem& problem, double h, const State& state);
double rkn_modified_energy(const Problem& problem, double h, const State& state);

/// Left side of the stepsize condition, (h/eps) sinc(h upsilon/2) omega(q1).
double admissibility_lhs(const Problem& problem, const DerivedConstants& constants, double h,
                         std::span<const double> q1);

/// lhs <= 2 sin(pi / (N + 2)) for odd N >= 1 (boundary inclusive).
bool stepsize_admissible(const Problem& problem, const DerivedConstants& constants, double h,
                         std::span<const double> q1, int N);

/// Largest odd N for which the condition holds; nullopt if N = 1 already fails.
/// Saturates at INT_MAX when the left side is zero.
std::optional<int> max_admissible_N(const Problem& problem, const DerivedConstants& constants, double h,
                                    std::span<const double> q1);

struct DiagnosticSample {
    double t = 0.0;
    double H = 0.0;
    double I = 0.0;
    double Imod = 0.0;
    double Hmod = 0.0;
    double err_Imod = 0.0;
    double err_Hmod = 0.0;
};

/// Evaluates H, I and the modified pair matching the method: (I_h, H_h) for
/// ERKN, the hat quantities for RKN and SV. Errors are taken against the first
/// state passed to `reset` (normally the t = 0 state of the run).
class DiagnosticEvaluator {
public:
    DiagnosticEvaluator(const Problem& problem, Method method, double h);

    DiagnosticSample evaluate(double t, const State& state) const;
    void reset(const State& origin);
    bool has_origin() const noexcept { return has_origin_; }

    /// Raw (H, I, Imod, Hmod) without the error columns.
    DiagnosticSample values(double t, const State& state) const;

private:
    const Problem* problem_;
    Method method_;
    double h_;
    DerivedConstants constants_;
    FilterTable filters_;
    double Imod0_ = 0.0;
    double Hmod0_ = 0.0;
    bool has_origin_ = false;
};

}  // namespace oscint
