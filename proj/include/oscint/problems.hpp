#pragma once

#include <optional>
#include <string_view>

#include "oscint/model.hpp"

namespace oscint {

enum class PresetId { fpu_varying, fpu_constant, linear_test, single_fast_dof };

std::string_view to_string(PresetId id) noexcept;
std::optional<PresetId> parse_preset(std::string_view name) noexcept;

/// Fermi-Pasta-Ulam chain with omega(q1) = 1 + sin^2(q11), d1 = d2 = 3.
/// Initial values q11 = 1, p11 = 1, p21 = 1, q21 = eps/omega(q1(0)), rest zero.
Problem fpu_varying(double eps);

/// fpu_varying with omega frozen at 1 + sin^2(1).
Problem fpu_constant(double eps);

/// U = 0, constant omega; the exact flow is available through Problem::exact.
Problem linear_test(double eps, double omega0);

/// d1 = d2 = 1, omega = 1 + sin^2(q1), U = (q1 - q2)^4 / 4.
Problem single_fast_dof(double eps);

/// linear_test uses omega0 = 1 + sin^2(1) here.
Problem make_preset(PresetId id, double eps);

}  // namespace oscint
