#pragma once

#include <cstddef>
#include <vector>

namespace oscint {

/// Positions (q1, q2): slow block of length d1, fast block of length d2.
struct Positions {
    std::vector<double> q1;
    std::vector<double> q2;
};

/// A vector field split into its slow and fast blocks (forces, gradients).
struct BlockVector {
    std::vector<double> slow;
    std::vector<double> fast;
};

/// Phase-space point of the partitioned Hamiltonian system.
struct State {
    std::vector<double> q1;
    std::vector<double> q2;
    std::vector<double> p1;
    std::vector<double> p2;

    Positions positions() const { return {q1, q2}; }
    bool all_finite() const noexcept;

    friend bool operator==(const State&, const State&) = default;
};

/// Max-norm of the componentwise difference over all four blocks.
double max_abs_difference(const State& a, const State& b);

double squared_norm(const std::vector<double>& v) noexcept;

}  // namespace oscint
