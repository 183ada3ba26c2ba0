#include "oscint/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oscint {

namespace {

bool finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_difference: block size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

bool State::all_finite() const noexcept {
    return finite(q1) && finite(q2) && finite(p1) && finite(p2);
}

double max_abs_difference(const State& a, const State& b) {
    return std::max({max_diff(a.q1, b.q1), max_diff(a.q2, b.q2), max_diff(a.p1, b.p1), max_diff(a.p2, b.p2)});
}

double squared_norm(const std::vector<double>& v) noexcept {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

}  // namespace oscint
