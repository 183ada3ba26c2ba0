#include "oscint/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "oscint/errors.hpp"

namespace oscint {

double sinc(double x) noexcept {
    if (std::abs(x) < kSincTaylorThreshold) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

FilterTable build_filter_table(double h, double upsilon) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("filter table needs h > 0");
    if (!(upsilon >= 0.0) || !std::isfinite(upsilon)) throw std::invalid_argument("filter table needs upsilon >= 0");

    FilterTable t;
    t.h = h;
    t.hu = h * upsilon;
    const double half = 0.5 * t.hu;
    t.cos_half = std::cos(half);
    t.sinc_half = sinc(half);
    t.cos_full = std::cos(t.hu);
    t.sin_full = std::sin(t.hu);
    t.sinc_full = sinc(t.hu);
    t.bbar_fast = 0.5 * t.sinc_half * t.sinc_half;
    t.b_fast = t.cos_half * t.sinc_half;

    if (std::abs(t.b_fast) <= kCoefficientFloor || std::abs(t.bbar_fast) <= kCoefficientFloor) {
        throw CoefficientVanishes("filter coefficients vanish at h*upsilon = " + std::to_string(t.hu));
    }
    return t;
}

}  // namespace oscint
