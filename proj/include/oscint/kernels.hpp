#pragma once

namespace oscint {

/// |x| below this uses the Taylor polynomial for sinc.
inline constexpr double kSincTaylorThreshold = 1e-4;
/// Floor under which the filter coefficients b1, bbar1 are treated as zero.
inline constexpr double kCoefficientFloor = 1e-8;

/// sin(x)/x, with sinc(0) = 1.
double sinc(double x) noexcept;

/// Scalar filter values for one stepsize. The slow block of Omega is zero, so
/// its entries are the x -> 0 limits; the fast block is evaluated at x = h*upsilon.
struct FilterTable {
    double h = 0.0;
    double hu = 0.0;
    double cos_half = 1.0;
    double sinc_half = 1.0;
    double cos_full = 1.0;
    double sin_full = 0.0;
    double sinc_full = 1.0;
    double bbar_slow = 0.5;
    double b_slow = 1.0;
    double bbar_fast = 0.5;
    double b_fast = 1.0;
};

/// Requires h > 0 and upsilon >= 0. Throws CoefficientVanishes when
/// |b1(h*upsilon)| or |bbar1(h*upsilon)| is at or below kCoefficientFloor.
FilterTable build_filter_table(double h, double upsilon);

}  // namespace oscint
