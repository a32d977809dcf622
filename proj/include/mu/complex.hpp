#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace mu {

using Complex = std::complex<double>;

inline bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// 1 - |z|^2 computed as (1-|z|)(1+|z|); avoids cancellation for |z| near 1.
inline double one_minus_abs_sq(const Complex& z) {
    const double a = std::abs(z);
    return (1.0 - a) * (1.0 + a);
}

inline Complex unit_phase(double theta) {
    return Complex(std::cos(theta), std::sin(theta));
}

// Extended nonnegative real: finite value or an explicit infinity marker.
// The marker is a flag, never a floating infinity fed to comparisons.
struct ExtReal {
    double value = 0.0;
    bool infinite = false;

    static ExtReal of(double v) { return {v, false}; }
    static ExtReal inf() { return {0.0, true}; }
    bool finite() const { return !infinite; }

    // Signed slack of "value <= bound"; -inf sentinel when the value is the marker.
    double slack_below(double bound) const {
        return infinite ? -std::numeric_limits<double>::infinity() : bound - value;
    }
};

}  // namespace mu
