#pragma once

#include <cstdint>

#include "mu/complex.hpp"

namespace mu {

// Small deterministic generator (splitmix64 core). Standard-library
// distributions are implementation-defined, so samplers that promise
// bit-identical output across platforms use this instead.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Uniform on the open unit disc (area measure).
    Complex unit_disc() {
        const double r = std::sqrt(unit());
        return r * unit_phase(uniform(0.0, 2.0 * 3.14159265358979323846));
    }

    Complex circle_point() {
        return unit_phase(uniform(0.0, 2.0 * 3.14159265358979323846));
    }

    // Standard complex gaussian via Box-Muller on the portable uniforms.
    Complex gaussian() {
        double u1 = unit();
        while (u1 <= 0.0) u1 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = uniform(0.0, 2.0 * 3.14159265358979323846);
        return Complex(r * std::cos(t), r * std::sin(t));
    }

  private:
    std::uint64_t state_;
};

}  // namespace mu
