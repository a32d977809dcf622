#pragma once

namespace mu {

// Denominators at or below this are classified as poles rather than roundoff.
inline constexpr double kDenomFloor = 1e-14;

// Boundary band for tri-state classification: |margin| <= band reads as
// "on the boundary". Configurable per call; this is the default.
inline constexpr double kDefaultBand = 1e-9;

// Relative tolerance for detecting the degenerate branch x1*x2 == x3.
inline constexpr double kDegenerateTol = 1e-12;

// Below this |x3| distance from the unit circle the canonical beta
// decomposition is treated as singular (OnTorusX3).
inline constexpr double kTorusGuard = 1e-9;

// Default endpoint / sup-norm tolerance for Schur-class constructions.
inline constexpr double kSchurTol = 1e-9;

}  // namespace mu
