#pragma once

#include <stdexcept>
#include <string>

namespace mu {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Linear-fractional evaluation hit a denominator below the floor.
struct DenominatorVanishes : Error { using Error::Error; };

// Psi/Upsilon has no finite H-infinity norm for this point.
struct NormInfinite : Error { using Error::Error; };

// A torus grid point of a linear-fractional map sits on (or too close to) a pole.
struct PoleOnBoundary : Error { using Error::Error; };

// Pseudohyperbolic distance asked for a point with modulus >= 1.
struct OutsideDisc : Error { using Error::Error; };

// Two-point Pick data violates the Schwarz-Pick bound.
struct PickInfeasible : Error { using Error::Error; };

// Canonical beta decomposition is singular: |x3| within tolerance of 1.
struct OnTorusX3 : Error { using Error::Error; };

// Query point is outside the domain required by the operation.
struct OutsideDomain : Error { using Error::Error; };

// Feasibility gate failed for a witness or interpolant request.
struct InfeasibleProblem : Error { using Error::Error; };

// Every construction strategy failed verification on a feasible problem.
// Signals an artifact gap, never infeasibility.
struct ConstructionIncomplete : Error { using Error::Error; };

// Input JSON is missing fields, malformed, or violates a hard precondition.
struct MalformedInput : Error { using Error::Error; };

}  // namespace mu
