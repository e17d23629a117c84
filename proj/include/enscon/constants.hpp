#pragma once

// Single source of truth for the numeric tolerances used by constructors,
// property checks and the verification suites.

namespace enscon::tol {

// exact-arithmetic identities evaluated in double precision
inline constexpr double kExact = 1e-12;

// identities mixing exact derivatives with floating-point evaluation
inline constexpr double kMixed = 1e-9;

// central-difference comparisons
inline constexpr double kFiniteDiff = 1e-6;

// constraint enforcement
inline constexpr double kSphereUnit = 1e-12;      // |x|-1 at Point construction
inline constexpr double kSphereOps = 1e-9;        // geometry ops reject beyond this
inline constexpr double kSphereTangent = 1e-10;   // |<v,x>| <= tol*|v|
inline constexpr double kEnsembleSeparation = 1e-9;

// numerical rank threshold, relative to the largest singular value
inline constexpr double kRankThreshold = 1e-8;

}  // namespace enscon::tol
