#pragma once

namespace sabine {

/// Numerical tolerances shared by every module. Precision studies change
/// these in one place.
struct Tolerances {
  double geometric = 1e-12;   // residuals of geometric solves
  double comparison = 1e-9;   // equality of derived quantities
  double glancing = 1e-10;    // |xi'| must stay below 1 - glancing
  double min_chord = 1e-10;   // shorter chords are degenerate
};

inline constexpr Tolerances kTolerances{};

}  // namespace sabine
