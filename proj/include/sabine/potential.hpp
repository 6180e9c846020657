#pragma once

#include <functional>

namespace sabine {

enum class Model { delta, delta_prime };

/// Barrier strength V = h^{-alpha} V0 v(s) for the delta model and
/// h^{+alpha} V0 v(s) for the delta-prime model.
struct PotentialSpec {
  double V0 = 1.0;
  double alpha = 0.0;
  /// Boundary profile v(s) >= 0; empty means v == 1.
  std::function<double(double)> profile;

  bool constant() const { return !profile; }
  double profile_at(double s) const { return profile ? profile(s) : 1.0; }

  /// Principal symbol of V at arclength s.
  double symbol(double s, double h, Model model) const;

  /// Throws std::invalid_argument unless V0 > 0 and alpha is finite.
  void validate() const;
};

const char* to_string(Model model);
Model parse_model(const char* text);

}  // namespace sabine
