#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sabine {

enum class Errc {
  unsupported_kind,
  tangent_launch,
  glancing_input,
  degenerate_chord,
  out_of_region,
  zero_argument,
  budget_exceeded,
  condition_failed,
  no_convergence,
  window_miss,
  region_exceeded,
  no_valid_diameter_pair,
  not_a_resonance,
  drifted_out_of_window,
};

std::string_view to_string(Errc code);

/// Raised when a numerical procedure cannot deliver its contract. Input
/// validation failures use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sabine
