#include "sabine/error.hpp"

namespace sabine {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::unsupported_kind: return "unsupported_kind";
    case Errc::tangent_launch: return "tangent_launch";
    case Errc::glancing_input: return "glancing_input";
    case Errc::degenerate_chord: return "degenerate_chord";
    case Errc::out_of_region: return "out_of_region";
    case Errc::zero_argument: return "zero_argument";
    case Errc::budget_exceeded: return "budget_exceeded";
    case Errc::condition_failed: return "condition_failed";
    case Errc::no_convergence: return "no_convergence";
    case Errc::window_miss: return "window_miss";
    case Errc::region_exceeded: return "region_exceeded";
    case Errc::no_valid_diameter_pair: return "no_valid_diameter_pair";
    case Errc::not_a_resonance: return "not_a_resonance";
    case Errc::drifted_out_of_window: return "drifted_out_of_window";
  }
  return "unknown";
}

}  // namespace sabine
