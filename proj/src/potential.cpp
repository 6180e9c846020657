#include "sabine/potential.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sabine {

double PotentialSpec::symbol(double s, double h, Model model) const {
  const double scale = std::pow(h, model == Model::delta ? -alpha : alpha);
  return scale * V0 * profile_at(s);
}

void PotentialSpec::validate() const {
  if (!(V0 > 0.0) || !std::isfinite(V0)) throw std::invalid_argument("V0 must be a positive finite number");
  if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
}

const char* to_string(Model model) { return model == Model::delta ? "delta" : "delta_prime"; }

Model parse_model(const char* text) {
  const std::string t(text);
  if (t == "delta") return Model::delta;
  if (t == "delta_prime" || t == "delta-prime" || t == "deltaprime") return Model::delta_prime;
  throw std::invalid_argument("unknown model '" + t + "' (expected delta or delta_prime)");
}

}  // namespace sabine
