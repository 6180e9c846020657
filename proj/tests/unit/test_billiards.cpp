#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sabine/billiards.hpp"
#include "sabine/error.hpp"

using namespace sabine;
using std::numbers::pi;

namespace {

double chord(const BoundaryCurve& c, double s, double t) { return distance(c.point_at(s).position, c.point_at(t).position); }

// Richardson-extrapolated central difference of the chord length in its first
// or second argument.
double dchord(const BoundaryCurve& c, double s, double t, bool first) {
  auto diff = [&](double e) {
    return first ? (chord(c, s + e, t) - chord(c, s - e, t)) / (2 * e)
                 : (chord(c, s, t + e) - chord(c, s, t - e)) / (2 * e);
  };
  const double e = 2e-3;
  return (4 * diff(e / 2) - diff(e)) / 3;
}

}  // namespace

TEST_CASE("circle steps") {
  const auto c = BoundaryCurve::circle(1.0);
  auto seg = billiard_step(c, {0.0, 0.0});
  CHECK(seg.to.s == doctest::Approx(pi));
  CHECK(seg.chord_length == doctest::Approx(2.0));
  seg = billiard_step(c, {0.0, 0.5});
  CHECK(seg.to.s == doctest::Approx(2 * pi / 3));
  CHECK(seg.to.xi == doctest::Approx(0.5));
  CHECK(seg.chord_length == doctest::Approx(std::sqrt(3.0)));

  const auto orbit = iterate(c, {0.0, 0.0}, 4);
  REQUIRE(orbit.size() == 4);
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    CHECK(orbit[k].chord_length == doctest::Approx(2.0));
    if (k + 1 < orbit.size()) CHECK(orbit[k].to.s == orbit[k + 1].from.s);
  }
  CHECK(mean_chord_length(c, {0.0, 0.5}, 3) == doctest::Approx(std::sqrt(3.0)));
  CHECK(mean_chord_length(c, {1.0, 0.0}, 7) == doctest::Approx(2.0));
}

TEST_CASE("ellipse axis orbit") {
  const auto e = BoundaryCurve::ellipse(2.0, 1.0);
  const auto seg = billiard_step(e, {0.0, 0.0});
  CHECK(seg.chord_length == doctest::Approx(4.0));
  CHECK(seg.to_position.x == doctest::Approx(-2.0));
  CHECK(mean_chord_length(e, {0.0, 0.0}, 2) == doctest::Approx(4.0));
}

TEST_CASE("near-glancing orbit stays near the boundary") {
  const auto e = BoundaryCurve::ellipse(2.0, 1.0);
  const double r = 0.01;
  const auto orbit = iterate(e, {0.3, std::sqrt(1 - r * r)}, 50);
  for (const auto& seg : orbit) CHECK(std::sqrt(1 - seg.to.xi * seg.to.xi) < 0.05);
}

TEST_CASE("glancing input is rejected") {
  const auto c = BoundaryCurve::circle(1.0);
  CHECK_THROWS_AS(billiard_step(c, {0.0, 1.0}), NumericalError);
  try {
    iterate(c, {0.0, 1.0}, 3);
  } catch (const NumericalError& err) {
    CHECK(err.code() == Errc::glancing_input);
    CHECK(std::string(err.what()).find("step 0") != std::string::npos);
  }
}

TEST_CASE("circle conservation") {
  const auto c = BoundaryCurve::circle(1.0);
  double xi = 0.7331;
  PhasePoint q{0.2, xi};
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    q = billiard_step(c, q).to;
    worst = std::max(worst, std::abs(std::abs(q.xi) - xi));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("chord length generates the map") {
  for (const char* spec : {"circle:r=1", "ellipse:a=2,b=1"}) {
    const auto c = BoundaryCurve::parse(spec);
    PhasePoint q{0.4, 0.35};
    for (int k = 0; k < 30; ++k) {
      const auto seg = billiard_step(c, q);
      CHECK(std::abs(dchord(c, seg.from.s, seg.to.s, true) + seg.from.xi) < 1e-10);
      CHECK(std::abs(dchord(c, seg.from.s, seg.to.s, false) - seg.to.xi) < 1e-10);
      q = seg.to;
    }
  }
}

TEST_CASE("reversibility") {
  const auto e = BoundaryCurve::ellipse(2.0, 1.0);
  for (int i = 0; i < 16; ++i) {
    const PhasePoint q{0.6 * i, -0.9 + 0.11 * i};
    const auto seg = billiard_step(e, q);
    const auto back = billiard_step(e, {seg.to.s, -seg.to.xi});
    CHECK(std::abs(std::remainder(back.to.s - q.s, e.total_length())) < 1e-9);
    CHECK(std::abs(-back.to.xi - q.xi) < 1e-9);
  }
}

TEST_CASE("reflection coefficients") {
  PotentialSpec pot;
  pot.V0 = 2.0;
  auto R = reflect_delta({0.0, 0.0}, 1.0, pot);
  CHECK(R.real() == doctest::Approx(-0.5));
  CHECK(R.imag() == doctest::Approx(-0.5));
  CHECK(std::norm(R) == doctest::Approx(0.5));
  R = reflect_delta_prime({0.0, 0.0}, 1.0, pot);
  CHECK(R.real() == doctest::Approx(0.5));
  CHECK(R.imag() == doctest::Approx(-0.5));
  CHECK(std::abs(reflect_delta({0.0, 1.0 - 1e-14}, 0.1, pot)) > 0.999);
  CHECK(std::abs(reflect_delta_prime({0.0, 1.0 - 1e-14}, 0.1, pot)) < 1e-3);
  pot.V0 = 1e12;
  CHECK(std::abs(reflect_delta_prime({0.0, 0.3}, 0.1, pot) - 1.0) < 1e-9);
  pot.profile = [](double) { return 0.0; };
  CHECK(reflect_delta({0.0, 0.2}, 0.1, pot) == std::complex<double>(0.0, 0.0));
  pot.profile = nullptr;
  for (double v : {1e-3, 0.3, 5.0, 1e3}) {
    pot.V0 = v;
    for (double xi : {0.0, 0.5, 0.99}) {
      CHECK(std::abs(reflect_delta({0.0, xi}, 0.1, pot)) < 1.0);
      CHECK(std::abs(reflect_delta_prime({0.0, xi}, 0.1, pot)) < 1.0);
    }
  }
}

TEST_CASE("log reflectivity") {
  const auto c = BoundaryCurve::circle(1.0);
  PotentialSpec pot;
  pot.V0 = 20.0;
  CHECK(mean_log_reflectivity(c, {0.0, 0.0}, 5, 0.1, pot, Model::delta) == doctest::Approx(0.5 * std::log(0.5)));
  const double r3 = mean_log_reflectivity(c, {0.0, 0.4}, 3, 0.1, pot, Model::delta);
  const double r9 = mean_log_reflectivity(c, {0.0, 0.4}, 9, 0.1, pot, Model::delta);
  CHECK(r3 == doctest::Approx(r9).epsilon(1e-12));
  pot.profile = [](double s) { return s > 3.0 && s < 3.3 ? 0.0 : 1.0; };
  CHECK(std::isinf(mean_log_reflectivity(c, {0.0, 0.0}, 5, 0.1, pot, Model::delta)));
}

TEST_CASE("sabine bounds on the circle") {
  const auto c = BoundaryCurve::circle(1.0);
  PotentialSpec pot;
  const auto rep = sabine_gap(c, 0.01, pot, Model::delta);
  CHECK(rep.bound == doctest::Approx(std::log(1 + 4 / 1e-4) / 4).epsilon(0.01));
  CHECK(std::abs(rep.minimizer.xi) < 0.05);
  CHECK(rep.converged);
  const double d = sabine_diameter_bound(c, 0.01, pot);
  CHECK(d == doctest::Approx(0.5 * (std::log(100.0) + std::log(2.0))).epsilon(1e-12));
  CHECK(sabine_gap(c.with_anchor(1.234), 0.01, pot, Model::delta).bound == doctest::Approx(rep.bound).epsilon(1e-3));

  pot.alpha = 0.9;
  const auto p = sabine_gap(c, 0.01, pot, Model::delta_prime);
  CHECK(p.bound == doctest::Approx(std::log(1 + 4 * std::pow(0.01, 0.2)) / 4).epsilon(0.01));
}

TEST_CASE("diameter bound on the ellipse and escaping orbits") {
  PotentialSpec pot;
  CHECK(sabine_diameter_bound(BoundaryCurve::ellipse(2, 1), 0.01, pot) ==
        doctest::Approx(0.25 * (std::log(100.0) + std::log(2.0))).epsilon(1e-9));
  pot.profile = [](double) { return 0.0; };
  CHECK_THROWS_AS(sabine_diameter_bound(BoundaryCurve::ellipse(2, 1), 0.01, pot), NumericalError);
  const auto rep = sabine_gap(BoundaryCurve::circle(1), 0.1, pot, Model::delta);
  CHECK(rep.all_orbits_escape);
  CHECK(std::isinf(rep.bound));
}

TEST_CASE("stadium is flagged") {
  const auto rep = sabine_gap(BoundaryCurve::stadium(1, 1), 0.1, PotentialSpec{}, Model::delta);
  CHECK(rep.outside_theorem);
}
