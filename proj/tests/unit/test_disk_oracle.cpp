#include <doctest.h>

#include <cmath>

#include "sabine/billiards.hpp"
#include "sabine/disk_oracle.hpp"
#include "sabine/error.hpp"

using namespace sabine;

TEST_CASE("newton contraction") {
  auto r = newton_contract([](cplx z) { return z * z - 1.0; }, cplx(2.1, 0.0), cplx(1.05, 0.0), 0.1, 0.1025, 2.1, 2.0);
  CHECK(std::abs(r.root - 1.0) < 1e-12);
  CHECK(r.contraction < 0.9);
  r = newton_contract([](cplx z) { return std::exp(z) - 1.0; }, std::exp(cplx(0.05, 0.0)), cplx(0.05, 0.0), 0.1,
                      std::exp(0.05) - 1.0, std::exp(0.05), std::exp(0.15));
  CHECK(std::abs(r.root) < 1e-12);
  try {
    newton_contract([](cplx z) { return z; }, cplx(1.0, 0.0), cplx(0.5, 0.0), 0.1, 0.5, 1.0, 1.0);
    FAIL("expected condition failure");
  } catch (const NumericalError& e) {
    CHECK(e.code() == Errc::condition_failed);
  }
}

TEST_CASE("delta resonance on the unit disk") {
  const PotentialSpec pot;
  const auto c = delta_resonance(0, 6, 0.05, pot);
  CHECK(std::abs(c.z - cplx(1.0196638731359202, -0.0927436665904802)) < 1e-12);
  CHECK(c.residual < 1e-10);
  CHECK(c.z.imag() < 0);
  const double law = 0.025 * (std::log(20.0) + std::log(2.0));
  CHECK(std::abs(-c.z.imag() - law) <= 3 * std::pow(0.05, 1.75));

  const ModeFunction F{0, 0.05, pot, Model::delta};
  CHECK(std::abs(F.value(c.z)) < 1e-10);
  const cplx df = F.derivative(c.z);
  const cplx fd = (F.value(c.z + 1e-6) - F.value(c.z - 1e-6)) / 2e-6;
  CHECK(std::abs(df - fd) < 1e-6 * std::abs(df));
}

TEST_CASE("delta prime resonance on the unit disk") {
  PotentialSpec pot;
  pot.alpha = 0.9;
  const auto c = delta_prime_resonance(0, 31, 0.01, pot, default_window(0.01));
  CHECK(std::abs(c.z - cplx(0.9862542180003426, -0.0024182340247634)) < 1e-12);
  CHECK(c.residual < 1e-10);
  const double ratio = -c.z.imag() / std::pow(0.01, 3 - 1.8);
  CHECK(ratio > 0.5);
  CHECK(ratio < 1.3);
  pot.alpha = 0.3;
  CHECK_THROWS_AS(delta_prime_resonance(0, 31, 0.01, pot), std::invalid_argument);
}

TEST_CASE("local uniqueness") {
  const PotentialSpec pot;
  const ModeFunction F{3, 0.05, pot, Model::delta};
  const auto c = delta_resonance(3, 5, 0.05, pot);
  for (cplx d : {cplx(5e-4, 0.0), cplx(0.0, -5e-4), cplx(-3e-4, 3e-4)}) {
    cplx z = c.z + d;
    for (int i = 0; i < 30; ++i) z -= F.value(z) / F.derivative(z);
    CHECK(std::abs(z - c.z) < 1e-10);
  }
}

TEST_CASE("window handling") {
  const PotentialSpec pot;
  try {
    delta_resonance(0, 0, 0.05, pot, {0.9, 1.1});
    FAIL("expected window miss");
  } catch (const NumericalError& e) {
    CHECK(e.code() == Errc::window_miss);
  }
  PotentialSpec strong;
  strong.alpha = 1.2;
  CHECK_THROWS_AS(delta_resonance(0, 6, 0.05, strong), std::invalid_argument);
  CHECK(lattice_anchor(0, 6, 0.05) == doctest::Approx(0.05 * 3.14159265358979 * 25 / 4));
  const auto w = default_window(0.01, 2.0);
  CHECK(w.hi - 1.0 == doctest::Approx(2.0 * std::pow(0.01, 0.75)));
}

TEST_CASE("mode sweep") {
  const PotentialSpec pot;
  auto r = mode_sweep(0.05, pot, Model::delta, 0, {0.9, 1.1});
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.candidates[0].k == 6);
  CHECK(mode_sweep(0.05, pot, Model::delta, 0, {1.05, 1.06}).candidates.empty());

  r = mode_sweep(0.02, pot, Model::delta, 10, default_window(0.02));
  CHECK(r.failures.empty());
  for (std::size_t i = 1; i < r.candidates.size(); ++i) CHECK(r.candidates[i - 1].z.real() <= r.candidates[i].z.real());
  const double bound = sabine_diameter_bound(BoundaryCurve::circle(1.0), 0.02, pot);
  int tens = 0;
  for (const auto& c : r.candidates) {
    if (c.n != 10) continue;
    ++tens;
    CHECK(c.depth() <= bound + 0.1);
  }
  CHECK(tens > 0);
}

TEST_CASE("argument principle box") {
  const PotentialSpec pot;
  const Box box{0.9, 1.1, -0.1 * std::log(10.0), 0.0};
  const ModeFunction F0{0, 0.1, pot, Model::delta};
  CHECK(count_mode_zeros(F0, box) == 1);
  const auto r = disk_resonances_in_box(0.1, pot, Model::delta, 25, box);
  CHECK(r.failures.empty());
  CHECK(r.candidates.size() == 5);
  for (const auto& c : r.candidates) {
    CHECK(box.contains(c.z));
    CHECK(c.residual < 1e-10);
    CHECK(c.k == -1);
  }
}
