#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sabine/error.hpp"
#include "sabine/specfun.hpp"
#include "series_oracle.hpp"

using namespace sabine;

namespace {

struct Ref {
  int n;
  cplx z, J, H;
};

// 40-digit reference values.
const Ref kRefs[] = {
    {0, {2.5, 0}, {-0.048383776468197996327, 0.0}, {-0.048383776468197996327, 0.49807035961523188783}},
    {1, {0.3, -0.2}, {0.15054697730054616888, -0.097128212582615546718}, {1.0865246029632049641, -1.7596664070968744118}},
    {5, {10.0, -3.0}, {-1.6525793247337573657, 0.79257122738435196432}, {-3.2925734018856783974, 1.5985586493805301696}},
    {12, {7.5, 0.5}, {0.0043259609365733406842, 0.0032315222202877064006}, {-3.5399182822414059195, -5.2266477989448193342}},
    {0, {25.0, -1.5}, {0.23433030878437174693, -0.26389281940493380474}, {0.44806466061706322365, -0.55677432299384434968}},
    {3, {40.0, -0.2}, {-0.12865760590730019177, -0.0016944669988440789301}, {-0.15396695968662411618, -0.008723103079700572346}},
    {30, {18.0, -4.0}, {0.000013955029659434206952, 0.000021235120405494410283}, {-454.55633868281572587, -226.00325820832426832}},
    {2, {1e-3, 0}, {1.2499998958333365885e-7, 0.0}, {1.2499998958333365885e-7, -1273239.8630456674802}},
    {60, {55.0, -10.0}, {0.023521060017847820389, 0.14593001204197099191}, {-0.009119858390873708092, 0.31232573305103063027}},
    {7, {3.0, -12.0}, {563.8314599123532418, -2585.7486581846011654}, {1127.6629277024831281, -5171.4973197087026025}},
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

cplx random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(0.05, 60.0), im(-15.0, 15.0);
  return {re(rng), im(rng)};
}

}  // namespace

TEST_CASE("reference values") {
  for (const auto& r : kRefs) {
    const auto e = bessel_eval(r.n, r.z);
    CAPTURE(r.n);
    CAPTURE(r.z);
    CHECK(rel(e.J, r.J) < 1e-12);
    CHECK(rel(e.H, r.H) < 1e-12);
    CHECK(rel(bessel_j(r.n, r.z), r.J) < 1e-12);
    CHECK(rel(hankel1(r.n, r.z), r.H) < 1e-12);
  }
}

TEST_CASE("ascending series agrees for small arguments") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const cplx z(std::abs(u(rng)) + 0.01, u(rng));
    const int n = static_cast<int>(rng() % 25);
    const auto ref = series_bessel_j(n, std::complex<long double>(z.real(), z.imag()));
    const cplx want(static_cast<double>(ref.real()), static_cast<double>(ref.imag()));
    CHECK(rel(bessel_j(n, z), want) < 1e-12);
  }
}

TEST_CASE("row matches single evaluations") {
  const cplx z(14.0, -2.5);
  const auto row = bessel_row(40, z);
  REQUIRE(row.size() == 41);
  for (int n : {0, 1, 9, 23, 40}) {
    const auto e = bessel_eval(n, z);
    CHECK(rel(row[n].J, e.J) < 1e-13);
    CHECK(rel(row[n].H, e.H) < 1e-13);
    CHECK(rel(row[n].dH, e.dH) < 1e-13);
  }
  CHECK_THROWS_AS(bessel_row(1000, cplx(1.0, 0.0)), NumericalError);
}

TEST_CASE("kernel pair") {
  for (cplx w : {cplx(0.02, 0.0), cplx(3.3, -0.4), cplx(16.9, -1.0), cplx(17.1, -1.0), cplx(700.0, -20.0)}) {
    const auto [j0, h0] = bessel_j0_hankel0(w);
    CHECK(rel(j0, bessel_j(0, w)) < 1e-13);
    CHECK(rel(h0, hankel1(0, w)) < 1e-13);
  }
}

TEST_CASE("wronskian recurrence and derivatives") {
  std::mt19937_64 rng(11);
  double worst_w = 0, worst_r = 0, worst_d = 0;
  for (int i = 0; i < 300; ++i) {
    const cplx z = random_point(rng);
    const int n = static_cast<int>(rng() % 40) + 1;
    const auto row = bessel_row(n + 1, z);
    const auto& e = row[n];
    const cplx w = e.J * e.dH - e.dJ * e.H;
    const cplx want(0.0, 2.0 / (std::numbers::pi));
    const double scale = std::max(std::abs(want / z), std::abs(e.J * e.dH) + std::abs(e.dJ * e.H));
    worst_w = std::max(worst_w, std::abs(w - want / z) / scale);
    const cplx rj = row[n - 1].J + row[n + 1].J - (2.0 * n / z) * e.J;
    worst_r = std::max(worst_r, std::abs(rj) / std::max({std::abs(row[n - 1].J), std::abs(row[n + 1].J), std::abs(e.J)}));
    const cplx dh = 0.5 * (row[n - 1].H - row[n + 1].H) - e.dH;
    worst_d = std::max(worst_d, std::abs(dh) / std::max({std::abs(row[n - 1].H), std::abs(row[n + 1].H)}));
  }
  CHECK(worst_w < 1e-11);
  CHECK(worst_r < 1e-12);
  CHECK(worst_d < 1e-12);
}

TEST_CASE("validated region") {
  CHECK(in_validated_region(cplx(1.0, -50.0)));
  CHECK_FALSE(in_validated_region(cplx(2001.0, 0.0)));
  CHECK_FALSE(in_validated_region(cplx(-1.0, 0.0)));
  CHECK(bessel_j(0, cplx(0.0, 0.0)) == cplx(1.0, 0.0));
  CHECK_THROWS(hankel1(0, cplx(0.0, 0.0)));
  CHECK_THROWS(hankel1(0, cplx(5.0, 80.0)));
}

TEST_CASE("documented values and identities") {
  CHECK(bessel_j(0, cplx(1.0, 0.0)).real() == doctest::Approx(0.76519768655796655).epsilon(1e-15));
  CHECK(bessel_j(1, cplx(0.0, 0.0)) == cplx(0.0, 0.0));
  const cplx z(2.0, 1.0);
  CHECK(std::abs(bessel_j_deriv(0, z) + bessel_j(1, z)) < 1e-10 * std::abs(bessel_j(1, z)));
  const auto e = bessel_eval(3, z);
  const cplx want = cplx(0.0, 2.0) / (std::numbers::pi * z);
  CHECK(std::abs(e.J * e.dH - e.dJ * e.H - want) < 1e-10 * std::abs(want));
  CHECK(rel(bessel_j_deriv(3, z), e.dJ) < 1e-14);
  CHECK(rel(hankel1_deriv(3, z), e.dH) < 1e-14);

  const double x = 100.0;
  const cplx asym = (std::exp(cplx(0.0, 2 * x - std::numbers::pi / 2)) + 1.0) / (std::numbers::pi * x);
  CHECK(std::abs(bessel_j(0, cplx(x, 0.0)) * hankel1(0, cplx(x, 0.0)) - asym) < 2e-5);

  const cplx w(10.0, 0.5);
  CHECK(std::abs(bessel_j(4, w) + bessel_j(6, w) - (10.0 / w) * bessel_j(5, w)) < 1e-10 * std::abs(bessel_j(4, w)));

  const auto row = bessel_row(120, cplx(50.0, 0.0));
  for (const auto& r : row) {
    const cplx wr = r.J * r.dH - r.dJ * r.H;
    const cplx target = cplx(0.0, 2.0 / (std::numbers::pi * 50.0));
    CHECK(std::abs(wr - target) < 1e-9 * std::max(std::abs(target), std::abs(r.J * r.dH) + std::abs(r.dJ * r.H)));
  }
  CHECK(rel(bessel_row(0, cplx(1.0, 0.0))[0].J, bessel_j(0, cplx(1.0, 0.0))) < 1e-15);

  for (cplx p : {cplx(3.0, 2.0), cplx(40.0, -7.0)}) {
    CHECK(rel(bessel_j(7, std::conj(p)), std::conj(bessel_j(7, p))) < 1e-13);
  }
}

TEST_CASE("asymptotic residual scaling") {
  // |J_0 H_0 - leading term| falls like |z|^-2 on the real axis.
  double prev = 0.0;
  for (double x : {50.0, 100.0, 200.0, 400.0}) {
    const cplx lead = (std::exp(cplx(0.0, 2 * x - std::numbers::pi / 2)) + 1.0) / (std::numbers::pi * x);
    const double res = std::abs(bessel_j(0, cplx(x, 0.0)) * hankel1(0, cplx(x, 0.0)) - lead);
    if (prev > 0) CHECK(std::log2(prev / res) == doctest::Approx(2.0).epsilon(0.25));
    prev = res;
  }
}
