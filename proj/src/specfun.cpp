#include "sabine/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sabine/error.hpp"
#include "sabine/format.hpp"

namespace sabine {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAsymptoticRadius = 17.0;
constexpr double kLongDoubleLoss = 19.0;
constexpr double kMaxRe = 2000.0;
constexpr double kMaxIm = 50.0;
constexpr double kTiny = 1e-280;
constexpr int kRescaleBits = 600;
const double kRescaleAt = std::ldexp(1.0, 500);

const cplx kI(0.0, 1.0);

std::string describe(cplx z) { return "(" + format_real(z.real()) + ", " + format_real(z.imag()) + ")"; }

void require_region(cplx z, bool hankel) {
  if (z == cplx(0.0)) {
    if (hankel) throw NumericalError(Errc::zero_argument, "Hankel function is singular at z = 0");
    return;
  }
  if (!in_validated_region(z)) {
    throw NumericalError(Errc::out_of_region, "argument " + describe(z) + " outside the validated region");
  }
}

void require_order(int n) {
  if (n < 0) throw std::invalid_argument("Bessel order must be nonnegative");
}

cplx ldexp_c(cplx v, int e) { return {std::ldexp(v.real(), e), std::ldexp(v.imag(), e)}; }

// Large-argument expansions of H^{(1)}_nu and H^{(2)}_nu, summed until the
// terms stop decreasing.
void hankel_asymptotic(int nu, cplx z, cplx& h1, cplx& h2) {
  const cplx pre = std::sqrt(2.0 / (kPi * z));
  const double re = z.real(), im = z.imag();
  const double c = std::cos(re), s = std::sin(re);
  const double omega = -(nu * 0.5 + 0.25) * kPi;
  const cplx rot(std::cos(omega), std::sin(omega));
  const cplx e1 = std::exp(-im) * cplx(c, s) * rot;
  const cplx e2 = std::exp(im) * cplx(c, -s) * std::conj(rot);

  const double mu = 4.0 * nu * nu;
  const cplx inv_z = 1.0 / z;
  cplx term = 1.0, p1 = 1.0, p2 = 1.0;
  cplx ik = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const cplx next = term * inv_z * ((mu - odd * odd) / (8.0 * k));
    const double mag = std::abs(next);
    if (mag >= last) break;
    term = next;
    last = mag;
    ik *= kI;
    p1 += ik * term;
    p2 += std::conj(ik) * term;
    if (mag < 1e-17) break;
  }
  h1 = pre * e1 * p1;
  h2 = pre * e2 * p2;
}

struct Base01 {
  cplx j0, j1, h0, h1, h2_0, h2_1;
};

// Orders 0 and 1. `loss` selects the series precision: the Hankel function of
// the first kind cancels by about e^{|z| + Im z} in the series, the second
// kind by e^{|z| - Im z}.
Base01 base01(cplx z, bool order_one, double loss) {
  Base01 b;
  if (std::abs(z) >= kAsymptoticRadius) {
    cplx a1, a2;
    hankel_asymptotic(0, z, a1, a2);
    b.h0 = a1;
    b.h2_0 = a2;
    b.j0 = 0.5 * (a1 + a2);
    if (order_one) {
      hankel_asymptotic(1, z, a1, a2);
      b.h1 = a1;
      b.h2_1 = a2;
      b.j1 = 0.5 * (a1 + a2);
    }
    return b;
  }
  const auto s = detail::series01(z, loss > kLongDoubleLoss, order_one);
  b.j0 = s.j0;
  b.h0 = s.h0;
  b.h2_0 = s.h2_0;
  b.j1 = s.j1;
  b.h1 = s.h1;
  b.h2_1 = s.h2_1;
  return b;
}

Base01 base01(cplx z) { return base01(z, true, std::abs(z) + std::abs(z.imag())); }

// J_0..J_top by backward recurrence, normalized against the larger of the
// directly computed J_0 and J_1.
std::vector<cplx> miller(int top, cplx z, const Base01& base) {
  std::vector<cplx> out(top + 1);
  if (top <= 1) {
    out[0] = base.j0;
    if (top == 1) out[1] = base.j1;
    return out;
  }
  const double az = std::abs(z);
  const int start = std::max(top, static_cast<int>(std::ceil(az))) + 20 + static_cast<int>(std::ceil(10.0 * std::cbrt(az)));
  std::vector<int> scale(top + 1, 0);
  const cplx inv_z = 1.0 / z;
  cplx f_next = 0.0, f = 1e-30;
  int count = 0;
  for (int k = start; k >= 1; --k) {
    const cplx f_prev = (2.0 * k) * inv_z * f - f_next;
    f_next = f;
    f = f_prev;
    if (std::abs(f.real()) > kRescaleAt || std::abs(f.imag()) > kRescaleAt) {
      f = ldexp_c(f, -kRescaleBits);
      f_next = ldexp_c(f_next, -kRescaleBits);
      ++count;
    }
    const int idx = k - 1;
    if (idx <= top) {
      out[idx] = f;
      scale[idx] = count;
    }
  }
  for (int n = 0; n <= top; ++n) out[n] = ldexp_c(out[n], -kRescaleBits * (count - scale[n]));
  const bool use_one = std::abs(base.j1) > std::abs(base.j0);
  const cplx factor = use_one ? base.j1 / out[1] : base.j0 / out[0];
  for (int n = 0; n <= top; ++n) out[n] *= factor;
  out[0] = base.j0;
  out[1] = base.j1;
  return out;
}

// Forward recurrence is run on whichever Hankel kind grows with n: the first
// kind above the real axis, the second kind below it, where the first kind is
// recovered as 2J - H^{(2)}.
std::vector<cplx> hankel_forward(int top, cplx z, const Base01& base, const std::vector<cplx>& J) {
  const bool lower = z.imag() < 0.0;
  std::vector<cplx> out(top + 1);
  out[0] = lower ? base.h2_0 : base.h0;
  if (top >= 1) out[1] = lower ? base.h2_1 : base.h1;
  const cplx inv_z = 1.0 / z;
  for (int n = 1; n < top; ++n) out[n + 1] = (2.0 * n) * inv_z * out[n] - out[n - 1];
  if (lower) {
    for (int n = 0; n <= top; ++n) out[n] = 2.0 * J[n] - out[n];
    out[0] = base.h0;
    if (top >= 1) out[1] = base.h1;
  }
  return out;
}

cplx deriv_from(const std::vector<cplx>& v, int n) { return n == 0 ? -v[1] : 0.5 * (v[n - 1] - v[n + 1]); }

void check_finite(const BesselEval& e) {
  auto bad = [](cplx v) { return !std::isfinite(v.real()) || !std::isfinite(v.imag()); };
  if (bad(e.J) || bad(e.dJ) || bad(e.H) || bad(e.dH) || std::abs(e.H) > 1.0 / kTiny) {
    throw NumericalError(Errc::out_of_region,
                         "order " + std::to_string(e.n) + " at " + describe(e.z) + " overflows double range");
  }
  if (std::abs(e.J) < kTiny) {
    throw NumericalError(Errc::out_of_region,
                         "order " + std::to_string(e.n) + " at " + describe(e.z) + " underflows double range");
  }
}

std::vector<cplx> j_values(int top, cplx z) {
  if (z == cplx(0.0)) {
    std::vector<cplx> out(top + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  return miller(top, z, base01(z));
}

}  // namespace

bool in_validated_region(cplx z) {
  return z.real() > 0.0 && z.real() <= kMaxRe && std::abs(z.imag()) <= kMaxIm;
}

cplx bessel_j(int n, cplx z) {
  require_order(n);
  require_region(z, false);
  return j_values(n, z)[n];
}

cplx bessel_j_deriv(int n, cplx z) {
  require_order(n);
  require_region(z, false);
  return deriv_from(j_values(n + 1, z), n);
}

cplx hankel1(int n, cplx z) {
  require_order(n);
  require_region(z, true);
  const Base01 base = base01(z);
  return hankel_forward(n, z, base, miller(n, z, base))[n];
}

cplx hankel1_deriv(int n, cplx z) {
  require_order(n);
  require_region(z, true);
  const Base01 base = base01(z);
  return deriv_from(hankel_forward(n + 1, z, base, miller(n + 1, z, base)), n);
}

std::vector<BesselEval> bessel_row(int n_max, cplx z) {
  require_order(n_max);
  require_region(z, true);
  if (n_max > 4.0 * std::abs(z) + 200.0) {
    throw NumericalError(Errc::budget_exceeded, "n_max = " + std::to_string(n_max) + " exceeds 4|z| + 200 at " +
                                                    describe(z));
  }
  const Base01 base = base01(z);
  const auto J = miller(n_max + 1, z, base);
  const auto H = hankel_forward(n_max + 1, z, base, J);
  std::vector<BesselEval> row(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    BesselEval& e = row[n];
    e.n = n;
    e.z = z;
    e.J = J[n];
    e.H = H[n];
    e.dJ = deriv_from(J, n);
    e.dH = deriv_from(H, n);
    check_finite(e);
  }
  return row;
}

BesselEval bessel_eval(int n, cplx z) {
  require_order(n);
  require_region(z, true);
  const Base01 base = base01(z);
  const auto J = miller(n + 1, z, base);
  const auto H = hankel_forward(n + 1, z, base, J);
  BesselEval e;
  e.n = n;
  e.z = z;
  e.J = J[n];
  e.H = H[n];
  e.dJ = deriv_from(J, n);
  e.dH = deriv_from(H, n);
  check_finite(e);
  return e;
}

std::pair<cplx, cplx> bessel_j0_hankel0(cplx w) {
  require_region(w, true);
  const Base01 b = base01(w, false, std::abs(w) + w.imag());
  return {b.j0, b.h0};
}

}  // namespace sabine
