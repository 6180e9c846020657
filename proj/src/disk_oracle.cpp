#include "sabine/disk_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "sabine/error.hpp"
#include "sabine/format.hpp"
#include "sabine/parallel.hpp"

namespace sabine {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kContraction = 0.9;
constexpr int kMaxIterations = 100;
constexpr double kResidualTarget = 1e-10;
constexpr double kDedupe = 1e-8;

const cplx kI(0.0, 1.0);

void sort_and_dedupe(std::vector<ResonanceCandidate>& list, double tol) {
  std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    if (a.z.imag() != b.z.imag()) return a.z.imag() < b.z.imag();
    return a.n < b.n;
  });
  std::vector<ResonanceCandidate> kept;
  for (const auto& c : list) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
      return std::abs(k.z - c.z) < tol && k.n == c.n;
    });
    if (!dup) kept.push_back(c);
  }
  list = std::move(kept);
}

struct Bounds {
  double a, b, d;
  cplx df0;
};

Bounds lemma_bounds(const ModeFunction& F, cplx z0, double eps) {
  Bounds out{};
  cplx f0;
  F.evaluate(z0, f0, out.df0);
  out.a = std::abs(f0);
  out.b = std::abs(out.df0);
  const double step = 1e-3 * eps;
  double d = 0.0;
  for (int j = 0; j < 8; ++j) {
    const cplx p = z0 + std::polar(eps, 2.0 * kPi * j / 8.0);
    const cplx second = (F.derivative(p + step) - F.derivative(p - step)) / (2.0 * step);
    d = std::max(d, std::abs(second));
  }
  out.d = d;
  return out;
}

bool lemma_holds(const Bounds& B, double eps) {
  return B.a + B.d * eps * eps < eps * B.b && B.d * eps < kContraction * B.b;
}

// Certified solve from z0, halving eps while the lemma condition fails.
ResonanceCandidate certified_solve(const ModeFunction& F, cplx z0, const SolveOptions& options) {
  double eps = options.eps_factor * F.h;
  Bounds B{};
  for (int attempt = 0; attempt <= options.max_halvings; ++attempt, eps *= 0.5) {
    B = lemma_bounds(F, z0, eps);
    if (!lemma_holds(B, eps)) continue;
    const auto f = [&](cplx z) { return F.value(z); };
    const NewtonResult r = newton_contract(f, B.df0, z0, eps, B.a, B.b, B.d);
    ResonanceCandidate c;
    c.z = r.root;
    c.h = F.h;
    c.residual = std::abs(F.value(r.root));
    c.provenance = Provenance::oracle;
    c.n = F.n;
    c.model = F.model;
    c.contraction = r.contraction;
    if (!(c.residual < kResidualTarget)) {
      throw NumericalError(Errc::no_convergence, "residual " + format_real(c.residual) + " above 1e-10");
    }
    return c;
  }
  throw NumericalError(Errc::condition_failed, "lemma condition fails down to eps = " + format_real(2.0 * eps) +
                                                   " (a = " + format_real(B.a) + ", b = " + format_real(B.b) +
                                                   ", d = " + format_real(B.d) + ")");
}

std::optional<cplx> plain_newton(const ModeFunction& F, cplx z, int iterations, double tol) {
  for (int i = 0; i < iterations; ++i) {
    cplx f, df;
    F.evaluate(z, f, df);
    if (!std::isfinite(std::abs(f)) || df == cplx(0.0)) return std::nullopt;
    const cplx step = f / df;
    z -= step;
    if (std::abs(step) < tol) return z;
    if (!in_validated_region(z / F.h)) return std::nullopt;
  }
  return std::nullopt;
}

ResonanceCandidate solve_mode(int n, int k, double h, const PotentialSpec& pot, Model model, ReWindow window,
                              const SolveOptions& options) {
  if (n < 0 || k < 0) throw std::invalid_argument("mode indices must be nonnegative");
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("h must lie in (0, 1)");
  pot.validate();
  if (!pot.constant()) throw std::invalid_argument("the disk oracle requires a constant potential");
  if (model == Model::delta && !(pot.alpha < 1.0)) throw std::invalid_argument("delta model requires alpha < 1");
  if (model == Model::delta_prime && !(pot.alpha > 0.5)) {
    throw std::invalid_argument("delta-prime model requires alpha > 1/2");
  }
  const double anchor = lattice_anchor(n, k, h);
  if (!window.contains(anchor)) {
    throw NumericalError(Errc::window_miss, "anchor " + format_real(anchor) + " of mode (" + std::to_string(n) + ", " +
                                                std::to_string(k) + ") lies outside [" + format_real(window.lo) +
                                                ", " + format_real(window.hi) + "]");
  }
  const ModeFunction F{n, h, pot, model};
  const cplx z0 = initial_guess(n, k, h, pot, model);
  ResonanceCandidate c;
  try {
    c = certified_solve(F, z0, options);
  } catch (const NumericalError& e) {
    if (e.code() != Errc::condition_failed) throw;
    // Improve the starting point and certify again.
    const auto better = plain_newton(F, z0, 8, 1e-3 * h);
    if (!better) throw;
    c = certified_solve(F, *better, options);
  }
  c.k = k;
  return c;
}

}  // namespace

NewtonResult newton_contract(const std::function<cplx(cplx)>& f, cplx df_z0, cplx z0, double eps, double a, double b,
                             double d) {
  if (!(eps > 0.0) || !(b > 0.0)) throw std::invalid_argument("newton_contract requires eps > 0 and b > 0");
  if (!(a + d * eps * eps < eps * b) || !(d * eps < kContraction * b)) {
    throw NumericalError(Errc::condition_failed, "a + d eps^2 = " + format_real(a + d * eps * eps) +
                                                     ", eps b = " + format_real(eps * b) +
                                                     ", d eps / b = " + format_real(d * eps / b));
  }
  NewtonResult r;
  r.contraction = d * eps / b;
  const double target = 1e-12 * b * eps;
  cplx z = z0;
  for (int it = 0; it <= kMaxIterations; ++it) {
    const cplx fz = f(z);
    if (std::abs(fz) < target) {
      r.root = z;
      r.iterations = it;
      return r;
    }
    if (it == kMaxIterations) break;
    z -= fz / df_z0;
    if (!(std::abs(z - z0) <= eps * (1.0 + 1e-12))) {
      throw NumericalError(Errc::no_convergence, "iterate left the disk; the bounds were wrong");
    }
  }
  throw NumericalError(Errc::no_convergence, "no convergence after 100 iterations");
}

ReWindow default_window(double h, double c) {
  const double w = c * std::pow(h, 0.75);
  return {1.0 - w, 1.0 + w};
}

void ModeFunction::evaluate(cplx z, cplx& f, cplx& df) const {
  const cplx w = z / h;
  const BesselEval e = bessel_eval(n, w);
  if (model == Model::delta) {
    const cplx C = kPi * std::pow(h, -pot.alpha) * pot.V0 / (2.0 * kI);
    f = 1.0 - C * e.J * e.H;
    df = -C * (e.dJ * e.H + e.J * e.dH) / h;
    return;
  }
  const cplx C = kPi * std::pow(h, -2.0 + pot.alpha) * pot.V0 / (2.0 * kI);
  const double n2 = static_cast<double>(n) * n;
  const cplx ddJ = -e.dJ / w - (1.0 - n2 / (w * w)) * e.J;
  const cplx ddH = -e.dH / w - (1.0 - n2 / (w * w)) * e.H;
  f = 1.0 + C * z * z * e.dJ * e.dH;
  df = C * (2.0 * z * e.dJ * e.dH + z * z * (ddJ * e.dH + e.dJ * ddH) / h);
}

cplx ModeFunction::value(cplx z) const {
  cplx f, df;
  evaluate(z, f, df);
  return f;
}

cplx ModeFunction::derivative(cplx z) const {
  cplx f, df;
  evaluate(z, f, df);
  return df;
}

namespace {

// Moves the large-argument phase zero w to the zero of the Debye phase
// sqrt(w^2 - n^2) - n arccos(n / w), which matters once n^2 / w is not small.
double debye_shift(int n, double w) {
  if (n == 0 || n > 0.9 * w) return w;
  const double target = w - 0.5 * kPi * n;
  double x = w;
  for (int i = 0; i < 8; ++i) {
    const double root = std::sqrt(x * x - static_cast<double>(n) * n);
    x -= (root - n * std::acos(n / x) - target) / (root / x);
  }
  return x;
}

}  // namespace

double lattice_anchor(int n, int k, double h) { return 0.25 * kPi * h * (4.0 * k + 2.0 * n + 1.0); }

cplx initial_guess(int n, int k, double h, const PotentialSpec& pot, Model model) {
  const double m = 4.0 * k + 2.0 * n + 1.0;
  cplx eps0;
  if (model == Model::delta) {
    eps0 = (-0.5 * kI * h) * std::log(std::pow(h, pot.alpha - 1.0) * kI * kPi * h * m / (2.0 * pot.V0) - 1.0);
  } else {
    eps0 = (-0.5 * kI * h) * std::log(1.0 + kI * 8.0 * std::pow(h, -pot.alpha) / (kPi * m * pot.V0));
  }
  return h * debye_shift(n, lattice_anchor(n, k, h) / h) + eps0;
}

ResonanceCandidate delta_resonance(int n, int k, double h, const PotentialSpec& pot, ReWindow window,
                                   const SolveOptions& options) {
  return solve_mode(n, k, h, pot, Model::delta, window, options);
}

ResonanceCandidate delta_prime_resonance(int n, int k, double h, const PotentialSpec& pot, ReWindow window,
                                         const SolveOptions& options) {
  return solve_mode(n, k, h, pot, Model::delta_prime, window, options);
}

SweepResult mode_sweep(double h, const PotentialSpec& pot, Model model, int n_max, ReWindow window) {
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
  std::vector<std::pair<int, int>> modes;
  for (int n = 0; n <= n_max; ++n) {
    const double unit = 0.25 * kPi * h;
    const int k_lo = std::max(0, static_cast<int>(std::ceil((window.lo / unit - 2.0 * n - 1.0) / 4.0)));
    for (int k = k_lo; lattice_anchor(n, k, h) <= window.hi; ++k) {
      if (window.contains(lattice_anchor(n, k, h))) modes.emplace_back(n, k);
    }
  }
  std::vector<std::optional<ResonanceCandidate>> solved(modes.size());
  std::vector<std::string> errors(modes.size());
  parallel_for(modes.size(), [&](std::size_t i) {
    try {
      solved[i] = solve_mode(modes[i].first, modes[i].second, h, pot, model, window, {});
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  SweepResult out;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (solved[i]) {
      out.candidates.push_back(*solved[i]);
    } else {
      out.failures.push_back({modes[i].first, modes[i].second, errors[i]});
    }
  }
  sort_and_dedupe(out.candidates, kDedupe);
  return out;
}

namespace {

double arg_step(cplx from, cplx to) { return std::arg(to / from); }

// Winding of F along the segment [p, q], refined until consecutive phase
// steps are below pi/4.
double segment_winding(const ModeFunction& F, cplx p, cplx fp, cplx q, cplx fq, int depth) {
  const double step = arg_step(fp, fq);
  if (std::abs(step) < 0.25 * kPi || depth > 24) {
    if (depth > 24) throw NumericalError(Errc::no_convergence, "argument principle failed to resolve the boundary");
    return step;
  }
  const cplx m = 0.5 * (p + q);
  const cplx fm = F.value(m);
  if (std::abs(fm) < 1e-9) throw NumericalError(Errc::no_convergence, "zero on the counting contour");
  return segment_winding(F, p, fp, m, fm, depth + 1) + segment_winding(F, m, fm, q, fq, depth + 1);
}

}  // namespace

int count_mode_zeros(const ModeFunction& F, const Box& box) {
  const cplx corners[4] = {{box.re_lo, box.im_lo}, {box.re_hi, box.im_lo}, {box.re_hi, box.im_hi},
                           {box.re_lo, box.im_hi}};
  constexpr int kPerEdge = 16;
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[e], b = corners[(e + 1) % 4];
    cplx prev = a, fprev = F.value(a);
    for (int j = 1; j <= kPerEdge; ++j) {
      const cplx p = a + (b - a) * (static_cast<double>(j) / kPerEdge);
      const cplx fp = F.value(p);
      if (std::abs(fp) < 1e-9) throw NumericalError(Errc::no_convergence, "zero on the counting contour");
      total += segment_winding(F, prev, fprev, p, fp, 0);
      prev = p;
      fprev = fp;
    }
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

namespace {

void solve_box(const ModeFunction& F, const Box& box, int count, int depth, std::vector<ResonanceCandidate>& found,
               std::vector<ModeFailure>& failures) {
  if (count <= 0) return;
  const double width = box.re_hi - box.re_lo, height = box.im_hi - box.im_lo;
  if (count == 1) {
    const cplx center(0.5 * (box.re_lo + box.re_hi), 0.5 * (box.im_lo + box.im_hi));
    if (const auto root = plain_newton(F, center, 40, 1e-14); root && box.contains(*root)) {
      try {
        ResonanceCandidate c = certified_solve(F, *root, {});
        if (box.contains(c.z)) {
          found.push_back(c);
          return;
        }
      } catch (const NumericalError&) {
      }
    }
  }
  if (depth >= 30) {
    failures.push_back({F.n, -1, std::to_string(count) + " unresolved zeros near " + format_real(box.re_lo) + " " +
                                     format_real(box.im_lo)});
    return;
  }
  // Bisect off-centre so that split lines rarely pass through a zero.
  const double rs = box.re_lo + 0.4999 * width, is = box.im_lo + 0.5001 * height;
  const Box parts[4] = {{box.re_lo, rs, box.im_lo, is},
                        {rs, box.re_hi, box.im_lo, is},
                        {box.re_lo, rs, is, box.im_hi},
                        {rs, box.re_hi, is, box.im_hi}};
  int counted = 0;
  int sub[4];
  for (int i = 0; i < 4; ++i) {
    sub[i] = count_mode_zeros(F, parts[i]);
    counted += sub[i];
  }
  if (counted != count) {
    failures.push_back({F.n, -1, "zero count " + std::to_string(count) + " did not split consistently (" +
                                     std::to_string(counted) + ")"});
  }
  for (int i = 0; i < 4; ++i) solve_box(F, parts[i], sub[i], depth + 1, found, failures);
}

}  // namespace

SweepResult disk_resonances_in_box(double h, const PotentialSpec& pot, Model model, int n_max, const Box& box) {
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
  if (!(box.re_lo < box.re_hi && box.im_lo < box.im_hi)) throw std::invalid_argument("box must have positive area");
  pot.validate();
  std::vector<std::vector<ResonanceCandidate>> per_mode(n_max + 1);
  std::vector<std::vector<ModeFailure>> per_fail(n_max + 1);
  parallel_for(static_cast<std::size_t>(n_max + 1), [&](std::size_t n) {
    const ModeFunction F{static_cast<int>(n), h, pot, model};
    try {
      const int count = count_mode_zeros(F, box);
      solve_box(F, box, count, 0, per_mode[n], per_fail[n]);
    } catch (const std::exception& e) {
      per_fail[n].push_back({static_cast<int>(n), -1, e.what()});
    }
  });
  SweepResult out;
  for (int n = 0; n <= n_max; ++n) {
    out.candidates.insert(out.candidates.end(), per_mode[n].begin(), per_mode[n].end());
    out.failures.insert(out.failures.end(), per_fail[n].begin(), per_fail[n].end());
  }
  sort_and_dedupe(out.candidates, kDedupe);
  return out;
}

}  // namespace sabine
