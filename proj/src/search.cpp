#include "sabine/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sabine/billiards.hpp"
#include "sabine/error.hpp"
#include "sabine/format.hpp"
#include "sabine/parallel.hpp"

namespace sabine {
namespace {

std::string describe(cplx z) { return format_real(z.real()) + (z.imag() < 0 ? " - " : " + ") + format_real(std::abs(z.imag())) + "i"; }

double linspace(double lo, double hi, int count, int i) {
  if (count == 1) return 0.5 * (lo + hi);
  return lo + (hi - lo) * i / (count - 1);
}

}  // namespace

void SearchWindow::validate() const {
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("h must lie in (0, 1)");
  if (!(re_lo <= re_hi) || !(im_lo <= im_hi)) throw std::invalid_argument("window ranges must be ordered");
  if (im_hi > 0.0) throw std::invalid_argument("window must lie in Im z <= 0");
  if (!(strip_M > 0.0)) throw std::invalid_argument("strip multiplier must be positive");
  const double floor = -strip_M * h * std::log(1.0 / h);
  if (im_lo < floor - 1e-12) {
    throw std::invalid_argument("window reaches Im z = " + format_real(im_lo) + " below the strip floor " +
                                format_real(floor));
  }
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid must have at least one node per axis");
  if (quad_N < 16 || quad_N % 2 != 0) throw std::invalid_argument("quad_N must be even and at least 16");
}

double SearchWindow::re_at(int ix) const { return linspace(re_lo, re_hi, nx, ix); }
double SearchWindow::im_at(int iy) const { return linspace(im_lo, im_hi, ny, iy); }
double SearchWindow::cell_re() const { return nx > 1 ? (re_hi - re_lo) / (nx - 1) : 0.0; }
double SearchWindow::cell_im() const { return ny > 1 ? (im_hi - im_lo) / (ny - 1) : 0.0; }

ScanField scan(const SearchWindow& window, const BoundaryCurve& curve, const PotentialSpec& pot) {
  window.validate();
  const NystromGrid grid = make_grid(curve, window.quad_N);
  ScanField field{window.nx, window.ny, std::vector<ScanSample>(static_cast<std::size_t>(window.nx) * window.ny)};
  parallel_for(field.samples.size(), [&](std::size_t c) {
    const int ix = static_cast<int>(c % window.nx), iy = static_cast<int>(c / window.nx);
    const cplx z(window.re_at(ix), window.im_at(iy));
    try {
      const SigmaResult s = sigma_min_boundary_operator(grid, z, window.h, pot);
      field.samples[c] = {z, s.sigma_min, s.cond};
    } catch (const NumericalError& e) {
      throw NumericalError(e.code(), "cell (" + std::to_string(ix) + ", " + std::to_string(iy) + "): " + e.what());
    }
  });
  return field;
}

std::vector<std::pair<int, int>> local_minima(const ScanField& field) {
  std::vector<std::pair<int, int>> out;
  for (int iy = 0; iy < field.ny; ++iy) {
    for (int ix = 0; ix < field.nx; ++ix) {
      const double v = field.at(ix, iy).sigma_min;
      const std::size_t self = static_cast<std::size_t>(iy) * field.nx + ix;
      bool minimum = true;
      for (int dy = -1; dy <= 1 && minimum; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int jx = ix + dx, jy = iy + dy;
          if ((dx == 0 && dy == 0) || jx < 0 || jy < 0 || jx >= field.nx || jy >= field.ny) continue;
          const double w = field.at(jx, jy).sigma_min;
          const std::size_t other = static_cast<std::size_t>(jy) * field.nx + jx;
          // Ties go to the lower index so plateaus yield one seed.
          if (w < v || (w == v && other < self)) {
            minimum = false;
            break;
          }
        }
      }
      if (minimum) out.emplace_back(ix, iy);
    }
  }
  return out;
}

double default_accept_tol(int quad_N) { return 1e-3 * (256.0 / quad_N); }

ResonanceCandidate refine(cplx start, const BoundaryCurve& curve, const PotentialSpec& pot, double h, int quad_N,
                          const RefineOptions& options) {
  const double accept = options.accept_tol.value_or(default_accept_tol(quad_N));
  const NystromGrid grid = make_grid(curve, quad_N);
  auto objective = [&](cplx z) { return sigma_min_boundary_operator(grid, z, h, pot); };

  double step = 1e-3;
  if (options.window) {
    step = 0.5 * std::max(options.window->cell_re(), options.window->cell_im());
    if (step == 0.0) step = 1e-3;
  }
  struct Vertex {
    cplx z;
    double f;
  };
  std::array<Vertex, 3> s{{{start, 0.0}, {start + step, 0.0}, {start + cplx(0.0, step), 0.0}}};
  int evals = 0;
  auto eval = [&](cplx z) {
    ++evals;
    return objective(z).sigma_min;
  };
  for (auto& v : s) v.f = eval(v.z);
  auto diameter = [&] {
    return std::max({std::abs(s[0].z - s[1].z), std::abs(s[0].z - s[2].z), std::abs(s[1].z - s[2].z)});
  };
  while (diameter() > options.diameter && evals < options.max_evaluations) {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    const cplx centroid = 0.5 * (s[0].z + s[1].z);
    const cplx xr = centroid + (centroid - s[2].z);
    const double fr = eval(xr);
    if (fr < s[0].f) {
      const cplx xe = centroid + 2.0 * (centroid - s[2].z);
      const double fe = eval(xe);
      s[2] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < s[1].f) {
      s[2] = {xr, fr};
    } else {
      const bool outside = fr < s[2].f;
      const cplx xc = outside ? centroid + 0.5 * (xr - centroid) : centroid + 0.5 * (s[2].z - centroid);
      const double fc = eval(xc);
      if (fc < std::min(fr, s[2].f)) {
        s[2] = {xc, fc};
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].z = s[0].z + 0.5 * (s[i].z - s[0].z);
          s[i].f = eval(s[i].z);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  const cplx z = s[0].z;
  if (options.window) {
    const SearchWindow& w = *options.window;
    const double mr = w.cell_re(), mi = w.cell_im();
    if (z.real() < w.re_lo - mr || z.real() > w.re_hi + mr || z.imag() < w.im_lo - mi || z.imag() > w.im_hi + mi) {
      throw NumericalError(Errc::drifted_out_of_window, "refinement from " + describe(start) + " drifted to " +
                                                            describe(z));
    }
  }
  const SigmaResult fin = objective(z);
  if (!(fin.sigma_min < accept) || !(fin.cond > 1.0 / accept)) {
    throw NumericalError(Errc::not_a_resonance, "minimum at " + describe(z) + " has sigma_min " +
                                                    format_real(fin.sigma_min) + " and cond " + format_real(fin.cond));
  }
  ResonanceCandidate c;
  c.z = z;
  c.h = h;
  c.residual = fin.sigma_min;
  c.provenance = Provenance::bie;
  c.quad_N = quad_N;
  c.cond = fin.cond;
  return c;
}

SearchResult find_resonances(const SearchWindow& window, const BoundaryCurve& curve, const PotentialSpec& pot,
                             const SearchOptions& options) {
  SearchResult out;
  out.field = scan(window, curve, pot);
  if (options.sabine_bound) {
    out.sabine_bound = *options.sabine_bound;
  } else {
    const SabineReport rep = sabine_gap(curve, window.h, pot, Model::delta);
    out.sabine_bound = rep.bound;
    out.warnings = rep.warnings;
  }
  if (!curve.strictly_convex()) out.warnings.push_back("curve is not strictly convex; the Sabine bound is outside the theorem");
  const auto seeds = local_minima(out.field);
  std::vector<std::optional<ResonanceCandidate>> found(seeds.size());
  std::vector<std::string> errors(seeds.size());
  RefineOptions ro = options.refine;
  ro.window = window;
  parallel_for(seeds.size(), [&](std::size_t i) {
    const cplx start = out.field.at(seeds[i].first, seeds[i].second).z;
    try {
      found[i] = refine(start, curve, pot, window.h, window.quad_N, ro);
    } catch (const NumericalError& e) {
      errors[i] = e.what();
    }
  });
  std::vector<ResonanceCandidate> list;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (found[i]) {
      list.push_back(*found[i]);
    } else {
      out.failures.push_back({out.field.at(seeds[i].first, seeds[i].second).z, errors[i]});
    }
  }
  std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  for (auto& c : list) {
    const bool dup = std::any_of(out.candidates.begin(), out.candidates.end(),
                                 [&](const auto& k) { return std::abs(k.z - c.z) < options.dedupe; });
    if (dup) continue;
    c.sabine_margin = c.depth() - out.sabine_bound;
    out.candidates.push_back(c);
  }
  return out;
}

}  // namespace sabine
