#include "sabine/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sabine/format.hpp"

namespace sabine {
namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string oracle_csv(const std::vector<ResonanceCandidate>& candidates, double alpha, double V0) {
  std::ostringstream os;
  os << "model,n,k,h,alpha,V0,re_z,im_z,residual\n";
  for (const auto& c : candidates) {
    os << to_string(c.model) << ',' << c.n << ',' << c.k << ',' << format_sig17(c.h) << ',' << format_sig17(alpha)
       << ',' << format_sig17(V0) << ',' << format_sig17(c.z.real()) << ',' << format_sig17(c.z.imag()) << ','
       << format_sig17(c.residual) << '\n';
  }
  return os.str();
}

std::string search_csv(const std::vector<ResonanceCandidate>& candidates) {
  std::ostringstream os;
  os << "re_z,im_z,sigma_min,cond,sabine_margin,quad_N,h\n";
  for (const auto& c : candidates) {
    os << format_sig17(c.z.real()) << ',' << format_sig17(c.z.imag()) << ',' << format_sig17(c.residual) << ','
       << format_sig17(c.cond) << ',' << format_sig17(c.sabine_margin) << ',' << c.quad_N << ',' << format_sig17(c.h)
       << '\n';
  }
  return os.str();
}

std::string orbit_csv(const std::vector<OrbitSegment>& orbit) {
  std::ostringstream os;
  os << "s,xi,x,y,chord\n";
  for (const auto& seg : orbit) {
    os << format_sig17(seg.from.s) << ',' << format_sig17(seg.from.xi) << ',' << format_sig17(seg.from_position.x)
       << ',' << format_sig17(seg.from_position.y) << ',' << format_sig17(seg.chord_length) << '\n';
  }
  return os.str();
}

std::string sabine_csv(const std::vector<SabineReport>& reports) {
  std::ostringstream os;
  os << "h,model,bound,min_s,min_xi,grid,converged\n";
  for (const auto& r : reports) {
    os << format_sig17(r.h) << ',' << to_string(r.model) << ',' << format_sig17(r.bound) << ','
       << format_sig17(r.minimizer.s) << ',' << format_sig17(r.minimizer.xi) << ',' << r.grid << ','
       << (r.converged ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string render_plot(const std::vector<ResonanceCandidate>& candidates,
                        const std::vector<std::pair<double, double>>& bound_curve, const std::string& title) {
  if (candidates.empty() && bound_curve.empty()) throw std::invalid_argument("nothing to plot");
  constexpr double W = 640, H = 480, left = 70, right = 20, top = 40, bottom = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  auto extend = [&](double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  };
  for (const auto& c : candidates) extend(c.z.real() / c.h, c.z.imag() / c.h);
  for (const auto& [x, y] : bound_curve) extend(x, y);
  const double padx = std::max(1e-3, 0.05 * (x1 - x0)), pady = std::max(1e-3, 0.05 * (y1 - y0));
  x0 -= padx;
  x1 += padx;
  y0 -= pady;
  y1 += pady;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (W - left - right); };
  auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * (H - top - bottom); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
  os << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  os << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
     << escape(title) << "</text>\n";
  os << "<g stroke=\"black\" fill=\"none\">\n";
  os << "<rect x=\"" << fixed(left, 2) << "\" y=\"" << fixed(top, 2) << "\" width=\"" << fixed(W - left - right, 2)
     << "\" height=\"" << fixed(H - top - bottom, 2) << "\"/>\n</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4.0, yv = y0 + (y1 - y0) * t / 4.0;
    os << "<text x=\"" << fixed(px(xv), 2) << "\" y=\"" << fixed(H - bottom + 16, 2) << "\" text-anchor=\"middle\">"
       << tick_label(xv) << "</text>\n";
    os << "<text x=\"" << fixed(left - 6, 2) << "\" y=\"" << fixed(py(yv) + 4, 2) << "\" text-anchor=\"end\">"
       << tick_label(yv) << "</text>\n";
  }
  os << "<text x=\"" << fixed(left + (W - left - right) / 2, 2) << "\" y=\"" << fixed(H - 12, 2)
     << "\" text-anchor=\"middle\">Re lambda</text>\n";
  os << "<text x=\"16\" y=\"" << fixed(top + (H - top - bottom) / 2, 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << fixed(top + (H - top - bottom) / 2, 2) << ")\">Im lambda</text>\n</g>\n";
  if (!bound_curve.empty()) {
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < bound_curve.size(); ++i) {
      os << (i ? " " : "") << fixed(px(bound_curve[i].first), 2) << ',' << fixed(py(bound_curve[i].second), 2);
    }
    os << "\"/>\n";
  }
  os << "<g fill=\"steelblue\">\n";
  for (const auto& c : candidates) {
    os << "<circle cx=\"" << fixed(px(c.z.real() / c.h), 2) << "\" cy=\"" << fixed(py(c.z.imag() / c.h), 2)
       << "\" r=\"3\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void emit_plot(const std::vector<ResonanceCandidate>& candidates,
               const std::vector<std::pair<double, double>>& bound_curve, const std::string& path,
               const std::string& title) {
  write_text_file(path, render_plot(candidates, bound_curve, title));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("io-error: cannot open " + path);
  os << content;
  if (!os) throw std::runtime_error("io-error: write to " + path + " failed");
}

}  // namespace sabine
