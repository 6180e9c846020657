#include "sabine/geometry.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <numbers>
#include <stdexcept>

#include "sabine/config.hpp"
#include "sabine/error.hpp"
#include "sabine/format.hpp"

namespace sabine {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 10-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 5> kGaussNodes = {
    0.1488743389816312108848260, 0.4333953941292471907992659, 0.6794095682990244062343274,
    0.8650633666889845107320967, 0.9739065285171717200779640};
constexpr std::array<double, 5> kGaussWeights = {
    0.2955242247147528701738930, 0.2692667193099963550912269, 0.2190863625159820439955349,
    0.1494513491505805931457763, 0.0666713443086881375935688};

double wrap_periodic(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r -= period;
  return r;
}

struct Quadratic {
  int count = 0;
  double lo = 0.0, hi = 0.0;
};

// Real roots of a t^2 + 2 b t + c = 0 (a > 0), computed without cancellation.
Quadratic solve_half_b(double a, double b, double c) {
  const double disc = b * b - a * c;
  if (disc < 0.0) return {};
  const double root = std::sqrt(disc);
  const double q = -(b + std::copysign(root, b));
  Quadratic out;
  out.count = 2;
  if (q == 0.0) {
    out.lo = out.hi = 0.0;
    return out;
  }
  const double t1 = q / a;
  const double t2 = c / q;
  out.lo = std::min(t1, t2);
  out.hi = std::max(t1, t2);
  return out;
}

}  // namespace

struct BoundaryCurve::Impl {
  CurveKind kind = CurveKind::circle;
  double p0 = 1.0;  // circle r, ellipse a, stadium l
  double p1 = 1.0;  // ellipse b, stadium r
  double length = 0.0;
  double anchor = 0.0;

  // Ellipse arclength table over parameter angle.
  static constexpr int kTableSize = 4096;
  std::vector<double> cumulative;

  // Stadium junctions.
  std::array<double, 5> junction{};

  double speed(double t) const {
    const double st = std::sin(t), ct = std::cos(t);
    return std::sqrt(p0 * p0 * st * st + p1 * p1 * ct * ct);
  }

  double gauss_arc(double t0, double t1) const {
    const double half = 0.5 * (t1 - t0), mid = 0.5 * (t0 + t1);
    double sum = 0.0;
    for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
      sum += kGaussWeights[i] * (speed(mid - half * kGaussNodes[i]) + speed(mid + half * kGaussNodes[i]));
    }
    return half * sum;
  }

  void build_ellipse_table() {
    cumulative.assign(kTableSize + 1, 0.0);
    const double step = kTwoPi / kTableSize;
    for (int k = 0; k < kTableSize; ++k) {
      cumulative[k + 1] = cumulative[k] + gauss_arc(k * step, (k + 1) * step);
    }
    length = cumulative.back();
  }

  // Ellipse: arclength from t = 0 to t in [0, 2pi].
  double ellipse_arc(double t) const {
    const double step = kTwoPi / kTableSize;
    int k = static_cast<int>(t / step);
    k = std::clamp(k, 0, kTableSize - 1);
    return cumulative[k] + gauss_arc(k * step, t);
  }

  double ellipse_angle(double s) const {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), s);
    int k = static_cast<int>(it - cumulative.begin()) - 1;
    k = std::clamp(k, 0, kTableSize - 1);
    const double step = kTwoPi / kTableSize;
    const double t0 = k * step, t1 = (k + 1) * step;
    const double s0 = cumulative[k], s1 = cumulative[k + 1];
    const double ds = s1 - s0;
    const double u = (s - s0) / ds;
    // Cubic Hermite in s with exact slopes dt/ds = 1/speed.
    const double m0 = ds / speed(t0), m1 = ds / speed(t1);
    const double u2 = u * u, u3 = u2 * u;
    double t = (2 * u3 - 3 * u2 + 1) * t0 + (u3 - 2 * u2 + u) * m0 + (-2 * u3 + 3 * u2) * t1 +
               (u3 - u2) * m1;
    t -= (ellipse_arc(t) - s) / speed(t);
    return t;
  }

  SurfacePoint ellipse_point(double t, double s_base) const {
    const double st = std::sin(t), ct = std::cos(t);
    const double v = speed(t);
    SurfacePoint p;
    p.s = s_base;
    p.position = {p0 * ct, p1 * st};
    p.tangent = {-p0 * st / v, p1 * ct / v};
    p.normal = {p1 * ct / v, p0 * st / v};
    p.curvature = p0 * p1 / (v * v * v);
    return p;
  }

  SurfacePoint circle_point(double s_base) const {
    const double phi = s_base / p0;
    const double c = std::cos(phi), s = std::sin(phi);
    SurfacePoint p;
    p.s = s_base;
    p.position = {p0 * c, p0 * s};
    p.tangent = {-s, c};
    p.normal = {c, s};
    p.curvature = 1.0 / p0;
    return p;
  }

  SurfacePoint cap_point(Vec2 center, double phi, double s_base) const {
    const double c = std::cos(phi), s = std::sin(phi);
    SurfacePoint p;
    p.s = s_base;
    p.position = {center.x + p1 * c, center.y + p1 * s};
    p.tangent = {-s, c};
    p.normal = {c, s};
    p.curvature = 1.0 / p1;
    return p;
  }

  // Junction points belong to the caps, so their curvature is 1/r.
  SurfacePoint stadium_point(double s_base) const {
    const double l = p0, r = p1;
    const auto& j = junction;
    if (s_base <= j[0]) return cap_point({l, 0.0}, s_base / r, s_base);
    if (s_base < j[1]) {
      SurfacePoint p;
      p.s = s_base;
      p.position = {l - (s_base - j[0]), r};
      p.tangent = {-1.0, 0.0};
      p.normal = {0.0, 1.0};
      return p;
    }
    if (s_base <= j[2]) return cap_point({-l, 0.0}, 0.5 * kPi + (s_base - j[1]) / r, s_base);
    if (s_base < j[3]) {
      SurfacePoint p;
      p.s = s_base;
      p.position = {-l + (s_base - j[2]), -r};
      p.tangent = {1.0, 0.0};
      p.normal = {0.0, -1.0};
      return p;
    }
    return cap_point({l, 0.0}, 1.5 * kPi + (s_base - j[3]) / r, s_base);
  }

  SurfacePoint base_point(double s_base) const {
    switch (kind) {
      case CurveKind::circle:
        return circle_point(s_base);
      case CurveKind::ellipse:
        return ellipse_point(ellipse_angle(s_base), s_base);
      case CurveKind::stadium:
        return stadium_point(s_base);
    }
    return {};
  }

  // Base arclength of a point known to lie on the curve.
  double base_arclength_of(Vec2 p) const {
    switch (kind) {
      case CurveKind::circle:
        return wrap_periodic(p0 * std::atan2(p.y, p.x), length);
      case CurveKind::ellipse: {
        const double t = wrap_periodic(std::atan2(p.y / p1, p.x / p0), kTwoPi);
        return wrap_periodic(ellipse_arc(t), length);
      }
      case CurveKind::stadium: {
        const double l = p0, r = p1;
        const auto& j = junction;
        if (std::abs(p.x) < l) {
          return p.y > 0.0 ? j[0] + (l - p.x) : j[2] + (p.x + l);
        }
        if (p.x >= l) {
          const double phi = std::atan2(p.y, p.x - l);
          return phi >= 0.0 ? r * phi : wrap_periodic(j[3] + r * (phi + 0.5 * kPi), length);
        }
        double phi = std::atan2(p.y, p.x + l);
        if (phi < 0.0) phi += kTwoPi;
        return j[1] + r * (phi - 0.5 * kPi);
      }
    }
    return 0.0;
  }

  double level(Vec2 p) const {
    switch (kind) {
      case CurveKind::circle:
        return norm(p) - p0;
      case CurveKind::ellipse:
        return (p.x / p0) * (p.x / p0) + (p.y / p1) * (p.y / p1) - 1.0;
      case CurveKind::stadium: {
        const double cx = std::clamp(p.x, -p0, p0);
        return std::hypot(p.x - cx, p.y) - p1;
      }
    }
    return 0.0;
  }

  Vec2 level_gradient(Vec2 p) const {
    switch (kind) {
      case CurveKind::circle:
        return (1.0 / norm(p)) * p;
      case CurveKind::ellipse:
        return {2.0 * p.x / (p0 * p0), 2.0 * p.y / (p1 * p1)};
      case CurveKind::stadium: {
        const Vec2 d{p.x - std::clamp(p.x, -p0, p0), p.y};
        return (1.0 / norm(d)) * d;
      }
    }
    return {};
  }

  double scale() const { return kind == CurveKind::ellipse ? p0 : p0 + p1; }

  // Largest ray parameter at which origin + t*dir meets the curve.
  double exit_parameter(Vec2 o, Vec2 d) const {
    switch (kind) {
      case CurveKind::circle: {
        const auto q = solve_half_b(1.0, dot(o, d), dot(o, o) - p0 * p0);
        if (q.count == 0) break;
        return q.hi;
      }
      case CurveKind::ellipse: {
        const Vec2 os{o.x / p0, o.y / p1}, ds{d.x / p0, d.y / p1};
        const auto q = solve_half_b(dot(ds, ds), dot(os, ds), dot(os, os) - 1.0);
        if (q.count == 0) break;
        return q.hi;
      }
      case CurveKind::stadium: {
        const double l = p0, r = p1;
        const double slack = 1e-12 * scale();
        double best = -std::numeric_limits<double>::infinity();
        for (double side : {r, -r}) {
          if (d.y == 0.0) continue;
          const double t = (side - o.y) / d.y;
          if (std::abs(o.x + t * d.x) <= l + slack) best = std::max(best, t);
        }
        for (double cx : {l, -l}) {
          const Vec2 rel{o.x - cx, o.y};
          const auto q = solve_half_b(1.0, dot(rel, d), dot(rel, rel) - r * r);
          if (q.count == 0) continue;
          for (double t : {q.lo, q.hi}) {
            const double x = o.x + t * d.x;
            if ((cx > 0 && x >= l - slack) || (cx < 0 && x <= -l + slack)) best = std::max(best, t);
          }
        }
        if (std::isfinite(best)) return best;
        break;
      }
    }
    throw NumericalError(Errc::no_convergence, "ray does not meet the boundary");
  }
};

BoundaryCurve::BoundaryCurve(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

BoundaryCurve BoundaryCurve::circle(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("circle radius must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = CurveKind::circle;
  impl->p0 = radius;
  impl->length = kTwoPi * radius;
  return BoundaryCurve(std::move(impl));
}

BoundaryCurve BoundaryCurve::ellipse(double a, double b) {
  if (!(b > 0.0) || !(a >= b) || !std::isfinite(a)) {
    throw std::invalid_argument("ellipse requires semi-axes a >= b > 0");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = CurveKind::ellipse;
  impl->p0 = a;
  impl->p1 = b;
  impl->build_ellipse_table();
  return BoundaryCurve(std::move(impl));
}

BoundaryCurve BoundaryCurve::stadium(double half_length, double cap_radius) {
  if (!(half_length > 0.0) || !(cap_radius > 0.0) || !std::isfinite(half_length) || !std::isfinite(cap_radius)) {
    throw std::invalid_argument("stadium requires l > 0 and r > 0");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = CurveKind::stadium;
  impl->p0 = half_length;
  impl->p1 = cap_radius;
  const double quarter = 0.5 * kPi * cap_radius;
  impl->junction[0] = quarter;
  impl->junction[1] = quarter + 2.0 * half_length;
  impl->junction[2] = impl->junction[1] + kPi * cap_radius;
  impl->junction[3] = impl->junction[2] + 2.0 * half_length;
  impl->junction[4] = impl->junction[3] + quarter;
  impl->length = impl->junction[4];
  return BoundaryCurve(std::move(impl));
}

BoundaryCurve BoundaryCurve::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string kind(spec.substr(0, colon));
  std::map<std::string, double> values;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument("curve parameter '" + std::string(item) + "' is not key=value");
      }
      const std::string key(item.substr(0, eq));
      const std::string_view text = item.substr(eq + 1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("curve parameter '" + key + "' has invalid value '" + std::string(text) + "'");
      }
      values[key] = v;
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  auto take = [&](const char* key) {
    const auto it = values.find(key);
    if (it == values.end()) throw std::invalid_argument("curve '" + kind + "' is missing parameter '" + key + "'");
    const double v = it->second;
    values.erase(it);
    return v;
  };
  double anchor = 0.0;
  if (auto it = values.find("anchor"); it != values.end()) {
    anchor = it->second;
    values.erase(it);
  }
  BoundaryCurve curve = [&] {
    if (kind == "circle") return circle(take("r"));
    if (kind == "ellipse") {
      const double a = take("a");
      return ellipse(a, take("b"));
    }
    if (kind == "stadium") {
      const double l = take("l");
      return stadium(l, take("r"));
    }
    throw std::invalid_argument("unknown curve kind '" + kind + "'");
  }();
  if (!values.empty()) {
    throw std::invalid_argument("curve '" + kind + "' has unknown parameter '" + values.begin()->first + "'");
  }
  return anchor == 0.0 ? curve : curve.with_anchor(anchor);
}

BoundaryCurve BoundaryCurve::with_anchor(double shift) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->anchor = wrap_periodic(impl_->anchor + shift, impl_->length);
  return BoundaryCurve(std::move(impl));
}

CurveKind BoundaryCurve::kind() const { return impl_->kind; }
double BoundaryCurve::total_length() const { return impl_->length; }
double BoundaryCurve::anchor() const { return impl_->anchor; }
bool BoundaryCurve::strictly_convex() const { return impl_->kind != CurveKind::stadium; }

std::vector<double> BoundaryCurve::parameters() const {
  if (impl_->kind == CurveKind::circle) return {impl_->p0};
  return {impl_->p0, impl_->p1};
}

std::string BoundaryCurve::spec() const {
  std::string out;
  switch (impl_->kind) {
    case CurveKind::circle:
      out = "circle:r=" + format_real(impl_->p0);
      break;
    case CurveKind::ellipse:
      out = "ellipse:a=" + format_real(impl_->p0) + ",b=" + format_real(impl_->p1);
      break;
    case CurveKind::stadium:
      out = "stadium:l=" + format_real(impl_->p0) + ",r=" + format_real(impl_->p1);
      break;
  }
  if (impl_->anchor != 0.0) out += ",anchor=" + format_real(impl_->anchor);
  return out;
}

double BoundaryCurve::wrap(double s) const { return wrap_periodic(s, impl_->length); }

SurfacePoint BoundaryCurve::point_at(double s) const {
  const double s_wrapped = wrap(s);
  SurfacePoint p = impl_->base_point(wrap_periodic(s_wrapped + impl_->anchor, impl_->length));
  p.s = s_wrapped;
  return p;
}

double BoundaryCurve::arclength_of_angle(double t) const {
  switch (impl_->kind) {
    case CurveKind::circle:
      if (t == kTwoPi && impl_->anchor == 0.0) return impl_->length;
      return wrap(impl_->p0 * wrap_periodic(t, kTwoPi) - impl_->anchor);
    case CurveKind::ellipse: {
      if (t == kTwoPi && impl_->anchor == 0.0) return impl_->length;
      const double base = impl_->ellipse_arc(wrap_periodic(t, kTwoPi));
      return wrap(base - impl_->anchor);
    }
    case CurveKind::stadium:
      break;
  }
  throw NumericalError(Errc::unsupported_kind, "the stadium has no parameter angle; use arclength directly");
}

double BoundaryCurve::angle_of_arclength(double s) const {
  const double base = wrap_periodic(wrap(s) + impl_->anchor, impl_->length);
  switch (impl_->kind) {
    case CurveKind::circle:
      return base / impl_->p0;
    case CurveKind::ellipse:
      return impl_->ellipse_angle(base);
    case CurveKind::stadium:
      break;
  }
  throw NumericalError(Errc::unsupported_kind, "the stadium has no parameter angle; use arclength directly");
}

Diameter BoundaryCurve::diameter() const {
  Diameter d;
  const Impl& c = *impl_;
  auto at_base = [&](double s_base) { return point_at(s_base - c.anchor); };
  const bool round = c.kind == CurveKind::circle || (c.kind == CurveKind::ellipse && c.p0 == c.p1);
  if (round) {
    d.length = 2.0 * c.p0;
    d.continuous_family = true;
    constexpr int kSamples = 720;
    for (int i = 0; i < kSamples; ++i) {
      const double s = 0.5 * c.length * i / kSamples;
      d.pairs.emplace_back(point_at(s), point_at(s + 0.5 * c.length));
    }
    return d;
  }
  if (c.kind == CurveKind::ellipse) {
    d.length = 2.0 * c.p0;
    d.pairs.emplace_back(at_base(0.0), at_base(0.5 * c.length));
    return d;
  }
  d.length = 2.0 * (c.p0 + c.p1);
  d.pairs.emplace_back(at_base(0.0), at_base(c.junction[1] + 0.5 * kPi * c.p1));
  return d;
}

double BoundaryCurve::level(Vec2 p) const { return impl_->level(p); }

RayHit BoundaryCurve::ray_exit(Vec2 origin, Vec2 direction) const {
  const Impl& c = *impl_;
  const double lev = c.level(origin);
  const double on_tol = kTolerances.comparison;
  if (lev > on_tol) throw std::invalid_argument("ray origin lies outside the domain");
  if (std::abs(lev) <= on_tol) {
    Vec2 n = c.level_gradient(origin);
    n = (1.0 / norm(n)) * n;
    if (-dot(direction, n) < kTolerances.geometric) {
      throw NumericalError(Errc::tangent_launch, "inward component of the launch direction is below tolerance");
    }
  }
  double t = c.exit_parameter(origin, direction);
  Vec2 hit = origin + t * direction;
  // One correction along the ray cleans up rounding in the quadratic roots.
  const double slope = dot(c.level_gradient(hit), direction);
  if (slope != 0.0) {
    t -= c.level(hit) / slope;
    hit = origin + t * direction;
  }
  const double residual = std::abs(c.level(hit));
  if (residual > kTolerances.geometric * std::max(1.0, c.scale())) {
    throw NumericalError(Errc::no_convergence, "ray exit residual " + format_real(residual) + " above tolerance");
  }
  RayHit out;
  out.travel = t;
  out.point = point_at(wrap_periodic(c.base_arclength_of(hit), c.length) - c.anchor);
  out.point.position = hit;
  return out;
}

}  // namespace sabine
