#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sabine {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Boundary data at arclength s. The tangent points in the direction of
/// increasing s (counterclockwise) and the normal points out of the domain,
/// so (tangent, normal) is right-handed with normal = tangent rotated by -90°.
struct SurfacePoint {
  double s = 0.0;
  Vec2 position;
  Vec2 tangent;
  Vec2 normal;
  double curvature = 0.0;
};

enum class CurveKind { circle, ellipse, stadium };

struct RayHit {
  SurfacePoint point;
  double travel = 0.0;
};

struct Diameter {
  double length = 0.0;
  /// Realizing pairs. For a circle every antipodal pair realizes the
  /// diameter; `continuous_family` is set and `pairs` holds a uniform sample.
  std::vector<std::pair<SurfacePoint, SurfacePoint>> pairs;
  bool continuous_family = false;
};

/// Smooth (or C^{1,1} for the stadium) closed convex curve in arclength
/// parametrization. Immutable; copies share the precomputed tables.
class BoundaryCurve {
 public:
  static BoundaryCurve circle(double radius);
  static BoundaryCurve ellipse(double a, double b);
  static BoundaryCurve stadium(double half_length, double cap_radius);

  /// Parses "circle:r=1", "ellipse:a=2,b=1", "stadium:l=1,r=1".
  /// Throws std::invalid_argument naming the offending part.
  static BoundaryCurve parse(std::string_view spec);

  /// Same curve with arclength origin moved forward by `shift`.
  BoundaryCurve with_anchor(double shift) const;

  CurveKind kind() const;
  double total_length() const;
  double anchor() const;
  std::string spec() const;

  /// False for the stadium, whose curvature jumps at the four junctions.
  bool strictly_convex() const;

  /// Parameters: circle {r}, ellipse {a, b}, stadium {l, r}.
  std::vector<double> parameters() const;

  double wrap(double s) const;
  SurfacePoint point_at(double s) const;

  /// Arclength of the point with parameter angle t, i.e. (a cos t, b sin t)
  /// on an ellipse. Unsupported for the stadium.
  double arclength_of_angle(double t) const;
  double angle_of_arclength(double s) const;

  Diameter diameter() const;

  /// First boundary intersection of origin + t*direction, t > 0. The origin
  /// may lie inside or on the curve; `direction` must be a unit vector.
  RayHit ray_exit(Vec2 origin, Vec2 direction) const;

  /// Signed level function: negative inside, zero on the curve.
  double level(Vec2 p) const;

 private:
  struct Impl;
  explicit BoundaryCurve(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

}  // namespace sabine
