#pragma once

// Spherical geometry kernel: unit vectors, great circles, directed arcs of
// great circles (including arcs longer than pi), arc/arc intersection events
// and the crossing-orientation sign.
//
// Every predicate answers through a tolerance band; a configuration is only
// considered certified when it clears each band.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cstdint>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "thrackle/errors.hpp"

namespace thrackle {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct ToleranceConfig {
  double eps_unit = 1e-10;    // slack on |v| = 1 and on arc/vertex agreement
  double eps_event = 1e-6;    // radians; minimum separation between events
  double eps_medium = 1e-6;   // radians; exclusion band around length pi
  double eps_circle = 1e-9;   // threshold on |pole_e x pole_f|

  // Throws InvalidArgument unless all values are positive and
  // eps_event > 10 * eps_unit, and each is small (eps_event, eps_medium and
  // eps_circle below 0.1, eps_unit below 1e-3).
  void validate() const;

  // Same tolerances with eps_event replaced; used for certification at a
  // requested margin.
  ToleranceConfig with_event(double eps) const {
    ToleranceConfig t = *this;
    t.eps_event = eps;
    return t;
  }
};

class UnitVector {
 public:
  UnitVector() : v_(0.0, 0.0, 1.0) {}
  // Normalizes; throws InvalidArgument on a (near) zero vector.
  explicit UnitVector(const Vec3& v);
  UnitVector(double x, double y, double z) : UnitVector(Vec3(x, y, z)) {}

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  double dot(const UnitVector& o) const { return v_.dot(o.v_); }
  UnitVector operator-() const { return from_normalized(-v_); }

  // Wraps a vector that is already unit length (no renormalization).
  static UnitVector from_normalized(const Vec3& v) {
    UnitVector u;
    u.v_ = v;
    return u;
  }

 private:
  Vec3 v_;
};

// Angle between two unit vectors, stable for nearly equal and nearly
// antipodal inputs.
double angular_distance(const UnitVector& a, const UnitVector& b);

struct GreatCircle {
  UnitVector pole;

  // Equal as point sets: poles parallel or antiparallel.
  bool same_circle(const GreatCircle& other, const ToleranceConfig& tol = {}) const;
};

enum class LengthClass { Short, Long };

std::string_view to_string(LengthClass c);

// Directed great-circle arc. Travel is counterclockwise about `pole` (as seen
// from the tip of the pole) starting at `start` and sweeping `angle` radians.
class Arc {
 public:
  // Validates that start and end are orthogonal to pole, that rotating start
  // by angle reproduces end, and that angle lies in (0, 2 pi) outside the
  // medium band. Throws InvariantError / MediumEdge.
  Arc(const UnitVector& start, const UnitVector& end, const UnitVector& pole, double angle,
      const ToleranceConfig& tol = {});

  // Builds the arc from start, pole and angle; end is derived.
  static Arc from_pole(const UnitVector& start, const UnitVector& pole, double angle,
                       const ToleranceConfig& tol = {});

  const UnitVector& start() const { return start_; }
  const UnitVector& end() const { return end_; }
  const UnitVector& pole() const { return pole_; }
  double angle() const { return angle_; }
  GreatCircle circle() const { return GreatCircle{pole_}; }
  LengthClass length_class() const { return angle_ > kPi ? LengthClass::Long : LengthClass::Short; }

  // Point at arc parameter t (radians from start).
  UnitVector point_at(double t) const;
  // Parameter in [0, 2 pi) of the projection of p onto the arc's circle.
  double param_of(const Vec3& p) const;
  // Same arc traversed end -> start.
  Arc reversed() const;

 private:
  Arc() = default;

  UnitVector start_;
  UnitVector end_;
  UnitVector pole_;
  Vec3 ortho_;  // pole x start: direction of travel at start
  double angle_ = 0.0;
};

GreatCircle circle_through(const UnitVector& a, const UnitVector& b,
                           const ToleranceConfig& tol = {});

Arc arc_between(const UnitVector& a, const UnitVector& b, bool want_long,
                const ToleranceConfig& tol = {});

enum class PointPosition { Interior, StartPoint, EndPoint, Outside };

std::string_view to_string(PointPosition p);

PointPosition point_position(const Arc& arc, const UnitVector& p, const ToleranceConfig& tol = {});

enum class EventKind { ProperCrossing, SharedEndpoint, VertexOnInterior, Tangency };

std::string_view to_string(EventKind k);

struct IntersectionEvent {
  UnitVector point;
  EventKind kind = EventKind::ProperCrossing;
  double on_e = 0.0;  // arc parameter along the first arc
  double on_f = 0.0;  // arc parameter along the second arc
};

// All points where e and f meet. Throws CoCircular when the two arcs share a
// great circle.
std::vector<IntersectionEvent> arc_pair_intersections(const Arc& e, const Arc& f,
                                                      const ToleranceConfig& tol = {});

// Unit direction of travel along arc at p. Throws PointNotOnArc.
UnitVector tangent_at(const Arc& arc, const UnitVector& p, const ToleranceConfig& tol = {});

// chi(e, f): sign of (t_e x t_f) . p with p the meeting point taken as the
// outward normal. Throws DegenerateOrientation for parallel tangents.
int crossing_orientation(const Arc& e, const Arc& f, const IntersectionEvent& at,
                         const ToleranceConfig& tol = {});

// sign(p . pole) with a zero band of width eps_event.
int hemisphere_side(const GreatCircle& c, const UnitVector& p, const ToleranceConfig& tol = {});

// Moves every point by an angular distance of at most `margin`,
// deterministically from `seed`. Requires margin < eps_event / 4.
std::vector<UnitVector> perturb_to_general_position(std::span<const UnitVector> points,
                                                    std::uint64_t seed, double margin,
                                                    const ToleranceConfig& tol = {});

// Rotates p about axis by angle (right-hand rule).
UnitVector rotate(const UnitVector& p, const UnitVector& axis, double angle);

// Angular distance from p to the closed arc.
double distance_to_arc(const Arc& arc, const UnitVector& p);

}  // namespace thrackle
