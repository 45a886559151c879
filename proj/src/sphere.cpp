#include "thrackle/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace thrackle {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateCircle: return "DegenerateCircle";
    case ErrorCode::MediumEdge: return "MediumEdge";
    case ErrorCode::CoCircular: return "CoCircular";
    case ErrorCode::PointNotOnArc: return "PointNotOnArc";
    case ErrorCode::DegenerateOrientation: return "DegenerateOrientation";
    case ErrorCode::MalformedDrawing: return "MalformedDrawing";
    case ErrorCode::NotCertified: return "NotCertified";
    case ErrorCode::NotAPath: return "NotAPath";
    case ErrorCode::UnknownLemmaId: return "UnknownLemmaId";
    case ErrorCode::EvenCycleRequested: return "EvenCycleRequested";
    case ErrorCode::CapTooLarge: return "CapTooLarge";
    case ErrorCode::InsertionFailed: return "InsertionFailed";
    case ErrorCode::SplitFailed: return "SplitFailed";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvariantError: return "InvariantError";
    case ErrorCode::MalformedGraph6: return "MalformedGraph6";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

void ToleranceConfig::validate() const {
  if (!(eps_unit > 0 && eps_event > 0 && eps_medium > 0 && eps_circle > 0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be strictly positive");
  }
  if (!(eps_event > 10.0 * eps_unit)) {
    throw Error(ErrorCode::InvalidArgument, "eps_event must exceed 10 * eps_unit");
  }
  if (!(eps_event < 0.1 && eps_medium < 0.1 && eps_unit < 1e-3 && eps_circle < 0.1)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances are too large to be meaningful");
  }
}

UnitVector::UnitVector(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 1e-300) || !std::isfinite(n)) {
    throw Error(ErrorCode::InvalidArgument, "cannot normalize a zero or non-finite vector");
  }
  v_ = v / n;
}

double angular_distance(const UnitVector& a, const UnitVector& b) {
  return std::atan2(a.vec().cross(b.vec()).norm(), a.dot(b));
}

bool GreatCircle::same_circle(const GreatCircle& other, const ToleranceConfig& tol) const {
  return pole.vec().cross(other.pole.vec()).norm() < tol.eps_circle;
}

std::string_view to_string(LengthClass c) { return c == LengthClass::Long ? "Long" : "Short"; }

std::string_view to_string(PointPosition p) {
  switch (p) {
    case PointPosition::Interior: return "Interior";
    case PointPosition::StartPoint: return "StartPoint";
    case PointPosition::EndPoint: return "EndPoint";
    case PointPosition::Outside: return "Outside";
  }
  return "?";
}

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::ProperCrossing: return "ProperCrossing";
    case EventKind::SharedEndpoint: return "SharedEndpoint";
    case EventKind::VertexOnInterior: return "VertexOnInterior";
    case EventKind::Tangency: return "Tangency";
  }
  return "?";
}

namespace {

double wrap_two_pi(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

// Circular distance between two angles.
double angle_gap(double a, double b) {
  const double d = std::fabs(wrap_two_pi(a - b));
  return std::min(d, kTwoPi - d);
}

}  // namespace

Arc::Arc(const UnitVector& start, const UnitVector& end, const UnitVector& pole, double angle,
         const ToleranceConfig& tol)
    : start_(start), end_(end), pole_(pole), ortho_(pole.vec().cross(start.vec())), angle_(angle) {
  if (!(angle > 0.0 && angle < kTwoPi) || !std::isfinite(angle)) {
    throw Error(ErrorCode::InvariantError, "arc angle must lie in (0, 2pi)");
  }
  if (std::fabs(angle - kPi) <= tol.eps_medium) {
    throw Error(ErrorCode::MediumEdge, "arc length within eps_medium of pi");
  }
  if (std::fabs(start.dot(pole)) > tol.eps_unit || std::fabs(end.dot(pole)) > tol.eps_unit) {
    throw Error(ErrorCode::InvariantError, "arc endpoints are not on the pole's great circle");
  }
  const Vec3 rotated = std::cos(angle) * start.vec() + std::sin(angle) * ortho_;
  if ((rotated - end.vec()).norm() > tol.eps_unit) {
    std::ostringstream os;
    os << "rotating start by angle misses end by " << (rotated - end.vec()).norm();
    throw Error(ErrorCode::InvariantError, os.str());
  }
}

Arc Arc::from_pole(const UnitVector& start, const UnitVector& pole, double angle,
                   const ToleranceConfig& tol) {
  // Project start onto the circle so that the derived end is consistent.
  const Vec3 s = start.vec() - start.dot(pole) * pole.vec();
  const UnitVector st(s);
  const Vec3 ortho = pole.vec().cross(st.vec());
  const UnitVector end(std::cos(angle) * st.vec() + std::sin(angle) * ortho);
  return Arc(st, end, pole, angle, tol);
}

UnitVector Arc::point_at(double t) const {
  return UnitVector(std::cos(t) * start_.vec() + std::sin(t) * ortho_);
}

double Arc::param_of(const Vec3& p) const {
  return wrap_two_pi(std::atan2(p.dot(ortho_), p.dot(start_.vec())));
}

Arc Arc::reversed() const {
  Arc r;
  r.start_ = end_;
  r.end_ = start_;
  r.pole_ = -pole_;
  r.ortho_ = r.pole_.vec().cross(r.start_.vec());
  r.angle_ = angle_;
  return r;
}

GreatCircle circle_through(const UnitVector& a, const UnitVector& b, const ToleranceConfig& tol) {
  const Vec3 c = a.vec().cross(b.vec());
  if (c.norm() < tol.eps_circle) {
    throw Error(ErrorCode::DegenerateCircle, "points are parallel or antipodal");
  }
  return GreatCircle{UnitVector(c)};
}

Arc arc_between(const UnitVector& a, const UnitVector& b, bool want_long,
                const ToleranceConfig& tol) {
  const GreatCircle c = circle_through(a, b, tol);
  const double theta = angular_distance(a, b);
  if (want_long) {
    return Arc(a, b, -c.pole, kTwoPi - theta, tol);
  }
  return Arc(a, b, c.pole, theta, tol);
}

PointPosition point_position(const Arc& arc, const UnitVector& p, const ToleranceConfig& tol) {
  if (std::fabs(p.dot(arc.pole())) > tol.eps_event) return PointPosition::Outside;
  const double t = arc.param_of(p.vec());
  if (angle_gap(t, 0.0) <= tol.eps_event) return PointPosition::StartPoint;
  if (angle_gap(t, arc.angle()) <= tol.eps_event) return PointPosition::EndPoint;
  return t < arc.angle() ? PointPosition::Interior : PointPosition::Outside;
}

std::vector<IntersectionEvent> arc_pair_intersections(const Arc& e, const Arc& f,
                                                      const ToleranceConfig& tol) {
  const Vec3 axis = e.pole().vec().cross(f.pole().vec());
  if (axis.norm() < tol.eps_circle) {
    throw Error(ErrorCode::CoCircular, "arcs lie on the same great circle");
  }

  std::vector<IntersectionEvent> events;

  const UnitVector e_ends[2] = {e.start(), e.end()};
  const UnitVector f_ends[2] = {f.start(), f.end()};
  const double e_params[2] = {0.0, e.angle()};
  const double f_params[2] = {0.0, f.angle()};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (angular_distance(e_ends[i], f_ends[j]) <= tol.eps_event) {
        events.push_back({e_ends[i], EventKind::SharedEndpoint, e_params[i], f_params[j]});
      }
    }
  }

  const UnitVector c(axis);
  for (const UnitVector& cand : {c, -c}) {
    const bool at_shared = std::any_of(events.begin(), events.end(), [&](const auto& ev) {
      return angular_distance(ev.point, cand) <= tol.eps_event;
    });
    if (at_shared) continue;
    const PointPosition pe = point_position(e, cand, tol);
    const PointPosition pf = point_position(f, cand, tol);
    if (pe == PointPosition::Outside || pf == PointPosition::Outside) continue;
    EventKind kind;
    if (pe == PointPosition::Interior && pf == PointPosition::Interior) {
      kind = EventKind::ProperCrossing;
    } else if (pe == PointPosition::Interior || pf == PointPosition::Interior) {
      kind = EventKind::VertexOnInterior;
    } else {
      kind = EventKind::Tangency;  // two distinct vertices within 2 eps_event
    }
    events.push_back({cand, kind, e.param_of(cand.vec()), f.param_of(cand.vec())});
  }

  // Events that cannot be resolved from one another collapse into a tangency.
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (std::size_t j = i + 1; j < events.size();) {
      if (angular_distance(events[i].point, events[j].point) < tol.eps_event) {
        events[i].kind = EventKind::Tangency;
        events.erase(events.begin() + static_cast<std::ptrdiff_t>(j));
      } else {
        ++j;
      }
    }
  }
  return events;
}

UnitVector tangent_at(const Arc& arc, const UnitVector& p, const ToleranceConfig& tol) {
  if (point_position(arc, p, tol) == PointPosition::Outside) {
    throw Error(ErrorCode::PointNotOnArc, "tangent requested at a point off the arc");
  }
  return UnitVector(arc.pole().vec().cross(p.vec()));
}

int crossing_orientation(const Arc& e, const Arc& f, const IntersectionEvent& at,
                         const ToleranceConfig& tol) {
  const Vec3& p = at.point.vec();
  const Vec3 te = e.pole().vec().cross(p);
  const Vec3 tf = f.pole().vec().cross(p);
  const double det = te.cross(tf).dot(p);
  if (std::fabs(det) < tol.eps_circle) {
    throw Error(ErrorCode::DegenerateOrientation, "parallel tangents at meeting point");
  }
  return det > 0 ? 1 : -1;
}

int hemisphere_side(const GreatCircle& c, const UnitVector& p, const ToleranceConfig& tol) {
  const double d = p.dot(c.pole);
  if (std::fabs(d) <= tol.eps_event) return 0;
  return d > 0 ? 1 : -1;
}

std::vector<UnitVector> perturb_to_general_position(std::span<const UnitVector> points,
                                                    std::uint64_t seed, double margin,
                                                    const ToleranceConfig& tol) {
  if (!(margin >= 0.0) || !(margin < tol.eps_event / 4.0)) {
    throw Error(ErrorCode::InvalidArgument, "perturbation margin must lie in [0, eps_event/4)");
  }
  std::vector<UnitVector> out(points.begin(), points.end());
  if (margin == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> heading(0.0, kTwoPi);
  std::uniform_real_distribution<double> amount(0.0, margin);
  for (UnitVector& p : out) {
    // Orthonormal frame of the tangent plane at p.
    const Vec3 helper = std::fabs(p.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 u = p.vec().cross(helper).normalized();
    const Vec3 w = p.vec().cross(u);
    const double h = heading(rng);
    const double a = amount(rng);
    const Vec3 dir = std::cos(h) * u + std::sin(h) * w;
    p = UnitVector(std::cos(a) * p.vec() + std::sin(a) * dir);
  }
  return out;
}

UnitVector rotate(const UnitVector& p, const UnitVector& axis, double angle) {
  return UnitVector(Eigen::AngleAxisd(angle, axis.vec()) * p.vec());
}

double distance_to_arc(const Arc& arc, const UnitVector& p) {
  const double t = arc.param_of(p.vec());
  if (t <= arc.angle()) {
    // Distance to the circle; the projection falls inside the arc.
    return std::asin(std::min(1.0, std::fabs(p.dot(arc.pole()))));
  }
  return std::min(angular_distance(p, arc.start()), angular_distance(p, arc.end()));
}

}  // namespace thrackle
