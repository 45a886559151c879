#include "thrackle/drawing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace thrackle {

namespace {

bool close(const UnitVector& a, const UnitVector& b, double eps) { return (a.vec() - b.vec()).norm() <= eps; }

double angle_gap(double a, double b) {
  double d = std::fmod(std::fabs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace

Drawing::Drawing(AbstractGraph graph, std::vector<UnitVector> positions, std::vector<Arc> arcs,
                 const ToleranceConfig& tol)
    : graph_(std::move(graph)), positions_(std::move(positions)), arcs_(std::move(arcs)) {
  if (static_cast<int>(positions_.size()) != graph_.vertex_count()) {
    throw Error(ErrorCode::MalformedDrawing, "one position per vertex required");
  }
  if (static_cast<int>(arcs_.size()) != graph_.edge_count()) {
    throw Error(ErrorCode::MalformedDrawing, "one arc per edge required");
  }
  arc_forward_.resize(arcs_.size());
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Edge& e = graph_.edges()[i];
    const UnitVector& pu = positions_[static_cast<std::size_t>(e.u)];
    const UnitVector& pv = positions_[static_cast<std::size_t>(e.v)];
    const Arc& a = arcs_[i];
    if (close(a.start(), pu, tol.eps_unit) && close(a.end(), pv, tol.eps_unit)) {
      arc_forward_[i] = true;
    } else if (close(a.start(), pv, tol.eps_unit) && close(a.end(), pu, tol.eps_unit)) {
      arc_forward_[i] = false;
    } else {
      std::ostringstream os;
      os << "arc of edge " << i << " does not join the positions of " << e.u << " and " << e.v;
      throw Error(ErrorCode::MalformedDrawing, os.str());
    }
  }
}

Drawing Drawing::from_classes(AbstractGraph graph, std::vector<UnitVector> positions,
                              const std::vector<LengthClass>& classes, const ToleranceConfig& tol) {
  if (static_cast<int>(classes.size()) != graph.edge_count()) {
    throw Error(ErrorCode::MalformedDrawing, "one length class per edge required");
  }
  if (static_cast<int>(positions.size()) != graph.vertex_count()) {
    throw Error(ErrorCode::MalformedDrawing, "one position per vertex required");
  }
  std::vector<Arc> arcs;
  arcs.reserve(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const Edge& e = graph.edges()[i];
    arcs.push_back(arc_between(positions[static_cast<std::size_t>(e.u)],
                               positions[static_cast<std::size_t>(e.v)],
                               classes[i] == LengthClass::Long, tol));
  }
  return Drawing(std::move(graph), std::move(positions), std::move(arcs), tol);
}

Arc Drawing::directed_arc(const DirectedEdge& d) const {
  const bool as_stored = d.forward == arc_runs_forward(d.edge);
  return as_stored ? arc(d.edge) : arc(d.edge).reversed();
}

Arc Drawing::arc_from(EdgeId e, VertexId v) const {
  const Edge& ed = graph_.edge(e);
  if (!ed.incident_to(v)) throw Error(ErrorCode::InvalidArgument, "vertex not incident to edge");
  return directed_arc({e, ed.u == v});
}

std::vector<LengthClass> Drawing::length_classes() const {
  std::vector<LengthClass> out;
  out.reserve(arcs_.size());
  for (const Arc& a : arcs_) out.push_back(a.length_class());
  return out;
}

Drawing Drawing::rotated(const Eigen::Matrix3d& rotation) const {
  std::vector<UnitVector> pos;
  pos.reserve(positions_.size());
  for (const UnitVector& p : positions_) pos.emplace_back(rotation * p.vec());
  std::vector<Arc> arcs;
  arcs.reserve(arcs_.size());
  ToleranceConfig loose;
  loose.eps_unit = 1e-9;
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Edge& e = graph_.edges()[i];
    const VertexId s = arc_forward_[i] ? e.u : e.v;
    const VertexId t = arc_forward_[i] ? e.v : e.u;
    arcs.emplace_back(pos[static_cast<std::size_t>(s)], pos[static_cast<std::size_t>(t)],
                      UnitVector(rotation * arcs_[i].pole().vec()), arcs_[i].angle(), loose);
  }
  return Drawing(graph_, std::move(pos), std::move(arcs), loose);
}

std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::ZeroCrossings: return "ZeroCrossings";
    case Violation::ExtraEvents: return "ExtraEvents";
    case Violation::AdjacentCrossing: return "AdjacentCrossing";
    case Violation::MissingSharedEndpoint: return "MissingSharedEndpoint";
    case Violation::AdjacentLongEdges: return "AdjacentLongEdges";
    case Violation::CoCircular: return "CoCircular";
    case Violation::MediumEdge: return "MediumEdge";
    case Violation::VertexOnInterior: return "VertexOnInterior";
    case Violation::Tangency: return "Tangency";
    case Violation::VertexTooClose: return "VertexTooClose";
    case Violation::EventsTooClose: return "EventsTooClose";
    case Violation::DegenerateOrientation: return "DegenerateOrientation";
  }
  return "?";
}

const PairRecord& VerificationReport::pair(EdgeId e, EdgeId f) const {
  if (e > f) std::swap(e, f);
  for (const PairRecord& p : pair_table) {
    if (p.e == e && p.f == f) return p;
  }
  throw Error(ErrorCode::InvalidArgument, "pair not present in report");
}

namespace {

std::vector<PairRecord> build_pair_table(const Drawing& d, const ToleranceConfig& tol) {
  const AbstractGraph& g = d.graph();
  std::vector<PairRecord> table;
  const int m = g.edge_count();
  table.reserve(static_cast<std::size_t>(m * (m - 1) / 2));
  for (EdgeId e = 0; e < m; ++e) {
    for (EdgeId f = e + 1; f < m; ++f) {
      PairRecord rec;
      rec.e = e;
      rec.f = f;
      rec.adjacent = g.adjacent_edges(e, f);
      try {
        rec.events = arc_pair_intersections(d.arc(e), d.arc(f), tol);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::CoCircular) throw;
        rec.co_circular = true;
      }
      table.push_back(std::move(rec));
    }
  }
  return table;
}

std::vector<ViolationRecord> general_position_flags(const Drawing& d, const std::vector<PairRecord>& table,
                                                    const ToleranceConfig& tol) {
  const AbstractGraph& g = d.graph();
  std::vector<ViolationRecord> flags;

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (std::fabs(d.arc(e).angle() - kPi) <= tol.eps_medium) {
      flags.push_back({e, -1, -1, Violation::MediumEdge});
    }
  }

  for (VertexId a = 0; a < g.vertex_count(); ++a) {
    for (VertexId b = a + 1; b < g.vertex_count(); ++b) {
      if (angular_distance(d.position(a), d.position(b)) <= tol.eps_event) {
        flags.push_back({-1, -1, a, Violation::VertexTooClose});
      }
    }
  }

  for (VertexId w = 0; w < g.vertex_count(); ++w) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (g.edge(e).incident_to(w)) continue;
      if (distance_to_arc(d.arc(e), d.position(w)) <= tol.eps_event) {
        flags.push_back({e, -1, w, Violation::VertexOnInterior});
      }
    }
  }

  struct OnEdge {
    double param;
    VertexId shared_vertex;  // -1 unless the event is a shared endpoint
  };
  std::vector<std::vector<OnEdge>> along(static_cast<std::size_t>(g.edge_count()));

  for (const PairRecord& p : table) {
    if (p.co_circular) {
      flags.push_back({p.e, p.f, -1, Violation::CoCircular});
      continue;
    }
    for (const IntersectionEvent& ev : p.events) {
      if (ev.kind == EventKind::Tangency) flags.push_back({p.e, p.f, -1, Violation::Tangency});
      if (ev.kind == EventKind::VertexOnInterior) flags.push_back({p.e, p.f, -1, Violation::VertexOnInterior});
      if (ev.kind == EventKind::ProperCrossing || ev.kind == EventKind::SharedEndpoint) {
        try {
          (void)crossing_orientation(d.arc(p.e), d.arc(p.f), ev, tol);
        } catch (const Error&) {
          flags.push_back({p.e, p.f, -1, Violation::DegenerateOrientation});
        }
      }
      VertexId shared = -1;
      if (ev.kind == EventKind::SharedEndpoint) {
        if (auto c = g.common_vertex(p.e, p.f)) shared = *c;
      }
      along[static_cast<std::size_t>(p.e)].push_back({ev.on_e, shared});
      along[static_cast<std::size_t>(p.f)].push_back({ev.on_f, shared});
    }
  }

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto& evs = along[static_cast<std::size_t>(e)];
    std::sort(evs.begin(), evs.end(), [](const OnEdge& a, const OnEdge& b) { return a.param < b.param; });
    for (std::size_t i = 1; i < evs.size(); ++i) {
      const bool same_vertex = evs[i].shared_vertex >= 0 && evs[i].shared_vertex == evs[i - 1].shared_vertex;
      if (!same_vertex && evs[i].param - evs[i - 1].param < tol.eps_event) {
        flags.push_back({e, -1, -1, Violation::EventsTooClose});
      }
    }
  }
  return flags;
}

}  // namespace

GeneralPositionReport check_general_position(const Drawing& d, const ToleranceConfig& tol) {
  const auto table = build_pair_table(d, tol);
  return GeneralPositionReport{general_position_flags(d, table, tol)};
}

VerificationReport verify_thrackle(const Drawing& d, const ToleranceConfig& tol) {
  VerificationReport r;
  r.pair_table = build_pair_table(d, tol);
  r.violations = general_position_flags(d, r.pair_table, tol);
  r.is_general_position = r.violations.empty();

  for (const PairRecord& p : r.pair_table) {
    if (p.co_circular) continue;  // already flagged
    int crossings = 0;
    int shared = 0;
    for (const IntersectionEvent& ev : p.events) {
      if (ev.kind == EventKind::ProperCrossing) ++crossings;
      if (ev.kind == EventKind::SharedEndpoint) ++shared;
    }
    if (p.adjacent) {
      if (shared != 1) r.violations.push_back({p.e, p.f, -1, Violation::MissingSharedEndpoint});
      if (crossings > 0) r.violations.push_back({p.e, p.f, -1, Violation::AdjacentCrossing});
      if (d.arc(p.e).length_class() == LengthClass::Long && d.arc(p.f).length_class() == LengthClass::Long) {
        r.violations.push_back({p.e, p.f, -1, Violation::AdjacentLongEdges});
      }
    } else {
      if (p.events.empty()) r.violations.push_back({p.e, p.f, -1, Violation::ZeroCrossings});
      if (shared > 0) r.violations.push_back({p.e, p.f, -1, Violation::VertexTooClose});
    }
    if (p.events.size() > 1) r.violations.push_back({p.e, p.f, -1, Violation::ExtraEvents});
  }
  r.is_thrackle = r.violations.empty();
  return r;
}

LengthClass edge_length_class(const Drawing& d, EdgeId e, const ToleranceConfig& tol) {
  const double a = d.arc(e).angle();
  if (std::fabs(a - kPi) <= tol.eps_medium) {
    throw Error(ErrorCode::MediumEdge, "edge length within eps_medium of pi");
  }
  return a > kPi ? LengthClass::Long : LengthClass::Short;
}

bool n_ge_m_check(const Drawing& d, const VerificationReport& report) {
  if (!report.is_thrackle) throw Error(ErrorCode::NotCertified, "drawing is not a certified thrackle");
  return d.graph().vertex_count() >= d.graph().edge_count();
}

bool n_ge_m_check(const Drawing& d, const ToleranceConfig& tol) {
  return n_ge_m_check(d, verify_thrackle(d, tol));
}

double clearance(const Drawing& d, const ToleranceConfig& tol) {
  const AbstractGraph& g = d.graph();
  double best = kPi;
  for (EdgeId e = 0; e < g.edge_count(); ++e) best = std::min(best, std::fabs(d.arc(e).angle() - kPi));
  for (VertexId a = 0; a < g.vertex_count(); ++a) {
    for (VertexId b = a + 1; b < g.vertex_count(); ++b) {
      best = std::min(best, angular_distance(d.position(a), d.position(b)));
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (!g.edge(e).incident_to(a)) best = std::min(best, distance_to_arc(d.arc(e), d.position(a)));
    }
  }

  // Crossing candidates: distance of each candidate from the ends of both
  // arcs, plus separation of real events along each edge.
  std::vector<std::vector<std::pair<double, VertexId>>> along(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    for (EdgeId f = e + 1; f < g.edge_count(); ++f) {
      const Arc& a = d.arc(e);
      const Arc& b = d.arc(f);
      const Vec3 axis = a.pole().vec().cross(b.pole().vec());
      if (axis.norm() < tol.eps_circle) return 0.0;
      const UnitVector c(axis);
      const auto shared = g.common_vertex(e, f);
      for (const UnitVector& cand : {c, -c}) {
        if (shared && angular_distance(cand, d.position(*shared)) < kPi / 2) continue;
        const double te = a.param_of(cand.vec());
        const double tf = b.param_of(cand.vec());
        const double ge = std::min(angle_gap(te, 0.0), angle_gap(te, a.angle()));
        const double gf = std::min(angle_gap(tf, 0.0), angle_gap(tf, b.angle()));
        best = std::min(best, std::min(ge, gf));
        if (te < a.angle() && tf < b.angle()) {
          along[static_cast<std::size_t>(e)].push_back({te, -1});
          along[static_cast<std::size_t>(f)].push_back({tf, -1});
        }
      }
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto& evs = along[static_cast<std::size_t>(e)];
    evs.push_back({0.0, -2});
    evs.push_back({d.arc(e).angle(), -3});
    std::sort(evs.begin(), evs.end());
    for (std::size_t i = 1; i < evs.size(); ++i) best = std::min(best, evs[i].first - evs[i - 1].first);
  }
  return best;
}

std::string summarize(const VerificationReport& r) {
  std::ostringstream os;
  os << "thrackle=" << (r.is_thrackle ? "yes" : "no")
     << " general_position=" << (r.is_general_position ? "yes" : "no")
     << " pairs=" << r.pair_table.size() << " violations=" << r.violations.size();
  for (const ViolationRecord& v : r.violations) {
    os << "\n  " << to_string(v.reason);
    if (v.e >= 0) os << " e=" << v.e;
    if (v.f >= 0) os << " f=" << v.f;
    if (v.vertex >= 0) os << " v=" << v.vertex;
  }
  return os.str();
}

}  // namespace thrackle
