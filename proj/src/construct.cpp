#include "thrackle/construct.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <random>

#include "thrackle/search.hpp"

namespace thrackle {

namespace {

double orient(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  const Eigen::Vector2d u = b - a;
  const Eigen::Vector2d w = c - a;
  return u.x() * w.y() - u.y() * w.x();
}

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

bool is_cycle_graph(const AbstractGraph& g) {
  if (g.vertex_count() < 3 || g.edge_count() != g.vertex_count() || !g.is_connected()) return false;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != 2) return false;
  }
  return true;
}

std::vector<LengthFlag> fixed_flags(const std::vector<LengthClass>& cls) {
  std::vector<LengthFlag> out;
  for (LengthClass c : cls) out.push_back(c == LengthClass::Long ? LengthFlag::Long : LengthFlag::Short);
  return out;
}

bool certified(const Drawing& d, const ToleranceConfig& tol) {
  try {
    return verify_thrackle(d, tol).is_thrackle;
  } catch (const Error&) {
    return false;
  }
}

// Random local moves of the listed vertices that keep the drawing certified
// at `tol` and strictly increase its clearance.
Drawing polish(Drawing d, const std::vector<VertexId>& movable, int iterations, std::uint64_t seed,
               const ToleranceConfig& tol) {
  if (movable.empty() || iterations <= 0) return d;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::vector<LengthClass> cls = d.length_classes();
  double best = clearance(d, tol);
  for (int it = 0; it < iterations; ++it) {
    const VertexId v = movable[static_cast<std::size_t>(rng() % movable.size())];
    const Vec3 p = d.position(v).vec();
    Vec3 t(gauss(rng), gauss(rng), gauss(rng));
    t -= t.dot(p) * p;
    if (t.norm() < 1e-12) continue;
    t.normalize();
    const double step = best * std::fabs(gauss(rng));
    std::vector<UnitVector> pos = d.positions();
    pos[static_cast<std::size_t>(v)] = UnitVector(std::cos(step) * p + std::sin(step) * t);
    try {
      Drawing cand = Drawing::from_classes(d.graph(), std::move(pos), cls, tol);
      if (!certified(cand, tol)) continue;
      const double c = clearance(cand, tol);
      if (c > best) {
        best = c;
        d = std::move(cand);
      }
    } catch (const Error&) {
    }
  }
  return d;
}

// Frozen 6-cycle: vertex 2k = R^k a, vertex 2k+1 = R^k b with R the rotation
// by -120 degrees about z. Edges (2k, 2k+1) are long, the others short.
constexpr double kSixA[3] = {0.28889760275639365, -0.95733322426203094, -0.0071605059648794673};
constexpr double kSixB[3] = {0.79943285820579824, -0.083452187298082195, -0.59493095200709989};

}  // namespace

PlanarPairKind planar_pair_kind(const PlanarDrawing& p, EdgeId e, EdgeId f) {
  const Edge& a = p.graph.edge(e);
  const Edge& b = p.graph.edge(f);
  auto pt = [&](VertexId v) -> const Eigen::Vector2d& { return p.points.at(static_cast<std::size_t>(v)); };
  if (const auto c = p.graph.common_vertex(e, f)) {
    const Eigen::Vector2d& s = pt(*c);
    const Eigen::Vector2d& x = pt(a.other(*c));
    const Eigen::Vector2d& y = pt(b.other(*c));
    if (orient(s, x, y) == 0.0 && (x - s).dot(y - s) > 0.0) return PlanarPairKind::Degenerate;
    return PlanarPairKind::SharedEndpoint;
  }
  const int o1 = sgn(orient(pt(a.u), pt(a.v), pt(b.u)));
  const int o2 = sgn(orient(pt(a.u), pt(a.v), pt(b.v)));
  const int o3 = sgn(orient(pt(b.u), pt(b.v), pt(a.u)));
  const int o4 = sgn(orient(pt(b.u), pt(b.v), pt(a.v)));
  if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) return PlanarPairKind::Degenerate;
  if (o1 != o2 && o3 != o4) return PlanarPairKind::ProperCrossing;
  return PlanarPairKind::Disjoint;
}

bool is_straight_line_thrackle(const PlanarDrawing& p) {
  const int m = p.graph.edge_count();
  for (EdgeId e = 0; e < m; ++e) {
    for (EdgeId f = e + 1; f < m; ++f) {
      const PlanarPairKind k = planar_pair_kind(p, e, f);
      const PlanarPairKind want =
          p.graph.adjacent_edges(e, f) ? PlanarPairKind::SharedEndpoint : PlanarPairKind::ProperCrossing;
      if (k != want) return false;
    }
  }
  return true;
}

PlanarDrawing star_polygon_thrackle(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "a cycle needs at least 3 vertices");
  if (n % 2 == 0) throw Error(ErrorCode::EvenCycleRequested, "star polygon thrackles exist only for odd cycles");
  PlanarDrawing p;
  p.graph = AbstractGraph::cycle(n);
  const int step = (n - 1) / 2;
  for (int k = 0; k < n; ++k) {
    const double a = kTwoPi * static_cast<double>((k * step) % n) / n;
    p.points.emplace_back(std::cos(a), std::sin(a));
  }
  return p;
}

Drawing gnomonic_lift(const PlanarDrawing& p, double cap_half_angle, const ToleranceConfig& tol) {
  if (!(cap_half_angle > 0.0 && cap_half_angle < kPi / 2)) {
    throw Error(ErrorCode::InvalidArgument, "cap half angle must lie in (0, pi/2)");
  }
  if (static_cast<int>(p.points.size()) != p.graph.vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "one planar point per vertex required");
  }
  double r = 0.0;
  for (const auto& q : p.points) r = std::max(r, q.norm());
  const double scale = r > 0.0 ? std::tan(cap_half_angle) / r : 1.0;
  std::vector<UnitVector> pos;
  for (const auto& q : p.points) pos.emplace_back(scale * q.x(), scale * q.y(), 1.0);
  std::vector<LengthClass> cls(static_cast<std::size_t>(p.graph.edge_count()), LengthClass::Short);
  try {
    Drawing d = Drawing::from_classes(p.graph, std::move(pos), cls, tol);
    if (verify_thrackle(d, tol).is_thrackle) return d;
  } catch (const Error& e) {
    throw Error(ErrorCode::CapTooLarge, std::string("lift failed: ") + e.what());
  }
  throw Error(ErrorCode::CapTooLarge, "lifted drawing does not verify at the requested cap");
}

Drawing six_cycle_drawing() {
  const Eigen::Matrix3d rot = Eigen::AngleAxisd(-kTwoPi / 3.0, Vec3::UnitZ()).toRotationMatrix();
  Vec3 a(kSixA[0], kSixA[1], kSixA[2]);
  Vec3 b(kSixB[0], kSixB[1], kSixB[2]);
  std::vector<UnitVector> pos;
  std::vector<LengthClass> cls;
  for (int k = 0; k < 3; ++k) {
    pos.emplace_back(a);
    pos.emplace_back(b);
    cls.push_back(LengthClass::Long);
    cls.push_back(LengthClass::Short);
    a = rot * a;
    b = rot * b;
  }
  return Drawing::from_classes(AbstractGraph::cycle(6), std::move(pos), cls);
}

Drawing insert_edge_pair(const Drawing& d, EdgeId target, const InsertionConfig& cfg) {
  const AbstractGraph& g = d.graph();
  if (!is_cycle_graph(g) || g.vertex_count() % 2 != 0 || g.vertex_count() < 6) {
    throw Error(ErrorCode::PreconditionViolation, "insertion needs an even cycle of length at least 6");
  }
  if (target < 0 || target >= g.edge_count()) throw Error(ErrorCode::InvalidArgument, "target edge out of range");
  if (!certified(d, cfg.tol)) throw Error(ErrorCode::NotCertified, "input drawing is not a certified thrackle");

  const int n = g.vertex_count();
  const Edge t = g.edge(target);
  std::vector<Edge> edges = g.edges();
  edges[static_cast<std::size_t>(target)] = {t.u, n};
  edges.push_back({n, n + 1});
  edges.push_back({n + 1, t.v});
  AbstractGraph g2(n + 2, edges);

  const Arc along = d.arc_from(target, t.u);
  std::vector<UnitVector> pos = d.positions();
  pos.push_back(along.point_at(along.angle() / 3.0));
  pos.push_back(along.point_at(2.0 * along.angle() / 3.0));

  std::vector<LengthClass> cls = d.length_classes();
  std::vector<LengthFlag> flags = fixed_flags(cls);
  flags[static_cast<std::size_t>(target)] = LengthFlag::Free;
  flags.push_back(LengthFlag::Free);
  flags.push_back(LengthFlag::Free);
  cls[static_cast<std::size_t>(target)] = LengthClass::Short;
  cls.push_back(LengthClass::Short);
  cls.push_back(LengthClass::Short);

  std::optional<Drawing> warm;
  try {
    warm = Drawing::from_classes(g2, pos, cls, cfg.tol);
  } catch (const Error&) {
  }
  std::vector<bool> movable(static_cast<std::size_t>(n + 2), false);
  movable[static_cast<std::size_t>(n)] = true;
  movable[static_cast<std::size_t>(n + 1)] = true;

  for (double margin : {cfg.margin, cfg.margin * 1e-2}) {
    SearchConfig sc;
    sc.restarts = cfg.restarts;
    sc.steps_per_restart = cfg.steps_per_restart;
    sc.initial_step = 0.3;
    sc.flag_flip_probability = 0.1;
    sc.margin = std::max(margin, cfg.tol.eps_event);
    sc.rng_seed = cfg.seed * 1000003ULL + static_cast<std::uint64_t>(target);
    sc.threads = 1;
    sc.tol = cfg.tol;
    const SearchOutcome o = search_embedding(EmbeddingProblem{g2, flags, warm, movable}, sc);
    if (o.status != SearchStatus::Certified) continue;
    Drawing out = polish(*o.drawing, {n, n + 1}, cfg.polish_iterations, sc.rng_seed, cfg.tol.with_event(sc.margin));
    if (certified(out, cfg.tol)) return out;
  }
  throw Error(ErrorCode::InsertionFailed, "no certified placement found for the target edge");
}

Drawing even_cycle_drawing(int n, const InsertionConfig& cfg) {
  if (n < 6 || n % 2 != 0) throw Error(ErrorCode::PreconditionViolation, "even cycle length must be at least 6");
  Drawing d = six_cycle_drawing();
  while (d.graph().vertex_count() < n) {
    bool done = false;
    for (EdgeId t = 0; t < d.graph().edge_count() && !done; ++t) {
      try {
        d = insert_edge_pair(d, t, cfg);
        done = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InsertionFailed) throw;
      }
    }
    if (!done) throw Error(ErrorCode::InsertionFailed, "no edge of the cycle admits an insertion");
  }
  return d;
}

Drawing cycle_drawing(int n, const ToleranceConfig& tol) {
  if (n < 3) throw Error(ErrorCode::PreconditionViolation, "a cycle needs at least 3 vertices");
  if (n == 4) throw Error(ErrorCode::PreconditionViolation, "the 4-cycle has no spherical thrackle drawing");
  if (n % 2 == 1) return gnomonic_lift(star_polygon_thrackle(n), 0.3, tol);
  InsertionConfig cfg;
  cfg.tol = tol;
  return even_cycle_drawing(n, cfg);
}

Drawing split_edge(const Drawing& d, EdgeId e, const ToleranceConfig& tol) {
  const AbstractGraph& g = d.graph();
  if (e < 0 || e >= g.edge_count()) throw Error(ErrorCode::InvalidArgument, "edge out of range");
  if (d.arc(e).length_class() != LengthClass::Short) {
    throw Error(ErrorCode::PreconditionViolation, "only short edges can be split");
  }
  if (!certified(d, tol)) throw Error(ErrorCode::NotCertified, "input drawing is not a certified thrackle");

  const int n = g.vertex_count();
  const Edge ed = g.edge(e);
  const Arc a = d.arc_from(e, ed.u);
  const Vec3 s = a.start().vec();
  const Vec3 pole = a.pole().vec();
  const Vec3 ortho = pole.cross(s);
  auto at = [&](double t) { return Vec3(std::cos(t) * s + std::sin(t) * ortho); };

  std::vector<Edge> edges = g.edges();
  edges[static_cast<std::size_t>(e)] = {ed.u, n + 1};
  edges.push_back({ed.v, n});
  const AbstractGraph g2(n + 2, edges);
  std::vector<LengthClass> cls = d.length_classes();
  cls.push_back(LengthClass::Short);

  const double c = std::max(clearance(d, tol), 10.0 * tol.eps_event);
  const double scales[] = {0.5, 0.3, 0.2, 0.1, 0.05, 0.02, 0.01};
  for (double hs : scales) {
    for (double ds : scales) {
      for (int side : {1, -1}) {
        const double h = hs * c;
        const double delta = ds * c;
        std::vector<UnitVector> pos = d.positions();
        pos.emplace_back(at(-delta) + side * h * pole);
        pos.emplace_back(at(a.angle() + delta) + side * h * pole);
        try {
          Drawing out = Drawing::from_classes(g2, std::move(pos), cls, tol);
          if (certified(out, tol)) return out;
        } catch (const Error&) {
        }
      }
    }
  }
  throw Error(ErrorCode::SplitFailed, "no certified split found");
}

VertexSplit split_vertex(const Drawing& d, VertexId v, const ToleranceConfig& tol) {
  const AbstractGraph& g = d.graph();
  if (v < 0 || v >= g.vertex_count()) throw Error(ErrorCode::InvalidArgument, "vertex out of range");
  if (g.degree(v) != 4) throw Error(ErrorCode::PreconditionViolation, "vertex split needs degree 4");

  // Components of G - v, labelled by BFS.
  const int n = g.vertex_count();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int ncomp = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (s == v || comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<VertexId> stack = {s};
    comp[static_cast<std::size_t>(s)] = ncomp;
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident_edges(x)) {
        const VertexId y = g.edge(e).other(x);
        if (y == v || comp[static_cast<std::size_t>(y)] >= 0) continue;
        comp[static_cast<std::size_t>(y)] = ncomp;
        stack.push_back(y);
      }
    }
    ++ncomp;
  }
  std::vector<EdgeId> side[2];
  for (EdgeId e : g.incident_edges(v)) {
    const int c = comp[static_cast<std::size_t>(g.edge(e).other(v))];
    if (c < 0 || c > 1) throw Error(ErrorCode::PreconditionViolation, "vertex is not the centre of a figure-8");
    side[c].push_back(e);
  }
  if (ncomp != 2 || side[0].size() != 2 || side[1].size() != 2) {
    throw Error(ErrorCode::PreconditionViolation, "vertex is not the centre of a figure-8");
  }

  auto event_count = [&](const Drawing& dd, EdgeId a, EdgeId b) -> int {
    try {
      return static_cast<int>(arc_pair_intersections(dd.arc(a), dd.arc(b), tol).size());
    } catch (const Error&) {
      return -1;
    }
  };
  std::vector<EdgeId> others;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!g.edge(e).incident_to(v)) others.push_back(e);
  }

  const Vec3 p = d.position(v).vec();
  const Vec3 t1 = p.unitOrthogonal();
  const Vec3 t2 = p.cross(t1);
  const std::vector<LengthClass> cls = d.length_classes();

  std::optional<VertexSplit> best;
  double best_clear = -1.0;
  const double radii[] = {0.05, 0.02, 0.01, 5e-3, 2e-3, 1e-3, 3e-4};
  constexpr int kDirections = 48;
  for (EdgeId x : side[0]) {
    for (EdgeId y : side[1]) {
      std::vector<Edge> edges = g.edges();
      edges[static_cast<std::size_t>(x)] = {n, g.edge(x).other(v)};
      edges[static_cast<std::size_t>(y)] = {n, g.edge(y).other(v)};
      const AbstractGraph g2(n + 1, edges);
      for (double r : radii) {
        for (int k = 0; k < kDirections; ++k) {
          const double phi = kTwoPi * k / kDirections;
          std::vector<UnitVector> pos = d.positions();
          pos.emplace_back(std::cos(r) * p + std::sin(r) * (std::cos(phi) * t1 + std::sin(phi) * t2));
          std::optional<Drawing> cand;
          try {
            cand = Drawing::from_classes(g2, std::move(pos), cls, tol);
          } catch (const Error&) {
            continue;
          }
          if (!check_general_position(*cand, tol).ok()) continue;
          int preserved = 0;
          bool all = true;
          for (EdgeId mv : {x, y}) {
            for (EdgeId o : others) {
              if (event_count(*cand, mv, o) == event_count(d, mv, o)) {
                ++preserved;
              } else {
                all = false;
              }
            }
          }
          if (!all) continue;
          int crossings = 0;
          for (EdgeId mv : {x, y}) {
            for (EdgeId st : g.incident_edges(v)) {
              if (st == x || st == y) continue;
              try {
                const auto evs = arc_pair_intersections(cand->arc(mv), cand->arc(st), tol);
                if (evs.size() == 1 && evs[0].kind == EventKind::ProperCrossing) ++crossings;
              } catch (const Error&) {
              }
            }
          }
          const double cl = clearance(*cand, tol);
          if (!best || crossings > best->new_crossings || (crossings == best->new_crossings && cl > best_clear)) {
            best = VertexSplit{*cand, n, {x, y}, preserved, crossings};
            best_clear = cl;
          }
        }
      }
    }
  }
  if (!best) throw Error(ErrorCode::SplitFailed, "no placement preserves the crossings with other edges");
  return *best;
}

}  // namespace thrackle
