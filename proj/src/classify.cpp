#include "thrackle/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace thrackle {

int chi(const Drawing& d, const DirectedEdge& a, const DirectedEdge& b, const ToleranceConfig& tol) {
  const Arc ea = d.directed_arc(a);
  const Arc eb = d.directed_arc(b);
  const auto events = arc_pair_intersections(ea, eb, tol);
  if (events.size() != 1) {
    std::ostringstream os;
    os << "edges " << a.edge << " and " << b.edge << " meet " << events.size() << " times";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  return crossing_orientation(ea, eb, events.front(), tol);
}

std::string_view to_string(PathVerdict v) { return v == PathVerdict::Good ? "Good" : "Bad"; }

namespace {

void check_walk(const AbstractGraph& g, const DirectedPath& p, bool closed) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].edge < 0 || p[i].edge >= g.edge_count()) throw Error(ErrorCode::NotAPath, "edge id out of range");
    if (i > 0 && g.head(p[i - 1]) != g.tail(p[i])) throw Error(ErrorCode::NotAPath, "edges do not run head to tail");
  }
  if (closed && (p.empty() || g.head(p.back()) != g.tail(p.front()))) {
    throw Error(ErrorCode::NotAPath, "cycle walk is not closed");
  }
}

PathClass finish(std::vector<int> signs, bool simple) {
  PathClass c;
  c.simple = simple;
  c.chi_sequence = std::move(signs);
  const bool equal = std::all_of(c.chi_sequence.begin(), c.chi_sequence.end(),
                                 [&](int s) { return s == c.chi_sequence.front(); });
  c.verdict = equal ? PathVerdict::Good : PathVerdict::Bad;
  return c;
}

bool distinct(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

}  // namespace

PathClass classify_path(const Drawing& d, const DirectedPath& p, const ToleranceConfig& tol) {
  const AbstractGraph& g = d.graph();
  check_walk(g, p, false);
  std::vector<int> signs;
  for (std::size_t i = 1; i < p.size(); ++i) signs.push_back(chi(d, p[i - 1], p[i], tol));
  return finish(std::move(signs), p.empty() || distinct(g.walk_vertices(p)));
}

PathClass classify_cycle(const Drawing& d, const DirectedPath& c, const ToleranceConfig& tol) {
  const AbstractGraph& g = d.graph();
  check_walk(g, c, true);
  std::vector<int> signs;
  for (std::size_t i = 1; i < c.size(); ++i) signs.push_back(chi(d, c[i - 1], c[i], tol));
  signs.push_back(chi(d, c.back(), c.front(), tol));
  std::vector<VertexId> vs = g.walk_vertices(c);
  vs.pop_back();
  return finish(std::move(signs), distinct(vs));
}

DirectedPath cycle_walk(const AbstractGraph& g) {
  const int n = g.vertex_count();
  if (n < 3 || g.edge_count() != n || !g.is_connected()) {
    throw Error(ErrorCode::InvalidArgument, "graph is not a single cycle");
  }
  std::vector<VertexId> order = {0};
  VertexId prev = -1;
  VertexId cur = 0;
  for (int i = 1; i < n; ++i) {
    if (g.degree(cur) != 2) throw Error(ErrorCode::InvalidArgument, "graph is not a single cycle");
    VertexId next = -1;
    for (EdgeId e : g.incident_edges(cur)) {
      const VertexId w = g.edge(e).other(cur);
      if (w != prev) {
        next = w;
        break;
      }
    }
    prev = cur;
    cur = next;
    order.push_back(cur);
  }
  order.push_back(0);
  return g.walk_from_vertices(order);
}

int starting_side(const Drawing& d, EdgeId e, EdgeId f, VertexId v, const ToleranceConfig& tol) {
  const Arc out = d.arc_from(f, v);
  const UnitVector t = tangent_at(out, d.position(v), tol);
  const double s = t.dot(d.arc(e).pole());
  if (std::fabs(s) <= tol.eps_event) return 0;
  return s > 0 ? 1 : -1;
}

std::optional<SeparationWitness> separates_at(const Drawing& d, EdgeId e, VertexId v, const ToleranceConfig& tol) {
  const AbstractGraph& g = d.graph();
  if (!g.edge(e).incident_to(v)) throw Error(ErrorCode::InvalidArgument, "edge not incident to vertex");
  if (g.degree(v) < 3) return std::nullopt;
  EdgeId plus = -1;
  EdgeId minus = -1;
  for (EdgeId f : g.incident_edges(v)) {
    if (f == e) continue;
    const int s = starting_side(d, e, f, v, tol);
    if (s > 0 && plus < 0) plus = f;
    if (s < 0 && minus < 0) minus = f;
  }
  if (plus < 0 || minus < 0) return std::nullopt;
  return SeparationWitness{e, v, plus, minus};
}

TriangleScan find_bad_triangles(const Drawing& d, const ToleranceConfig& tol) {
  if (!verify_thrackle(d, tol).is_thrackle) throw Error(ErrorCode::NotCertified, "drawing is not a certified thrackle");
  const AbstractGraph& g = d.graph();
  TriangleScan scan;
  const int n = g.vertex_count();
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      if (!g.edge_between(a, b)) continue;
      for (VertexId c = b + 1; c < n; ++c) {
        if (!g.edge_between(b, c) || !g.edge_between(c, a)) continue;
        ++scan.triangle_count;
        const DirectedPath walk = g.walk_from_vertices({a, b, c, a});
        const PathClass pc = classify_cycle(d, walk, tol);
        if (pc.verdict == PathVerdict::Good) continue;
        BadTriangle t;
        t.vertices = {a, b, c};
        for (const DirectedEdge& de : walk) t.edges.push_back(de.edge);
        t.chi_at_vertices = pc.chi_sequence;
        for (int i = 0; i < 3; ++i) {
          if (d.arc(t.edges[static_cast<std::size_t>(i)]).length_class() == LengthClass::Long) {
            ++t.long_edge_count;
            t.long_edge = t.edges[static_cast<std::size_t>(i)];
            // Edge i runs from vertex i to vertex i+1; chi at its start is
            // chi_at_vertices[i-1] and at its end chi_at_vertices[i].
            const int at_start = t.chi_at_vertices[static_cast<std::size_t>((i + 2) % 3)];
            const int at_end = t.chi_at_vertices[static_cast<std::size_t>(i)];
            t.long_edge_vertices_agree = at_start == at_end;
          }
        }
        if (t.long_edge_count != 1) {
          t.long_edge = -1;
          t.long_edge_vertices_agree = false;
        }
        scan.bad.push_back(std::move(t));
      }
    }
  }
  scan.multiple_triangles = scan.triangle_count > 1;
  return scan;
}

}  // namespace thrackle
