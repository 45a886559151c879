#include "thrackle/lemmas.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>

namespace thrackle {

namespace {

constexpr std::array<std::pair<LemmaId, std::string_view>, 13> kNames = {{
    {LemmaId::CycleGood, "L-CYCLE-GOOD"},
    {LemmaId::EvenLong, "L-EVEN-LONG"},
    {LemmaId::SepShort, "L-SEP-SHORT"},
    {LemmaId::Hemi, "L-HEMI"},
    {LemmaId::Deg4, "L-DEG4"},
    {LemmaId::LongA, "L-LONG-A"},
    {LemmaId::LongB, "L-LONG-B"},
    {LemmaId::LongC, "L-LONG-C"},
    {LemmaId::LongD, "L-LONG-D"},
    {LemmaId::LongE, "L-LONG-E"},
    {LemmaId::Gpl, "L-GPL"},
    {LemmaId::Gcy, "L-GCY"},
    {LemmaId::TouchEven, "L-TOUCH-EVEN"},
}};

std::vector<EdgeId> edges_of(const DirectedPath& p) {
  std::vector<EdgeId> out;
  for (const DirectedEdge& d : p) out.push_back(d.edge);
  return out;
}

// Shared state for the checks on one drawing: length classes, chi of every
// ordered pair of forward-directed edges, cycles and paths.
class Context {
 public:
  Context(const Drawing& d, const ToleranceConfig& tol) : d_(d), g_(d.graph()), tol_(tol) {
    if (!verify_thrackle(d, tol).is_thrackle) {
      throw Error(ErrorCode::NotCertified, "drawing is not a certified thrackle");
    }
    const int m = g_.edge_count();
    is_long_.resize(static_cast<std::size_t>(m));
    for (EdgeId e = 0; e < m; ++e) is_long_[static_cast<std::size_t>(e)] = d.arc(e).length_class() == LengthClass::Long;
    chi0_.assign(static_cast<std::size_t>(m * m), 0);
    for (EdgeId e = 0; e < m; ++e) {
      for (EdgeId f = 0; f < m; ++f) {
        if (e != f) chi0_[static_cast<std::size_t>(e * m + f)] = thrackle::chi(d, {e, true}, {f, true}, tol);
      }
    }
  }

  const Drawing& drawing() const { return d_; }
  const AbstractGraph& graph() const { return g_; }
  const ToleranceConfig& tol() const { return tol_; }
  bool is_long(EdgeId e) const { return is_long_[static_cast<std::size_t>(e)]; }

  int chi(const DirectedEdge& a, const DirectedEdge& b) const {
    const int base = chi0_[static_cast<std::size_t>(a.edge * g_.edge_count() + b.edge)];
    return (a.forward ? 1 : -1) * (b.forward ? 1 : -1) * base;
  }

  std::vector<int> cycle_signs(const DirectedPath& c) const {
    std::vector<int> s;
    for (std::size_t i = 0; i < c.size(); ++i) s.push_back(chi(c[i], c[(i + 1) % c.size()]));
    return s;
  }
  std::vector<int> path_signs(const DirectedPath& p) const {
    std::vector<int> s;
    for (std::size_t i = 1; i < p.size(); ++i) s.push_back(chi(p[i - 1], p[i]));
    return s;
  }
  static bool all_equal(const std::vector<int>& s) {
    return std::all_of(s.begin(), s.end(), [&](int x) { return x == s.front(); });
  }

  const std::vector<DirectedPath>& cycles() {
    if (!cycles_) cycles_ = g_.simple_cycles();
    return *cycles_;
  }
  const std::vector<DirectedPath>& paths() {
    if (!paths_) paths_ = g_.simple_paths(1, g_.edge_count());
    return *paths_;
  }
  const TriangleScan& triangles() {
    if (!triangles_) triangles_ = find_bad_triangles(d_, tol_);
    return *triangles_;
  }

  // The setting of the structural lemmas: connected, no terminal edges.
  bool lemma_setting() const { return g_.vertex_count() > 0 && g_.is_connected() && !g_.has_terminal_edge(); }

  bool in_bad_triangle(EdgeId e) {
    for (const BadTriangle& t : triangles().bad) {
      if (std::find(t.edges.begin(), t.edges.end(), e) != t.edges.end()) return true;
    }
    return false;
  }
  bool vertex_of_bad_triangle(VertexId v) {
    for (const BadTriangle& t : triangles().bad) {
      if (std::find(t.vertices.begin(), t.vertices.end(), v) != t.vertices.end()) return true;
    }
    return false;
  }

 private:
  const Drawing& d_;
  const AbstractGraph& g_;
  ToleranceConfig tol_;
  std::vector<bool> is_long_;
  std::vector<int> chi0_;
  std::optional<std::vector<DirectedPath>> cycles_;
  std::optional<std::vector<DirectedPath>> paths_;
  std::optional<TriangleScan> triangles_;
};

LemmaReport make(LemmaId id) {
  LemmaReport r;
  r.id = id;
  return r;
}

void fail(LemmaReport& r, std::string what, std::vector<EdgeId> edges, std::vector<VertexId> vertices = {},
          std::vector<int> signs = {}) {
  if (r.verdict == LemmaVerdict::Fail) return;
  r.verdict = LemmaVerdict::Fail;
  r.witness = LemmaWitness{std::move(what), std::move(edges), std::move(vertices), std::move(signs)};
}

void settle(LemmaReport& r) {
  if (r.verdict == LemmaVerdict::Fail) return;
  r.verdict = r.configurations > 0 ? LemmaVerdict::Pass : LemmaVerdict::NotApplicable;
}

LemmaReport cycle_good(Context& c) {
  LemmaReport r = make(LemmaId::CycleGood);
  for (const DirectedPath& cy : c.cycles()) {
    if (cy.size() < 5) continue;
    ++r.configurations;
    const auto s = c.cycle_signs(cy);
    if (!Context::all_equal(s)) fail(r, "cycle of length >= 5 is bad", edges_of(cy), c.graph().walk_vertices(cy), s);
  }
  settle(r);
  return r;
}

LemmaReport even_long(Context& c) {
  LemmaReport r = make(LemmaId::EvenLong);
  for (const DirectedPath& cy : c.cycles()) {
    if (cy.size() < 6 || cy.size() % 2 != 0) continue;
    ++r.configurations;
    const bool any = std::any_of(cy.begin(), cy.end(), [&](const DirectedEdge& e) { return c.is_long(e.edge); });
    if (!any) fail(r, "even cycle without a long edge", edges_of(cy), c.graph().walk_vertices(cy));
  }
  settle(r);
  return r;
}

LemmaReport sep_short(Context& c) {
  LemmaReport r = make(LemmaId::SepShort);
  if (!c.lemma_setting()) {
    r.note = "graph is disconnected or has a terminal edge";
    return r;
  }
  const AbstractGraph& g = c.graph();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) < 3) continue;
    for (EdgeId e : g.incident_edges(v)) {
      const auto w = separates_at(c.drawing(), e, v, c.tol());
      if (!w) continue;
      ++r.configurations;
      if (c.is_long(e)) fail(r, "separating edge is long", {e, w->f, w->g}, {v});
      else if (!c.in_bad_triangle(e)) fail(r, "separating edge is not in a bad 3-cycle", {e, w->f, w->g}, {v});
    }
  }
  settle(r);
  return r;
}

LemmaReport hemi(Context& c) {
  LemmaReport r = make(LemmaId::Hemi);
  if (!c.lemma_setting()) {
    r.note = "graph is disconnected or has a terminal edge";
    return r;
  }
  const AbstractGraph& g = c.graph();
  const Drawing& d = c.drawing();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) < 3) continue;
    ++r.configurations;
    const Vec3 p = d.position(v).vec();
    const Vec3 t1 = p.unitOrthogonal();
    const Vec3 t2 = p.cross(t1);
    std::vector<double> angles;
    for (EdgeId f : g.incident_edges(v)) {
      const Vec3 t = tangent_at(d.arc_from(f, v), d.position(v), c.tol()).vec();
      angles.push_back(std::atan2(t.dot(t2), t.dot(t1)));
    }
    std::sort(angles.begin(), angles.end());
    double gap = angles.front() + kTwoPi - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
    // The starting directions fit in a closed half plane iff some gap
    // between consecutive directions is at least pi.
    if (gap < kPi - c.tol().eps_event) {
      fail(r, "starting segments at vertex are not in one hemisphere", g.incident_edges(v), {v});
    } else if (gap < kPi + c.tol().eps_event) {
      r.note = "boundary tangency at a vertex";
    }
  }
  settle(r);
  return r;
}

LemmaReport deg4(Context& c) {
  LemmaReport r = make(LemmaId::Deg4);
  if (!c.lemma_setting()) {
    r.note = "graph is disconnected, empty or has a terminal edge";
    return r;
  }
  const AbstractGraph& g = c.graph();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    ++r.configurations;
    if (g.degree(v) > 4) fail(r, "vertex of degree above 4", g.incident_edges(v), {v});
    else if (g.degree(v) > 2 && !c.vertex_of_bad_triangle(v)) {
      fail(r, "vertex of degree above 2 outside every bad 3-cycle", g.incident_edges(v), {v});
    }
  }
  settle(r);
  return r;
}

LemmaReport long_a(Context& c) {
  LemmaReport r = make(LemmaId::LongA);
  const AbstractGraph& g = c.graph();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!c.is_long(e)) continue;
    for (EdgeId f = 0; f < g.edge_count(); ++f) {
      if (f == e || !g.adjacent_edges(e, f)) continue;
      ++r.configurations;
      if (c.is_long(f)) fail(r, "adjacent long edges", {e, f});
    }
  }
  settle(r);
  return r;
}

LemmaReport long_b(Context& c) {
  LemmaReport r = make(LemmaId::LongB);
  const AbstractGraph& g = c.graph();
  const Drawing& d = c.drawing();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!c.is_long(e)) continue;
    const GreatCircle circle = d.arc(e).circle();
    int side = 0;
    std::vector<EdgeId> seen;
    for (EdgeId f = 0; f < g.edge_count(); ++f) {
      if (f == e || !g.adjacent_edges(e, f)) continue;
      ++r.configurations;
      seen.push_back(f);
      const VertexId v = *g.common_vertex(e, f);
      const int start = starting_side(d, e, f, v, c.tol());
      const int far = hemisphere_side(circle, d.position(g.edge(f).other(v)), c.tol());
      if (c.is_long(f) || start == 0 || far != start) {
        fail(r, "edge adjacent to a long edge leaves its open hemisphere", {e, f}, {v});
        continue;
      }
      if (side == 0) side = start;
      if (start != side) fail(r, "edges adjacent to a long edge lie on both sides of its circle", seen);
    }
  }
  settle(r);
  return r;
}

LemmaReport long_c(Context& c) {
  LemmaReport r = make(LemmaId::LongC);
  for (const DirectedPath& p : c.paths()) {
    if (p.size() != 3 || !c.is_long(p[1].edge)) continue;
    ++r.configurations;
    const int a = c.chi(p[0], p[1]);
    const int b = c.chi(p[0], p[2]);
    if (a != b) fail(r, "chi(e1,e2) differs from chi(e1,e3) around a long middle edge", edges_of(p), {}, {a, b});
  }
  settle(r);
  return r;
}

LemmaReport long_d(Context& c) {
  LemmaReport r = make(LemmaId::LongD);
  const AbstractGraph& g = c.graph();
  for (const DirectedPath& p : c.paths()) {
    if (p.size() != 2 || c.is_long(p[0].edge) || c.is_long(p[1].edge)) continue;
    const VertexId mid = g.head(p[0]);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (g.edge(e).incident_to(mid)) continue;
      ++r.configurations;
      const DirectedEdge de{e, true};
      const int a = c.chi(de, p[0]);
      const int b = c.chi(de, p[1]);
      if (b != -a) fail(r, "edge crosses a short 2-path with equal orientations", {e, p[0].edge, p[1].edge}, {mid}, {a, b});
    }
  }
  settle(r);
  return r;
}

LemmaReport long_e(Context& c) {
  LemmaReport r = make(LemmaId::LongE);
  const AbstractGraph& g = c.graph();
  for (const DirectedPath& p : c.paths()) {
    if (p.size() < 2) continue;
    if (std::any_of(p.begin(), p.end(), [&](const DirectedEdge& x) { return c.is_long(x.edge); })) continue;
    const std::vector<VertexId> vs = g.walk_vertices(p);
    const int m = static_cast<int>(p.size());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      bool excluded = false;
      for (std::size_t i = 1; i + 1 < vs.size(); ++i) excluded = excluded || g.edge(e).incident_to(vs[i]);
      if (excluded) continue;
      ++r.configurations;
      const DirectedEdge de{e, true};
      const int first = c.chi(de, p.front());
      const int last = c.chi(de, p.back());
      const int expect = (m % 2 == 1) ? 1 : -1;
      if (first * last != expect) {
        std::vector<EdgeId> es = {e};
        for (const DirectedEdge& x : p) es.push_back(x.edge);
        fail(r, "parity of chi along an all-short path violated", es, vs, {first, last});
      }
    }
  }
  settle(r);
  return r;
}

LemmaReport gpl(Context& c) {
  LemmaReport r = make(LemmaId::Gpl);
  for (const DirectedPath& p : c.paths()) {
    const int k = static_cast<int>(p.size());
    if (k < 4) continue;
    const int m = k - 2;  // path e0 e1 ... em e(m+1)
    bool pattern = c.is_long(p[1].edge) && c.is_long(p[static_cast<std::size_t>(m)].edge);
    for (int i = 0; i < k && pattern; ++i) {
      if (i != 1 && i != m && c.is_long(p[static_cast<std::size_t>(i)].edge)) pattern = false;
    }
    if (!pattern) continue;
    const auto s = c.path_signs(p);
    if (!Context::all_equal(s)) continue;
    ++r.configurations;
    if (m % 2 == 0) fail(r, "long edges of a good path separated by an even number of short edges", edges_of(p), {}, s);
  }
  settle(r);
  return r;
}

LemmaReport gcy(Context& c) {
  LemmaReport r = make(LemmaId::Gcy);
  for (const DirectedPath& cy : c.cycles()) {
    std::vector<int> longs;
    for (std::size_t i = 0; i < cy.size(); ++i) {
      if (c.is_long(cy[i].edge)) longs.push_back(static_cast<int>(i));
    }
    if (longs.empty()) continue;
    const auto s = c.cycle_signs(cy);
    if (!Context::all_equal(s)) continue;
    ++r.configurations;
    const int len = static_cast<int>(cy.size());
    if (len % 2 == 1 && longs.size() > 1) {
      fail(r, "good odd cycle with more than one long edge", edges_of(cy), {}, s);
      continue;
    }
    if (longs.size() < 2) continue;
    for (std::size_t i = 0; i < longs.size(); ++i) {
      const int a = longs[i];
      const int b = longs[(i + 1) % longs.size()];
      const int gap = ((b - a + len) % len) - 1;
      if (gap % 2 == 0) {
        fail(r, "consecutive long edges of a good cycle separated by an even number of short edges", edges_of(cy), {},
             s);
      }
    }
  }
  settle(r);
  return r;
}

LemmaReport touch_even(Context& c) {
  LemmaReport r = make(LemmaId::TouchEven);
  const AbstractGraph& g = c.graph();
  const auto& cycles = c.cycles();
  std::vector<std::vector<VertexId>> vsets;
  for (const DirectedPath& cy : cycles) {
    auto vs = g.walk_vertices(cy);
    vs.pop_back();
    std::sort(vs.begin(), vs.end());
    vsets.push_back(std::move(vs));
  }
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      std::vector<VertexId> common;
      std::set_intersection(vsets[i].begin(), vsets[i].end(), vsets[j].begin(), vsets[j].end(),
                            std::back_inserter(common));
      if (common.size() != 1) continue;
      ++r.configurations;
      std::vector<EdgeId> es = edges_of(cycles[i]);
      for (EdgeId e : edges_of(cycles[j])) es.push_back(e);
      // One of the two cycles must be a bad triangle with a unique long
      // edge; the other one must then be even.
      const BadTriangle* tri = nullptr;
      std::size_t other = 0;
      for (const BadTriangle& t : c.triangles().bad) {
        auto tv = t.vertices;
        std::sort(tv.begin(), tv.end());
        if (t.long_edge_count == 1 && tv == vsets[i]) {
          tri = &t;
          other = j;
        } else if (t.long_edge_count == 1 && tv == vsets[j]) {
          tri = &t;
          other = i;
        }
      }
      if (!tri) {
        fail(r, "two cycles share one vertex and neither is a bad 3-cycle", es, common);
      } else if (cycles[other].size() % 2 != 0) {
        fail(r, "cycle touching the bad 3-cycle is odd", es, common);
      }
    }
  }
  settle(r);
  return r;
}

LemmaReport run(Context& c, LemmaId id) {
  switch (id) {
    case LemmaId::CycleGood: return cycle_good(c);
    case LemmaId::EvenLong: return even_long(c);
    case LemmaId::SepShort: return sep_short(c);
    case LemmaId::Hemi: return hemi(c);
    case LemmaId::Deg4: return deg4(c);
    case LemmaId::LongA: return long_a(c);
    case LemmaId::LongB: return long_b(c);
    case LemmaId::LongC: return long_c(c);
    case LemmaId::LongD: return long_d(c);
    case LemmaId::LongE: return long_e(c);
    case LemmaId::Gpl: return gpl(c);
    case LemmaId::Gcy: return gcy(c);
    case LemmaId::TouchEven: return touch_even(c);
  }
  throw Error(ErrorCode::UnknownLemmaId, "unknown lemma id");
}

}  // namespace

const std::vector<LemmaId>& all_lemma_ids() {
  static const std::vector<LemmaId> ids = [] {
    std::vector<LemmaId> v;
    for (const auto& [id, name] : kNames) v.push_back(id);
    return v;
  }();
  return ids;
}

std::string_view to_string(LemmaId id) {
  for (const auto& [k, name] : kNames) {
    if (k == id) return name;
  }
  return "?";
}

LemmaId parse_lemma_id(std::string_view s) {
  for (const auto& [k, name] : kNames) {
    if (name == s) return k;
  }
  throw Error(ErrorCode::UnknownLemmaId, "unknown lemma id '" + std::string(s) + "'");
}

std::string_view to_string(LemmaVerdict v) {
  switch (v) {
    case LemmaVerdict::Pass: return "Pass";
    case LemmaVerdict::Fail: return "Fail";
    case LemmaVerdict::NotApplicable: return "NotApplicable";
  }
  return "?";
}

LemmaReport check_lemma(const Drawing& d, LemmaId id, const ToleranceConfig& tol) {
  Context c(d, tol);
  return run(c, id);
}

std::vector<LemmaReport> check_all(const Drawing& d, const ToleranceConfig& tol) {
  Context c(d, tol);
  std::vector<LemmaReport> out;
  for (LemmaId id : all_lemma_ids()) out.push_back(run(c, id));
  return out;
}

}  // namespace thrackle
