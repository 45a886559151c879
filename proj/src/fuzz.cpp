#include "thrackle/fuzz.hpp"

#include <Eigen/Geometry>

#include <random>

#include "thrackle/construct.hpp"
#include "thrackle/search.hpp"

namespace thrackle {

namespace {

struct Item {
  Drawing drawing;
  std::string source;
};

bool certified(const Drawing& d, const ToleranceConfig& tol) {
  try {
    return verify_thrackle(d, tol).is_thrackle;
  } catch (const Error&) {
    return false;
  }
}

// Sub-drawing on the given edges, with vertices renumbered in order of first
// appearance.
Drawing sub_drawing(const Drawing& d, const std::vector<EdgeId>& keep, const ToleranceConfig& tol) {
  std::vector<int> map(static_cast<std::size_t>(d.graph().vertex_count()), -1);
  std::vector<UnitVector> pos;
  std::vector<Edge> edges;
  std::vector<Arc> arcs;
  auto id = [&](VertexId v) {
    if (map[static_cast<std::size_t>(v)] < 0) {
      map[static_cast<std::size_t>(v)] = static_cast<int>(pos.size());
      pos.push_back(d.position(v));
    }
    return map[static_cast<std::size_t>(v)];
  };
  for (EdgeId e : keep) {
    const Edge& ed = d.graph().edge(e);
    edges.push_back({id(ed.u), id(ed.v)});
    arcs.push_back(d.directed_arc({e, true}));
  }
  const int n = static_cast<int>(pos.size());
  return Drawing(AbstractGraph(n, std::move(edges)), std::move(pos), std::move(arcs), tol);
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    Vec3 v(g(rng), g(rng), g(rng));
    if (v.norm() > 1e-9) return v.normalized();
  }
}

// Moves every vertex by an angle uniform in [0, scale] in a random tangent
// direction, keeping each edge's length class.
std::optional<Drawing> jitter(const Drawing& d, double scale, std::mt19937_64& rng, const ToleranceConfig& tol) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<UnitVector> pos;
  for (const UnitVector& p : d.positions()) {
    Vec3 t = random_unit(rng);
    t -= t.dot(p.vec()) * p.vec();
    if (t.norm() < 1e-12) {
      pos.push_back(p);
      continue;
    }
    t.normalize();
    const double a = scale * u01(rng);
    pos.emplace_back(std::cos(a) * p.vec() + std::sin(a) * t);
  }
  try {
    Drawing out = Drawing::from_classes(d.graph(), std::move(pos), d.length_classes(), tol);
    if (certified(out, tol)) return out;
  } catch (const Error&) {
  }
  return std::nullopt;
}

std::vector<Item> base_drawings(const FuzzConfig& cfg) {
  std::vector<Item> items;
  const ToleranceConfig& tol = cfg.tol;
  for (int n : {3, 5, 7, 9, 11, 13}) items.push_back({cycle_drawing(n, tol), "star-lift"});
  for (int n : {6, 8, 10, 12}) items.push_back({cycle_drawing(n, tol), "insertion"});
  for (int n : {3, 5, 7, 9}) {
    for (double cap : {0.05, 0.6, 1.0, 1.3}) {
      try {
        items.push_back({gnomonic_lift(star_polygon_thrackle(n), cap, tol), "star-lift"});
      } catch (const Error&) {
      }
    }
  }
  if (cfg.include_search) {
    SearchConfig sc;
    sc.restarts = 64;
    sc.steps_per_restart = 20000;
    sc.margin = 1e-4;
    sc.threads = 1;
    sc.tol = tol;
    std::vector<AbstractGraph> graphs;
    for (int n : {3, 5, 6, 7}) graphs.push_back(AbstractGraph::cycle(n));
    for (int k : {1, 2, 3, 4, 5, 6}) graphs.push_back(AbstractGraph::path(k));
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      for (std::uint64_t s = 0; s < 2; ++s) {
        sc.rng_seed = cfg.seed * 7919 + i * 31 + s;
        const SearchOutcome o = search_embedding(EmbeddingProblem{graphs[i], {}, std::nullopt, {}}, sc);
        if (o.status == SearchStatus::Certified) items.push_back({*o.drawing, "search"});
      }
    }
  }
  return items;
}

std::vector<Item> derived_drawings(const std::vector<Item>& bases, const ToleranceConfig& tol) {
  std::vector<Item> out;
  for (const Item& it : bases) {
    const AbstractGraph& g = it.drawing.graph();
    if (g.edge_count() != g.vertex_count() || g.vertex_count() < 3) continue;
    // Contiguous sub-paths of the cycle.
    std::vector<DirectedEdge> walk;
    try {
      walk = g.walk_from_vertices([&] {
        std::vector<VertexId> order = {0};
        VertexId prev = -1, cur = 0;
        for (int i = 1; i <= g.vertex_count(); ++i) {
          for (EdgeId e : g.incident_edges(cur)) {
            const VertexId w = g.edge(e).other(cur);
            if (w != prev) {
              prev = cur;
              cur = w;
              break;
            }
          }
          order.push_back(cur);
        }
        return order;
      }());
    } catch (const Error&) {
      continue;
    }
    const int m = static_cast<int>(walk.size());
    for (int len = 2; len < m; ++len) {
      for (int start = 0; start < m; ++start) {
        std::vector<EdgeId> keep;
        for (int k = 0; k < len; ++k) keep.push_back(walk[static_cast<std::size_t>((start + k) % m)].edge);
        Drawing sd = sub_drawing(it.drawing, keep, tol);
        if (certified(sd, tol)) out.push_back({std::move(sd), "sub-path"});
      }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (it.drawing.arc(e).length_class() != LengthClass::Short) continue;
      try {
        out.push_back({split_edge(it.drawing, e, tol), "edge-split"});
      } catch (const Error&) {
      }
    }
  }
  return out;
}

}  // namespace

bool FuzzStats::critical() const {
  return !failures.empty() || chi_antisymmetry_violations > 0 || parity_violations > 0 || n_ge_m_violations > 0;
}

std::pair<long, long> chi_antisymmetry(const Drawing& d, const ToleranceConfig& tol) {
  long events = 0;
  long bad = 0;
  const int m = d.graph().edge_count();
  for (EdgeId e = 0; e < m; ++e) {
    for (EdgeId f = e + 1; f < m; ++f) {
      const Arc& a = d.arc(e);
      const Arc& b = d.arc(f);
      const auto ab = arc_pair_intersections(a, b, tol);
      const auto ba = arc_pair_intersections(b, a, tol);
      if (ab.size() != ba.size()) {
        ++bad;
        continue;
      }
      for (std::size_t k = 0; k < ab.size(); ++k) {
        ++events;
        // Match the swapped event by location.
        const IntersectionEvent* twin = nullptr;
        for (const auto& ev : ba) {
          if ((ev.point.vec() - ab[k].point.vec()).norm() <= tol.eps_event) twin = &ev;
        }
        if (!twin) {
          ++bad;
          continue;
        }
        const int x = crossing_orientation(a, b, ab[k], tol);
        const int y = crossing_orientation(b, a, *twin, tol);
        if (x != -y) ++bad;
      }
    }
  }
  return {events, bad};
}

FuzzStats run_fuzz(const FuzzConfig& cfg, const DrawingSink& sink) {
  FuzzStats stats;
  const ToleranceConfig& tol = cfg.tol;
  const auto& ids = all_lemma_ids();

  auto process = [&](const Drawing& d, const std::string& source) {
    if (sink) sink(d, source);
    ++stats.drawings;
    ++stats.by_source[source];
    const auto reports = check_all(d, tol);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      LemmaTally& t = stats.lemmas[i];
      t.configurations += reports[i].configurations;
      switch (reports[i].verdict) {
        case LemmaVerdict::Pass: ++t.pass; break;
        case LemmaVerdict::NotApplicable: ++t.not_applicable; break;
        case LemmaVerdict::Fail:
          ++t.fail;
          stats.failures.push_back({source, reports[i], d});
          break;
      }
      if (ids[i] == LemmaId::LongE) {
        stats.parity_configurations += reports[i].configurations;
        if (reports[i].verdict == LemmaVerdict::Fail) ++stats.parity_violations;
      }
    }
    const auto [events, bad] = chi_antisymmetry(d, tol);
    stats.chi_events += events;
    stats.chi_antisymmetry_violations += bad;
    ++stats.n_ge_m_checks;
    if (!n_ge_m_check(d, tol)) ++stats.n_ge_m_violations;
  };

  std::vector<Item> pool = base_drawings(cfg);
  {
    auto derived = derived_drawings(pool, tol);
    for (auto& it : derived) pool.push_back(std::move(it));
  }
  for (const Item& it : pool) {
    if (stats.drawings >= cfg.count) return stats;
    process(it.drawing, it.source);
  }

  std::mt19937_64 rng(cfg.seed);
  const double scales[] = {tol.eps_event / 2, 1e-4, 1e-3, 1e-2, 5e-2};
  std::size_t k = 0;
  long attempts = 0;
  while (stats.drawings < cfg.count && !pool.empty()) {
    const Item& base = pool[k % pool.size()];
    const double scale = scales[(k / pool.size()) % 5];
    ++k;
    ++attempts;
    // Rotate every drawing; perturb on top of the rotation.
    Eigen::Matrix3d rot = Eigen::AngleAxisd(std::uniform_real_distribution<double>(0.0, kTwoPi)(rng),
                                            random_unit(rng))
                              .toRotationMatrix();
    Drawing rotated = base.drawing.rotated(rot);
    auto j = jitter(rotated, scale, rng, tol);
    if (!j) {
      ++stats.rejected;
      if (attempts > 50 * cfg.count) break;
      continue;
    }
    process(*j, "perturbed-" + base.source);
  }
  return stats;
}

}  // namespace thrackle
