#include "thrackle/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

namespace thrackle {

namespace {

// Bands are widened by a relative hair so that a zero-energy state clears the
// verifier's closed bands strictly.
double widen(double band) { return band * (1.0 + 1e-6) + 1e-15; }

struct ArcData {
  Vec3 start;
  Vec3 pole;
  Vec3 ortho;
  double angle = 0.0;
  bool ok = false;
};

double wrap(double t) {
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

double param(const ArcData& a, const Vec3& p) { return wrap(std::atan2(p.dot(a.ortho), p.dot(a.start))); }

// Positive inside the arc (distance to the nearer end), negative outside.
double depth(const ArcData& a, double t) {
  if (t <= a.angle) return std::min(t, a.angle - t);
  return -std::min(t - a.angle, kTwoPi - t);
}

struct PairInfo {
  int e;
  int f;
  int shared;  // common vertex or -1
};

// Precomputed structure of a graph for fast repeated energy evaluation.
class EnergyModel {
 public:
  EnergyModel(const AbstractGraph& g, double margin, const ToleranceConfig& tol)
      : g_(g),
        band_(widen(margin)),
        medium_band_(widen(std::max(margin, tol.eps_medium))),
        circle_band_(widen(tol.eps_circle)),
        sin_band_(std::sin(band_)),
        cos_band_(std::cos(band_)) {
    const int m = g.edge_count();
    for (int e = 0; e < m; ++e) {
      for (int f = e + 1; f < m; ++f) {
        const auto c = g.common_vertex(e, f);
        pairs_.push_back({e, f, c ? *c : -1});
      }
    }
    arcs_.resize(static_cast<std::size_t>(m));
    along_.resize(static_cast<std::size_t>(m));
  }

  double evaluate(const std::vector<Vec3>& pos, const std::vector<char>& is_long) {
    const int n = g_.vertex_count();
    const int m = g_.edge_count();
    double energy = 0.0;

    for (int e = 0; e < m; ++e) {
      const Edge& ed = g_.edges()[static_cast<std::size_t>(e)];
      ArcData& a = arcs_[static_cast<std::size_t>(e)];
      const Vec3& pu = pos[static_cast<std::size_t>(ed.u)];
      const Vec3& pv = pos[static_cast<std::size_t>(ed.v)];
      const Vec3 c = pu.cross(pv);
      const double s = c.norm();
      along_[static_cast<std::size_t>(e)].clear();
      if (s < 1e-12) {
        a.ok = false;
        energy += 1.0;
        continue;
      }
      a.ok = true;
      a.start = pu;
      const double theta = std::atan2(s, pu.dot(pv));
      if (is_long[static_cast<std::size_t>(e)]) {
        a.pole = -c / s;
        a.angle = kTwoPi - theta;
      } else {
        a.pole = c / s;
        a.angle = theta;
      }
      a.ortho = a.pole.cross(a.start);
      energy += std::max(0.0, medium_band_ - std::fabs(a.angle - kPi));
    }

    for (int a = 0; a < n; ++a) {
      const Vec3& pa = pos[static_cast<std::size_t>(a)];
      for (int b = a + 1; b < n; ++b) {
        if (pa.dot(pos[static_cast<std::size_t>(b)]) > cos_band_) {
          const double d = std::atan2(pa.cross(pos[static_cast<std::size_t>(b)]).norm(),
                                      pa.dot(pos[static_cast<std::size_t>(b)]));
          energy += std::max(0.0, band_ - d);
        }
      }
      for (int e = 0; e < m; ++e) {
        const ArcData& arc = arcs_[static_cast<std::size_t>(e)];
        if (!arc.ok || g_.edges()[static_cast<std::size_t>(e)].incident_to(a)) continue;
        const double h = pa.dot(arc.pole);
        if (std::fabs(h) >= sin_band_) continue;
        energy += std::max(0.0, band_ - vertex_arc_distance(arc, pa, h));
      }
    }

    for (const PairInfo& p : pairs_) {
      const ArcData& ae = arcs_[static_cast<std::size_t>(p.e)];
      const ArcData& af = arcs_[static_cast<std::size_t>(p.f)];
      if (!ae.ok || !af.ok) continue;
      const Vec3 axis = ae.pole.cross(af.pole);
      const double s = axis.norm();
      if (s < circle_band_) {
        energy += circle_band_ - s;
        continue;
      }
      const Vec3 c = axis / s;
      if (p.shared >= 0) {
        // The candidate away from the shared vertex must not be on both arcs.
        const Vec3 other = c.dot(pos[static_cast<std::size_t>(p.shared)]) > 0.0 ? Vec3(-c) : c;
        const double te = param(ae, other);
        const double tf = param(af, other);
        const double de = depth(ae, te);
        const double df = depth(af, tf);
        energy += forbidden(de, df);
        continue;
      }
      const double te1 = param(ae, c);
      const double tf1 = param(af, c);
      const double te2 = param(ae, -c);
      const double tf2 = param(af, -c);
      const double de1 = depth(ae, te1), df1 = depth(af, tf1);
      const double de2 = depth(ae, te2), df2 = depth(af, tf2);
      const double via1 = required(de1, df1) + forbidden(de2, df2);
      const double via2 = required(de2, df2) + forbidden(de1, df1);
      energy += std::min(via1, via2);
      if (de1 > 0.0 && df1 > 0.0) {
        along_[static_cast<std::size_t>(p.e)].push_back(te1);
        along_[static_cast<std::size_t>(p.f)].push_back(tf1);
      }
      if (de2 > 0.0 && df2 > 0.0) {
        along_[static_cast<std::size_t>(p.e)].push_back(te2);
        along_[static_cast<std::size_t>(p.f)].push_back(tf2);
      }
    }

    for (auto& ts : along_) {
      if (ts.size() < 2) continue;
      std::sort(ts.begin(), ts.end());
      for (std::size_t i = 1; i < ts.size(); ++i) energy += std::max(0.0, band_ - (ts[i] - ts[i - 1]));
    }
    return energy;
  }

 private:
  double required(double de, double df) const {
    return std::max(0.0, band_ - de) + std::max(0.0, band_ - df);
  }
  double forbidden(double de, double df) const { return std::max(0.0, std::min(de, df) + band_); }

  static double vertex_arc_distance(const ArcData& a, const Vec3& p, double h) {
    const double t = param(a, p);
    if (t <= a.angle) return std::asin(std::min(1.0, std::fabs(h)));
    const Vec3 end = std::cos(a.angle) * a.start + std::sin(a.angle) * a.ortho;
    const double d0 = std::atan2(p.cross(a.start).norm(), p.dot(a.start));
    const double d1 = std::atan2(p.cross(end).norm(), p.dot(end));
    return std::min(d0, d1);
  }

  const AbstractGraph& g_;
  double band_;
  double medium_band_;
  double circle_band_;
  double sin_band_;
  double cos_band_;
  std::vector<PairInfo> pairs_;
  std::vector<ArcData> arcs_;
  std::vector<std::vector<double>> along_;
};

std::vector<char> long_flags_of(const Drawing& d) {
  std::vector<char> out;
  for (const Arc& a : d.arcs()) out.push_back(a.length_class() == LengthClass::Long ? 1 : 0);
  return out;
}

std::vector<Vec3> positions_of(const Drawing& d) {
  std::vector<Vec3> out;
  for (const UnitVector& p : d.positions()) out.push_back(p.vec());
  return out;
}

Vec3 uniform_on_sphere(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    Vec3 v(n(rng), n(rng), n(rng));
    const double r = v.norm();
    if (r > 1e-9) return v / r;
  }
}

// Rotates p by `angle` towards a uniformly random tangent direction.
Vec3 nudge(const Vec3& p, double angle, std::mt19937_64& rng) {
  Vec3 t = uniform_on_sphere(rng);
  t -= t.dot(p) * p;
  const double r = t.norm();
  if (r < 1e-12) return p;
  t /= r;
  return (std::cos(angle) * p + std::sin(angle) * t).normalized();
}

struct RestartResult {
  bool done = false;
  bool certified = false;
  double best_energy = std::numeric_limits<double>::infinity();
  std::optional<Drawing> drawing;
};

std::optional<Drawing> try_certify(const AbstractGraph& g, const std::vector<Vec3>& pos,
                                   const std::vector<char>& is_long, const SearchConfig& cfg) {
  try {
    std::vector<UnitVector> pts;
    pts.reserve(pos.size());
    for (const Vec3& p : pos) pts.push_back(UnitVector(p));
    std::vector<LengthClass> cls;
    for (char l : is_long) cls.push_back(l ? LengthClass::Long : LengthClass::Short);
    Drawing d = Drawing::from_classes(g, std::move(pts), cls, cfg.tol);
    if (verify_thrackle(d, cfg.tol.with_event(cfg.margin)).is_thrackle) return d;
  } catch (const Error&) {
  }
  return std::nullopt;
}

RestartResult run_restart(const EmbeddingProblem& p, const SearchConfig& cfg, int index) {
  const AbstractGraph& g = p.graph;
  const int n = g.vertex_count();
  const int m = g.edge_count();
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.rng_seed & 0xffffffffu),
                    static_cast<std::uint32_t>(cfg.rng_seed >> 32), static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Vec3> pos(static_cast<std::size_t>(n));
  std::vector<char> is_long(static_cast<std::size_t>(m), 0);
  std::vector<int> movable;
  std::vector<int> free_edges;
  for (int v = 0; v < n; ++v) {
    if (p.movable.empty() || p.movable[static_cast<std::size_t>(v)]) movable.push_back(v);
  }
  for (int e = 0; e < m; ++e) {
    const LengthFlag f = p.length_flags.empty() ? LengthFlag::Free : p.length_flags[static_cast<std::size_t>(e)];
    if (f == LengthFlag::Free) free_edges.push_back(e);
    if (f == LengthFlag::Long) is_long[static_cast<std::size_t>(e)] = 1;
  }

  if (p.warm_start) {
    const std::vector<Vec3> warm = positions_of(*p.warm_start);
    const std::vector<char> warm_long = long_flags_of(*p.warm_start);
    for (int v = 0; v < n; ++v) pos[static_cast<std::size_t>(v)] = warm[static_cast<std::size_t>(v)];
    if (index == 0) {
      for (int e : free_edges) is_long[static_cast<std::size_t>(e)] = warm_long[static_cast<std::size_t>(e)];
    } else {
      for (int v : movable) pos[static_cast<std::size_t>(v)] = uniform_on_sphere(rng);
    }
  } else {
    for (int v = 0; v < n; ++v) pos[static_cast<std::size_t>(v)] = uniform_on_sphere(rng);
  }

  EnergyModel model(g, cfg.margin, cfg.tol);
  RestartResult out;
  double energy = model.evaluate(pos, is_long);
  out.best_energy = energy;

  auto check = [&]() {
    if (energy != 0.0) return false;
    if (auto d = try_certify(g, pos, is_long, cfg)) {
      out.certified = true;
      out.drawing = std::move(d);
      return true;
    }
    return false;
  };
  if (check()) return out;
  if (movable.empty() && free_edges.empty()) return out;

  const int steps = cfg.steps_per_restart;
  const double t_ratio = cfg.final_temperature / cfg.initial_temperature;
  const double s_ratio = cfg.final_step / cfg.initial_step;
  for (int step = 0; step < steps; ++step) {
    const double frac = steps > 1 ? static_cast<double>(step) / (steps - 1) : 1.0;
    const double temperature = cfg.initial_temperature * std::pow(t_ratio, frac);
    const double step_size = cfg.initial_step * std::pow(s_ratio, frac);

    const bool flip = !free_edges.empty() && (movable.empty() || u01(rng) < cfg.flag_flip_probability);
    int moved_vertex = -1;
    int flipped_edge = -1;
    Vec3 saved;
    if (flip) {
      flipped_edge = free_edges[static_cast<std::size_t>(rng() % free_edges.size())];
      is_long[static_cast<std::size_t>(flipped_edge)] ^= 1;
    } else {
      moved_vertex = movable[static_cast<std::size_t>(rng() % movable.size())];
      saved = pos[static_cast<std::size_t>(moved_vertex)];
      pos[static_cast<std::size_t>(moved_vertex)] = nudge(saved, step_size * std::fabs(gauss(rng)), rng);
    }
    const double candidate = model.evaluate(pos, is_long);
    const double delta = candidate - energy;
    if (delta <= 0.0 || u01(rng) < std::exp(-delta / temperature)) {
      energy = candidate;
      out.best_energy = std::min(out.best_energy, energy);
      if (check()) return out;
    } else if (flip) {
      is_long[static_cast<std::size_t>(flipped_edge)] ^= 1;
    } else {
      pos[static_cast<std::size_t>(moved_vertex)] = saved;
    }
  }
  return out;
}

}  // namespace

void SearchConfig::validate() const {
  if (restarts <= 0 || steps_per_restart <= 0) throw Error(ErrorCode::InvalidArgument, "restarts and steps must be positive");
  if (!(initial_temperature > 0.0) || !(final_temperature > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "temperatures must be positive");
  }
  if (!(initial_step > 0.0) || !(final_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "step sizes must be positive");
  if (!(flag_flip_probability >= 0.0 && flag_flip_probability <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "flag_flip_probability must lie in [0, 1]");
  }
  tol.validate();
  if (!(margin >= tol.eps_event)) throw Error(ErrorCode::InvalidArgument, "margin must be at least eps_event");
}

std::string_view to_string(SearchStatus s) {
  return s == SearchStatus::Certified ? "Certified" : "Exhausted";
}

double violation_energy(const Drawing& d, double margin, const ToleranceConfig& tol) {
  EnergyModel model(d.graph(), margin, tol);
  return model.evaluate(positions_of(d), long_flags_of(d));
}

SearchOutcome search_embedding(const EmbeddingProblem& problem, const SearchConfig& cfg) {
  cfg.validate();
  const AbstractGraph& g = problem.graph;
  if (!problem.length_flags.empty() && static_cast<int>(problem.length_flags.size()) != g.edge_count()) {
    throw Error(ErrorCode::InvalidArgument, "one length flag per edge required");
  }
  if (!problem.movable.empty() && static_cast<int>(problem.movable.size()) != g.vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "one movable entry per vertex required");
  }
  if (problem.warm_start && problem.warm_start->graph().vertex_count() != g.vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "warm start does not match the graph");
  }

  const int restarts = cfg.restarts;
  std::vector<RestartResult> results(static_cast<std::size_t>(restarts));
  std::atomic<int> next{0};
  std::atomic<int> stop_after{restarts};

  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= restarts || i > stop_after.load()) return;
      RestartResult r = run_restart(problem, cfg, i);
      r.done = true;
      const bool cert = r.certified;
      results[static_cast<std::size_t>(i)] = std::move(r);
      if (cert) {
        int cur = stop_after.load();
        while (i < cur && !stop_after.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };

  int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, restarts);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SearchOutcome out;
  const int last = std::min(stop_after.load(), restarts - 1);
  out.best_energy = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= last; ++i) {
    const RestartResult& r = results[static_cast<std::size_t>(i)];
    out.energy_trace.push_back(r.best_energy);
    out.best_energy = std::min(out.best_energy, r.best_energy);
    if (r.certified) {
      out.status = SearchStatus::Certified;
      out.drawing = r.drawing;
      out.certified_restart = i;
      out.best_energy = 0.0;
      break;
    }
  }
  return out;
}

std::string_view to_string(FalsifyStatus s) {
  switch (s) {
    case FalsifyStatus::Exhausted: return "Exhausted";
    case FalsifyStatus::Certified: return "Certified";
    case FalsifyStatus::PreconditionViolation: return "PreconditionViolation";
  }
  return "?";
}

bool FalsifyReport::critical() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const FalsifyEntry& e) { return e.status == FalsifyStatus::Certified; });
}

bool FalsifyReport::has_precondition_violation() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const FalsifyEntry& e) { return e.status == FalsifyStatus::PreconditionViolation; });
}

FalsifyReport falsify(const std::vector<AbstractGraph>& family, const SearchConfig& cfg) {
  cfg.validate();
  FalsifyReport report;
  report.restarts = cfg.restarts;
  report.steps_per_restart = cfg.steps_per_restart;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const AbstractGraph& g = family[i];
    FalsifyEntry entry;
    entry.graph = g;
    if (!g.is_connected()) {
      entry.status = FalsifyStatus::PreconditionViolation;
      entry.note = "graph is not connected";
    } else if (g.has_terminal_edge()) {
      entry.status = FalsifyStatus::PreconditionViolation;
      entry.note = "graph has a terminal edge";
    } else if (g.edge_count() <= g.vertex_count()) {
      entry.status = FalsifyStatus::PreconditionViolation;
      entry.note = "graph does not have more edges than vertices";
    } else {
      SearchConfig c = cfg;
      c.rng_seed = cfg.rng_seed + 0x9e3779b97f4a7c15ULL * (i + 1);
      const SearchOutcome o = search_embedding(EmbeddingProblem{g, {}, std::nullopt, {}}, c);
      entry.best_energy = o.best_energy;
      if (o.status == SearchStatus::Certified) {
        entry.status = FalsifyStatus::Certified;
        entry.drawing = o.drawing;
        entry.note = "CRITICAL: certified drawing with m > n";
      } else {
        entry.status = FalsifyStatus::Exhausted;
        entry.note = "no drawing found within budget";
      }
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace thrackle
