// Acceptance run: one PASS/FAIL line per criterion. Criteria 1-7 run twice
// with identical seeds; their reports are written under --out and compared
// byte for byte for criterion 8. Timings are printed but never stored in the
// reports.

#include <fmt/core.h>

#include <chrono>
#include <filesystem>
#include <random>

#include "CLI11.hpp"
#include "test_support.hpp"
#include "thrackle/classify.hpp"
#include "thrackle/construct.hpp"
#include "thrackle/document.hpp"
#include "thrackle/graph6.hpp"
#include "thrackle/report.hpp"

using namespace thrackle;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Budget {
  int c4_restarts = 100000;
  int c4_steps = 1000;
  long fuzz_count = 10000;
  int falsify_restarts = 10000;
  int falsify_steps = 1000;
  int oracle_pairs = 10000;
};

struct Outcome {
  bool pass = false;
  std::string detail;
  json report;
};

class Clock {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// Certified drawings seen anywhere in the run, checked for n >= m.
struct NgeM {
  long checks = 0;
  long violations = 0;
  void add(const Drawing& d) {
    ++checks;
    if (!n_ge_m_check(d)) ++violations;
  }
};

bool certified(const Drawing& d, const ToleranceConfig& tol) {
  const VerificationReport r = verify_thrackle(d, tol);
  return r.is_thrackle && r.is_general_position && check_general_position(d, tol).ok();
}

const std::vector<int> kCycleLengths = {3, 5, 7, 9, 11, 6, 8, 10, 12};

Outcome criterion1(std::vector<Drawing>& out, NgeM& ngem) {
  const ToleranceConfig tol;  // eps_event = 1e-6
  Clock clock;
  Outcome o;
  o.report = json{{"criterion", 1}, {"cycles", json::array()}};
  bool all = true;
  for (int n : kCycleLengths) {
    const Drawing d = cycle_drawing(n, tol);
    const bool ok = certified(d, tol);
    all = all && ok;
    if (ok) ngem.add(d);
    o.report["cycles"].push_back(json{{"n", n}, {"certified", ok}, {"document", json::parse(to_document_text(d))}});
    out.push_back(d);
  }
  const double t = clock.seconds();
  o.pass = all && t < 60.0;
  o.detail = fmt::format("{} cycles constructed, {} certified at eps_event=1e-6, {:.1f} s (limit 60 s)",
                         kCycleLengths.size(), all ? "all" : "NOT all", t);
  return o;
}

Outcome criterion2(const std::vector<Drawing>& cycles) {
  Outcome o;
  o.report = json{{"criterion", 2}, {"cycles", json::array()}};
  int exceptions = 0;
  for (const Drawing& d : cycles) {
    const int n = d.graph().vertex_count();
    const PathClass pc = classify_cycle(d, cycle_walk(d.graph()));
    int longs = 0;
    for (auto c : d.length_classes()) longs += c == LengthClass::Long;
    const bool good_ok = n < 5 || pc.verdict == PathVerdict::Good;
    const bool long_ok = n % 2 == 1 || longs >= 1;
    exceptions += !good_ok + !long_ok;
    o.report["cycles"].push_back(
        json{{"n", n}, {"verdict", std::string(to_string(pc.verdict))}, {"chi", pc.chi_sequence}, {"long_edges", longs}});
  }
  o.pass = exceptions == 0;
  o.detail = fmt::format("cycles of length >= 5 Good and even cycles with a long edge: {} exceptions", exceptions);
  return o;
}

Outcome criterion3(const Budget& b) {
  SearchConfig cfg;
  cfg.restarts = b.c4_restarts;
  cfg.steps_per_restart = b.c4_steps;
  cfg.rng_seed = 4;
  Clock clock;
  const SearchOutcome s = search_embedding(EmbeddingProblem{AbstractGraph::cycle(4), {}, std::nullopt, {}}, cfg);
  const double t = clock.seconds();
  Outcome o;
  o.report = search_report(AbstractGraph::cycle(4), s, cfg);
  o.pass = s.status == SearchStatus::Exhausted && t <= 1800.0 && b.c4_restarts >= 100000 && b.c4_steps >= 1000;
  o.detail = fmt::format("C4 search {} x {} steps: {} (best energy {:.3g}), {:.0f} s (limit 1800 s)", cfg.restarts,
                         cfg.steps_per_restart, to_string(s.status), s.best_energy, t);
  return o;
}

Outcome criterion4(const Budget& b, FuzzStats& stats) {
  FuzzConfig cfg;
  cfg.count = b.fuzz_count;
  cfg.seed = 1;
  Clock clock;
  stats = run_fuzz(cfg);
  long fails = 0;
  for (const auto& t : stats.lemmas) fails += t.fail;
  Outcome o;
  o.report = fuzz_report(stats, cfg);
  o.pass = fails == 0 && stats.drawings >= 10000;
  o.detail = fmt::format("{} certified drawings, {} lemma Fail verdicts{}, {:.1f} s", stats.drawings, fails,
                         stats.critical() ? " (CRITICAL)" : "", clock.seconds());
  return o;
}

Outcome criterion5(const Budget& b, const FuzzStats& fuzz, NgeM& ngem) {
  const auto family = load_graph6(fs::path(THRACKLE_TEST_DATA) / "falsify_family.g6");
  SearchConfig cfg;
  cfg.restarts = b.falsify_restarts;
  cfg.steps_per_restart = b.falsify_steps;
  cfg.rng_seed = 5;
  Clock clock;
  const FalsifyReport r = falsify(family, cfg);
  int certified_count = 0;
  for (const auto& e : r.entries) {
    if (e.status == FalsifyStatus::Certified) {
      ++certified_count;
      ngem.add(*e.drawing);
    }
  }
  const long checks = ngem.checks + fuzz.n_ge_m_checks;
  const long violations = ngem.violations + fuzz.n_ge_m_violations;
  Outcome o;
  o.report = falsify_report(r, cfg);
  o.report["n_ge_m"] = json{{"checks", checks}, {"violations", violations}};
  o.pass = certified_count == 0 && !r.has_precondition_violation() && violations == 0 && family.size() == 9 &&
           b.falsify_restarts >= 10000;
  o.detail = fmt::format("{} graphs x {} restarts x {} steps: {} Certified; n>=m held on {}/{} certified drawings, {:.0f} s",
                         family.size(), cfg.restarts, cfg.steps_per_restart, certified_count, checks - violations,
                         checks, clock.seconds());
  return o;
}

// Random arc pair, half of them with an end of f moved to within
// [2 eps_event, 1e-3] of the circle crossing on e, inside or outside f.
testing::ArcPair oracle_pair(std::mt19937_64& rng, const ToleranceConfig& tol) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (;;) {
    testing::ArcPair p = testing::random_clear_pair(rng, tol.eps_event);
    if (p.share_vertex || u01(rng) < 0.5) return p;
    Vec3 c = p.e.pole().vec().cross(p.f.pole().vec()).normalized();
    if (point_position(p.e, UnitVector(c), tol) != PointPosition::Interior) c = -c;
    if (point_position(p.e, UnitVector(c), tol) != PointPosition::Interior) continue;
    const Vec3 s = p.f.start().vec();
    const Vec3 w = p.f.pole().vec().cross(s);
    double t = std::atan2(c.dot(w), c.dot(s));
    if (t < 0) t += kTwoPi;
    const double delta = std::exp(std::log(2 * tol.eps_event) + u01(rng) * (std::log(1e-3) - std::log(2 * tol.eps_event)));
    const double angle = t + (u01(rng) < 0.5 ? delta : -delta);
    if (!(angle > 0.01 && angle < kTwoPi - 0.01) || std::fabs(angle - kPi) < 0.01) continue;
    try {
      const Arc f = Arc::from_pole(p.f.start(), p.f.pole(), angle, tol);
      const AbstractGraph g(4, {{0, 1}, {2, 3}});
      const Drawing d(g, {p.e.start(), p.e.end(), f.start(), f.end()}, {p.e, f}, tol);
      if (clearance(d, tol) < tol.eps_event) continue;
      return {p.e, f, false};
    } catch (const Error&) {
    }
  }
}

Outcome criterion6(const Budget& b) {
  const ToleranceConfig tol;
  std::mt19937_64 rng(6);
  int agree = 0;
  int crossings = 0;
  int shared = 0;
  int empty = 0;
  json disagreements = json::array();
  Clock clock;
  for (int i = 0; i < b.oracle_pairs; ++i) {
    const testing::ArcPair p = oracle_pair(rng, tol);
    const auto got = arc_pair_intersections(p.e, p.f, tol);
    const auto want = testing::sampled_intersections(p.e, p.f);
    bool same = got.size() == want.size();
    for (const auto& w : want) {
      same = same && std::any_of(got.begin(), got.end(), [&](const IntersectionEvent& g) {
               return g.kind == w.kind && angular_distance(g.point, w.point) < tol.eps_event;
             });
      crossings += w.kind == EventKind::ProperCrossing;
      shared += w.kind == EventKind::SharedEndpoint;
    }
    empty += want.empty();
    agree += same;
    if (!same) disagreements.push_back(i);
  }
  Outcome o;
  o.report = json{{"criterion", 6},
                  {"pairs", b.oracle_pairs},
                  {"agree", agree},
                  {"oracle_events", json{{"ProperCrossing", crossings}, {"SharedEndpoint", shared}, {"none", empty}}},
                  {"disagreements", disagreements}};
  o.pass = agree == b.oracle_pairs && b.oracle_pairs >= 10000;
  o.detail = fmt::format("{}/{} random arc pairs agree with the sampling oracle ({} crossings, {} shared, {} disjoint), {:.1f} s",
                         agree, b.oracle_pairs, crossings, shared, empty, clock.seconds());
  return o;
}

Outcome criterion7(const FuzzStats& s) {
  Outcome o;
  o.report = json{{"criterion", 7},
                  {"chi_antisymmetry", json{{"events", s.chi_events}, {"violations", s.chi_antisymmetry_violations}}},
                  {"parity", json{{"configurations", s.parity_configurations}, {"violations", s.parity_violations}}}};
  o.pass = s.chi_antisymmetry_violations == 0 && s.parity_violations == 0 && s.chi_events > 0 &&
           s.parity_configurations > 0;
  o.detail = fmt::format("chi antisymmetry exact on {} events ({} violations); parity identity on {} configurations ({} violations)",
                         s.chi_events, s.chi_antisymmetry_violations, s.parity_configurations, s.parity_violations);
  return o;
}

std::vector<Outcome> run_pass(const Budget& b, bool verbose) {
  std::vector<Outcome> out;
  NgeM ngem;
  std::vector<Drawing> cycles;
  FuzzStats fuzz;
  auto step = [&](int id, Outcome o) {
    if (verbose) fmt::print("  criterion {} done: {}\n", id, o.detail);
    std::fflush(stdout);
    out.push_back(std::move(o));
  };
  step(1, criterion1(cycles, ngem));
  step(2, criterion2(cycles));
  step(3, criterion3(b));
  step(4, criterion4(b, fuzz));
  step(5, criterion5(b, fuzz, ngem));
  step(6, criterion6(b));
  step(7, criterion7(fuzz));
  return out;
}

std::vector<std::string> write_reports(const std::vector<Outcome>& os, const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < os.size(); ++i) {
    texts.push_back(dump_report(os[i].report));
    write_file_atomic(dir / fmt::format("criterion{}.json", i + 1), texts.back());
  }
  return texts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-8"};
  std::string out_dir = "acceptance_reports";
  bool quick = false;
  app.add_option("--out", out_dir, "Directory for the machine-readable reports");
  app.add_flag("--quick", quick, "Reduced budgets for development; criteria 3-6 then cannot pass");
  CLI11_PARSE(app, argc, argv);

  Budget b;
  if (quick) {
    b.c4_restarts = 200;
    b.falsify_restarts = 20;
    b.fuzz_count = 2000;
    b.oracle_pairs = 1000;
    fmt::print("quick mode: reduced budgets, results are not acceptance evidence\n");
  }

  Clock total;
  fmt::print("pass 1\n");
  const auto first = run_pass(b, true);
  const auto t1 = write_reports(first, fs::path(out_dir) / "pass1");
  fmt::print("pass 2 (same seeds)\n");
  const auto second = run_pass(b, true);
  const auto t2 = write_reports(second, fs::path(out_dir) / "pass2");

  int identical = 0;
  std::string differing;
  for (std::size_t i = 0; i < t1.size(); ++i) {
    if (t1[i] == t2[i]) {
      ++identical;
    } else {
      differing += fmt::format(" {}", i + 1);
    }
  }
  const bool deterministic = identical == static_cast<int>(t1.size());

  fmt::print("\n");
  bool all = true;
  for (std::size_t i = 0; i < first.size(); ++i) {
    const bool pass = first[i].pass && second[i].pass;
    all = all && pass;
    fmt::print("criterion {}: {}  {}\n", i + 1, pass ? "PASS" : "FAIL", first[i].detail);
  }
  fmt::print("criterion 8: {}  {}/{} reports byte-identical across two runs{}\n", deterministic ? "PASS" : "FAIL",
             identical, t1.size(), differing.empty() ? "" : " (differ:" + differing + ")");
  all = all && deterministic;
  fmt::print("total {:.0f} s; reports in {}\n", total.seconds(), out_dir);
  return all ? 0 : 1;
}
