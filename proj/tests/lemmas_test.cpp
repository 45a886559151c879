#include <gtest/gtest.h>

#include <map>

#include "test_support.hpp"
#include "thrackle/construct.hpp"
#include "thrackle/lemmas.hpp"

namespace thrackle {
namespace {

UnitVector lonlat(double lon_deg, double lat_deg) {
  const double lo = lon_deg * kPi / 180.0;
  const double la = lat_deg * kPi / 180.0;
  return UnitVector(std::cos(la) * std::cos(lo), std::cos(la) * std::sin(lo), std::sin(la));
}

LemmaReport find(const std::vector<LemmaReport>& rs, LemmaId id) {
  for (const auto& r : rs) {
    if (r.id == id) return r;
  }
  ADD_FAILURE() << "missing " << to_string(id);
  return {};
}

// Oracle chi for every ordered pair of edges in forward direction.
std::map<std::pair<EdgeId, EdgeId>, int> oracle_table(const Drawing& d) {
  std::map<std::pair<EdgeId, EdgeId>, int> t;
  const int m = d.graph().edge_count();
  for (EdgeId e = 0; e < m; ++e) {
    for (EdgeId f = 0; f < m; ++f) {
      if (e != f) t[{e, f}] = testing::oracle_chi(d.arc(e), d.arc(f));
    }
  }
  return t;
}

int directed_chi(const Drawing& d, const std::map<std::pair<EdgeId, EdgeId>, int>& t, DirectedEdge a,
                 DirectedEdge b) {
  const int sa = (a.forward == d.arc_runs_forward(a.edge)) ? 1 : -1;
  const int sb = (b.forward == d.arc_runs_forward(b.edge)) ? 1 : -1;
  return sa * sb * t.at({a.edge, b.edge});
}

TEST(LemmaIds, RoundTrip) {
  EXPECT_EQ(all_lemma_ids().size(), 13u);
  for (LemmaId id : all_lemma_ids()) EXPECT_EQ(parse_lemma_id(to_string(id)), id);
  EXPECT_EQ(to_string(LemmaId::LongE), "L-LONG-E");
  try {
    parse_lemma_id("L-NOPE");
    FAIL() << "expected UnknownLemmaId";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownLemmaId);
  }
}

TEST(CheckAll, EmptyGraphAllNotApplicable) {
  for (const auto& r : check_all(Drawing())) EXPECT_EQ(r.verdict, LemmaVerdict::NotApplicable) << to_string(r.id);
}

TEST(CheckAll, ConstructionsHaveNoFail) {
  for (int n : {3, 5, 6, 7, 8, 9}) {
    const Drawing d = cycle_drawing(n);
    for (const auto& r : check_all(d)) {
      EXPECT_NE(r.verdict, LemmaVerdict::Fail) << n << " " << to_string(r.id);
      if (r.verdict == LemmaVerdict::Pass) {
        EXPECT_GT(r.configurations, 0);
      } else {
        EXPECT_EQ(r.configurations, 0);
      }
    }
  }
}

TEST(CheckAll, SevenCycleApplicableChecksPass) {
  const auto rs = check_all(cycle_drawing(7));
  for (LemmaId id : {LemmaId::CycleGood, LemmaId::Deg4, LemmaId::LongD, LemmaId::LongE}) {
    EXPECT_EQ(find(rs, id).verdict, LemmaVerdict::Pass) << to_string(id);
  }
  // No long edges and no vertex of degree three in a lifted star polygon.
  for (LemmaId id : {LemmaId::EvenLong, LemmaId::SepShort, LemmaId::Hemi, LemmaId::LongA, LemmaId::Gpl}) {
    EXPECT_EQ(find(rs, id).verdict, LemmaVerdict::NotApplicable) << to_string(id);
  }
}

TEST(CheckLemma, MatchesCheckAll) {
  const Drawing d = cycle_drawing(6);
  const auto all = check_all(d);
  for (LemmaId id : all_lemma_ids()) {
    const LemmaReport r = check_lemma(d, id);
    EXPECT_EQ(r.verdict, find(all, id).verdict);
    EXPECT_EQ(r.configurations, find(all, id).configurations);
  }
}

TEST(CheckLemma, EvenCyclesContainLongEdge) {
  for (int n : {6, 8, 10}) {
    const LemmaReport r = check_lemma(cycle_drawing(n), LemmaId::EvenLong);
    EXPECT_EQ(r.verdict, LemmaVerdict::Pass);
    EXPECT_EQ(r.configurations, 1);
  }
}

TEST(CheckLemma, HemiNotApplicableWithoutDegreeThree) {
  EXPECT_EQ(check_lemma(six_cycle_drawing(), LemmaId::Hemi).verdict, LemmaVerdict::NotApplicable);
}

TEST(CheckLemma, RequiresCertifiedDrawing) {
  const AbstractGraph g(4, {{0, 1}, {2, 3}});
  const Drawing d = Drawing::from_classes(g, {lonlat(0, 10), lonlat(20, 10), lonlat(0, 40), lonlat(20, 40)},
                                          {LengthClass::Short, LengthClass::Short});
  try {
    check_lemma(d, LemmaId::CycleGood);
    FAIL() << "expected NotCertified";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCertified);
  }
}

TEST(OracleChi, AgreesWithKernel) {
  for (int n : {5, 6, 7}) {
    const Drawing d = cycle_drawing(n);
    const auto t = oracle_table(d);
    for (const auto& [key, value] : t) {
      EXPECT_EQ(value, chi(d, {key.first, d.arc_runs_forward(key.first)}, {key.second, d.arc_runs_forward(key.second)}))
          << n << ": " << key.first << "," << key.second;
    }
  }
}

// The parity identity on all-short paths recomputed with oracle signs; the
// configuration count must match the suite's.
TEST(OracleParity, AllShortPathsInOddStars) {
  for (int n : {5, 7, 9}) {
    const Drawing d = cycle_drawing(n);
    const AbstractGraph& g = d.graph();
    const auto t = oracle_table(d);
    long configurations = 0;
    for (const auto& p : g.simple_paths(2, g.edge_count())) {
      const auto vs = g.walk_vertices(p);
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        bool excluded = false;
        for (std::size_t i = 1; i + 1 < vs.size(); ++i) excluded = excluded || g.edge(e).incident_to(vs[i]);
        if (excluded) continue;
        ++configurations;
        const int first = directed_chi(d, t, {e, true}, p.front());
        const int last = directed_chi(d, t, {e, true}, p.back());
        EXPECT_EQ(first * last, p.size() % 2 == 1 ? 1 : -1);
      }
    }
    const LemmaReport r = check_lemma(d, LemmaId::LongE);
    EXPECT_EQ(r.verdict, LemmaVerdict::Pass);
    EXPECT_EQ(r.configurations, configurations);
  }
}

TEST(OracleParity, ShortTwoPathsCrossedWithOppositeSigns) {
  const Drawing d = cycle_drawing(7);
  const AbstractGraph& g = d.graph();
  const auto t = oracle_table(d);
  long configurations = 0;
  for (const auto& p : g.simple_paths(2, 2)) {
    const VertexId mid = g.head(p[0]);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (g.edge(e).incident_to(mid)) continue;
      ++configurations;
      EXPECT_EQ(directed_chi(d, t, {e, true}, p[0]), -directed_chi(d, t, {e, true}, p[1]));
    }
  }
  EXPECT_EQ(check_lemma(d, LemmaId::LongD).configurations, configurations);
}

TEST(OracleCycles, EveryCycleGoodWithOracleSigns) {
  for (int n : {5, 6, 8}) {
    const Drawing d = cycle_drawing(n);
    const auto t = oracle_table(d);
    const auto walk = cycle_walk(d.graph());
    int first = 0;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      const int s = directed_chi(d, t, walk[i], walk[(i + 1) % walk.size()]);
      if (i == 0) first = s;
      EXPECT_EQ(s, first) << n;
    }
  }
}

TEST(CheckLemma, BadTriangleLongEdgeChecks) {
  const AbstractGraph g(3, {{0, 1}, {1, 2}, {2, 0}});
  const Drawing d = Drawing::from_classes(g, {lonlat(0, 30), lonlat(-20, 0), lonlat(20, 0)},
                                          {LengthClass::Short, LengthClass::Long, LengthClass::Short});
  const auto rs = check_all(d);
  EXPECT_EQ(find(rs, LemmaId::LongA).verdict, LemmaVerdict::Pass);
  EXPECT_EQ(find(rs, LemmaId::LongB).verdict, LemmaVerdict::Pass);
  for (const auto& r : rs) EXPECT_NE(r.verdict, LemmaVerdict::Fail);
}

}  // namespace
}  // namespace thrackle
