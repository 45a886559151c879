#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "thrackle/classify.hpp"
#include "thrackle/construct.hpp"

namespace thrackle {
namespace {

UnitVector lonlat(double lon_deg, double lat_deg) {
  const double lo = lon_deg * kPi / 180.0;
  const double la = lat_deg * kPi / 180.0;
  return UnitVector(std::cos(la) * std::cos(lo), std::cos(la) * std::sin(lo), std::sin(la));
}

DirectedPath reversed(const DirectedPath& p) {
  DirectedPath r;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r.push_back({it->edge, !it->forward});
  return r;
}

// A bad 3-path found by search and frozen; the last edge is long.
Drawing bad_three_path() {
  const std::vector<UnitVector> pos = {
      UnitVector(0.3371400935906872, 0.93788316765800128, -0.081925094552622452),
      UnitVector(-0.0010169770725353691, 0.51984464160000698, 0.85426021466377233),
      UnitVector(0.65233428904478552, -0.75699914623277409, 0.037580153529294252),
      UnitVector(0.16659556541391241, 0.74609024966959103, 0.64466677976485343),
  };
  return Drawing::from_classes(AbstractGraph::path(3), pos,
                               {LengthClass::Short, LengthClass::Short, LengthClass::Long});
}

// Triangle A B C on a small cap with BC drawn the long way round.
Drawing bad_triangle() {
  const AbstractGraph g(3, {{0, 1}, {1, 2}, {2, 0}});
  return Drawing::from_classes(g, {lonlat(0, 30), lonlat(-20, 0), lonlat(20, 0)},
                               {LengthClass::Short, LengthClass::Long, LengthClass::Short});
}

// Vertex 0 with three short edges; edge 0 points east.
Drawing star_at_vertex(double lat_f, double lat_g) {
  const AbstractGraph g(4, {{0, 1}, {0, 2}, {0, 3}});
  return Drawing::from_classes(g, {lonlat(0, 0), lonlat(30, 0), lonlat(-25, lat_f), lonlat(-25, lat_g)},
                               {LengthClass::Short, LengthClass::Short, LengthClass::Short});
}

TEST(Chi, FlipsWithEitherDirection) {
  const Drawing d = cycle_drawing(7);
  for (EdgeId e = 0; e < 7; ++e) {
    for (EdgeId f = e + 1; f < 7; ++f) {
      const int x = chi(d, {e, true}, {f, true});
      EXPECT_EQ(chi(d, {e, false}, {f, true}), -x);
      EXPECT_EQ(chi(d, {e, true}, {f, false}), -x);
      EXPECT_EQ(chi(d, {f, true}, {e, true}), -x);
    }
  }
}

TEST(ClassifyPath, SubpathOfGoodCycleIsGood) {
  const Drawing d = cycle_drawing(7);
  const DirectedPath walk = cycle_walk(d.graph());
  const DirectedPath p(walk.begin(), walk.begin() + 4);
  const PathClass c = classify_path(d, p);
  EXPECT_EQ(c.verdict, PathVerdict::Good);
  EXPECT_EQ(c.chi_sequence.size(), 3u);
  EXPECT_TRUE(c.simple);
}

TEST(ClassifyPath, SingleEdgeIsGood) {
  const Drawing d = cycle_drawing(5);
  const PathClass c = classify_path(d, {{2, true}});
  EXPECT_EQ(c.verdict, PathVerdict::Good);
  EXPECT_TRUE(c.chi_sequence.empty());
}

TEST(ClassifyPath, FrozenBadThreePath) {
  const Drawing d = bad_three_path();
  ASSERT_TRUE(verify_thrackle(d).is_thrackle);
  const PathClass c = classify_path(d, {{0, true}, {1, true}, {2, true}});
  EXPECT_EQ(c.verdict, PathVerdict::Bad);
  EXPECT_EQ(c.chi_sequence, (std::vector<int>{1, -1}));
  // The middle edge of a bad 3-path is short.
  EXPECT_EQ(d.arc(1).length_class(), LengthClass::Short);
}

TEST(ClassifyPath, ReversalKeepsVerdict) {
  const Drawing bad = bad_three_path();
  const DirectedPath p = {{0, true}, {1, true}, {2, true}};
  EXPECT_EQ(classify_path(bad, reversed(p)).verdict, PathVerdict::Bad);
  const Drawing good = cycle_drawing(9);
  const DirectedPath walk = cycle_walk(good.graph());
  const DirectedPath q(walk.begin() + 2, walk.begin() + 8);
  EXPECT_EQ(classify_path(good, reversed(q)).verdict, PathVerdict::Good);
}

TEST(ClassifyPath, RejectsBrokenWalk) {
  const Drawing d = cycle_drawing(5);
  try {
    classify_path(d, {{0, true}, {2, true}});
    FAIL() << "expected NotAPath";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAPath);
  }
}

TEST(ClassifyCycle, ConstructionsAreGood) {
  for (int n : {5, 6, 7, 8}) {
    const Drawing d = cycle_drawing(n);
    const DirectedPath walk = cycle_walk(d.graph());
    const PathClass c = classify_cycle(d, walk);
    EXPECT_EQ(c.verdict, PathVerdict::Good) << n;
    EXPECT_EQ(c.chi_sequence.size(), static_cast<std::size_t>(n));
    EXPECT_EQ(classify_cycle(d, reversed(walk)).verdict, PathVerdict::Good);
  }
}

TEST(ClassifyCycle, BadTriangle) {
  const Drawing d = bad_triangle();
  ASSERT_TRUE(verify_thrackle(d).is_thrackle);
  EXPECT_EQ(classify_cycle(d, cycle_walk(d.graph())).verdict, PathVerdict::Bad);
}

TEST(StartingSide, TangentAgainstPole) {
  const Drawing d = star_at_vertex(20, -20);
  // Edge 0 runs east along the equator, so its pole is +z for the u -> v arc.
  EXPECT_EQ(starting_side(d, 0, 1, 0), 1);
  EXPECT_EQ(starting_side(d, 0, 2, 0), -1);
}

TEST(SeparatesAt, WitnessWhenOppositeSides) {
  const Drawing d = star_at_vertex(20, -20);
  ASSERT_TRUE(verify_thrackle(d).is_thrackle);
  const auto w = separates_at(d, 0, 0);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->e, 0);
  EXPECT_EQ(w->v, 0);
  EXPECT_NE(w->f, w->g);
  EXPECT_EQ(starting_side(d, 0, w->f, 0), 1);
  EXPECT_EQ(starting_side(d, 0, w->g, 0), -1);
}

TEST(SeparatesAt, AbsentWhenSameSide) {
  const Drawing d = star_at_vertex(20, 40);
  EXPECT_FALSE(separates_at(d, 0, 0).has_value());
}

TEST(SeparatesAt, AbsentAtDegreeTwo) {
  const Drawing d = cycle_drawing(5);
  EXPECT_FALSE(separates_at(d, 0, d.graph().edge(0).u).has_value());
}

TEST(FindBadTriangles, NoneInLongOddCycles) {
  for (int n : {5, 7, 9}) {
    const TriangleScan s = find_bad_triangles(cycle_drawing(n));
    EXPECT_TRUE(s.bad.empty());
    EXPECT_EQ(s.triangle_count, 0);
  }
}

TEST(FindBadTriangles, UniqueLongEdge) {
  const TriangleScan s = find_bad_triangles(bad_triangle());
  EXPECT_EQ(s.triangle_count, 1);
  EXPECT_FALSE(s.multiple_triangles);
  ASSERT_EQ(s.bad.size(), 1u);
  const BadTriangle& t = s.bad.front();
  EXPECT_EQ(t.long_edge_count, 1);
  EXPECT_EQ(t.long_edge, 1);
  EXPECT_TRUE(t.long_edge_vertices_agree);
}

TEST(FindBadTriangles, SmallCapTriangleIsGood) {
  const AbstractGraph g(3, {{0, 1}, {1, 2}, {2, 0}});
  const Drawing d = Drawing::from_classes(g, {lonlat(0, 30), lonlat(-20, 0), lonlat(20, 0)},
                                          {LengthClass::Short, LengthClass::Short, LengthClass::Short});
  const TriangleScan s = find_bad_triangles(d);
  EXPECT_EQ(s.triangle_count, 1);
  EXPECT_TRUE(s.bad.empty());
}

TEST(FindBadTriangles, RotatedBadTrianglesKeepUniqueLongEdge) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const TriangleScan s = find_bad_triangles(bad_triangle().rotated(testing::random_rotation(rng)));
    ASSERT_EQ(s.bad.size(), 1u);
    EXPECT_EQ(s.bad.front().long_edge_count, 1);
  }
}

TEST(FindBadTriangles, RequiresCertifiedDrawing) {
  const AbstractGraph g(4, {{0, 1}, {2, 3}});
  const Drawing d = Drawing::from_classes(g, {lonlat(0, 10), lonlat(20, 10), lonlat(0, 40), lonlat(20, 40)},
                                          {LengthClass::Short, LengthClass::Short});
  EXPECT_THROW(find_bad_triangles(d), Error);
}

}  // namespace
}  // namespace thrackle
