#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "thrackle/sphere.hpp"

namespace thrackle {
namespace {

using testing::random_unit;

void ExpectVecNear(const UnitVector& a, const Vec3& b, double tol = 1e-12) {
  EXPECT_NEAR((a.vec() - b).norm(), 0.0, tol) << a.vec().transpose() << " vs " << b.transpose();
}

UnitVector lonlat(double lon_deg, double lat_deg) {
  const double lo = lon_deg * kPi / 180.0;
  const double la = lat_deg * kPi / 180.0;
  return UnitVector(std::cos(la) * std::cos(lo), std::cos(la) * std::sin(lo), std::sin(la));
}

TEST(ToleranceConfig, RejectsUnresolvableEventBand) {
  ToleranceConfig t;
  EXPECT_NO_THROW(t.validate());
  t.eps_event = 5 * t.eps_unit;
  EXPECT_THROW(t.validate(), Error);
  t = ToleranceConfig{};
  t.eps_circle = 0.0;
  EXPECT_THROW(t.validate(), Error);
}

TEST(CircleThrough, RightHandRule) {
  ExpectVecNear(circle_through(UnitVector(1, 0, 0), UnitVector(0, 1, 0)).pole, Vec3(0, 0, 1));
  ExpectVecNear(circle_through(UnitVector(1, 0, 0), UnitVector(0, 0, 1)).pole, Vec3(0, -1, 0));
}

TEST(CircleThrough, AntipodalPairIsDegenerate) {
  try {
    circle_through(UnitVector(1, 0, 0), UnitVector(-1, 0, 0));
    FAIL() << "expected DegenerateCircle";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateCircle);
  }
}

TEST(ArcBetween, ShortAndLongComplement) {
  const Arc s = arc_between(UnitVector(1, 0, 0), UnitVector(0, 1, 0), false);
  EXPECT_NEAR(s.angle(), kPi / 2, 1e-15);
  ExpectVecNear(s.pole(), Vec3(0, 0, 1));
  EXPECT_EQ(s.length_class(), LengthClass::Short);

  const Arc l = arc_between(UnitVector(1, 0, 0), UnitVector(0, 1, 0), true);
  EXPECT_NEAR(l.angle(), 3 * kPi / 2, 1e-15);
  ExpectVecNear(l.pole(), Vec3(0, 0, -1));
  EXPECT_EQ(l.length_class(), LengthClass::Long);

  const Arc m = arc_between(UnitVector(1, 0, 0), UnitVector(0, 0, 1), true);
  EXPECT_NEAR(m.angle(), 3 * kPi / 2, 1e-15);
  // Travelling the long way from +x reaches +z only after passing -z.
  ExpectVecNear(m.point_at(kPi / 2), Vec3(0, 0, -1));
}

TEST(ArcBetween, MediumEdgeRejected) {
  const UnitVector a(1, 0, 0);
  const UnitVector b = rotate(a, UnitVector(0, 0, 1), kPi - 1e-8);
  try {
    arc_between(a, b, false);
    FAIL() << "expected MediumEdge";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MediumEdge);
  }
}

TEST(Arc, ConstructorChecksRotationConsistency) {
  EXPECT_THROW(Arc(UnitVector(1, 0, 0), UnitVector(0, 1, 0), UnitVector(0, 0, 1), 1.0), Error);
  EXPECT_NO_THROW(Arc(UnitVector(1, 0, 0), UnitVector(0, 1, 0), UnitVector(0, 0, 1), kPi / 2));
}

TEST(PointPosition, Examples) {
  const Arc a = arc_between(UnitVector(1, 0, 0), UnitVector(0, 1, 0), false);
  EXPECT_EQ(point_position(a, UnitVector(1, 1, 0)), PointPosition::Interior);
  EXPECT_EQ(point_position(a, UnitVector(1, 0, 0)), PointPosition::StartPoint);
  EXPECT_EQ(point_position(a, UnitVector(0, 1, 0)), PointPosition::EndPoint);
  EXPECT_EQ(point_position(a, UnitVector(0, -1, 0)), PointPosition::Outside);
  EXPECT_EQ(point_position(a, UnitVector(1, 1, 0.1)), PointPosition::Outside);
}

TEST(PointPosition, EndpointsClassifyAsEndpoints) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    try {
      const Arc a = arc_between(random_unit(rng), random_unit(rng), u(rng) < 0.5);
      EXPECT_EQ(point_position(a, a.start()), PointPosition::StartPoint);
      EXPECT_EQ(point_position(a, a.end()), PointPosition::EndPoint);
    } catch (const Error&) {
    }
  }
}

TEST(ArcPairIntersections, OrthogonalArcsCrossOnce) {
  const Arc eq = arc_between(lonlat(-45, 0), lonlat(45, 0), false);
  const Arc mer = arc_between(lonlat(0, -45), lonlat(0, 45), false);
  const auto ev = arc_pair_intersections(eq, mer);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_EQ(ev[0].kind, EventKind::ProperCrossing);
  ExpectVecNear(ev[0].point, Vec3(1, 0, 0));
  EXPECT_NEAR(ev[0].on_e, kPi / 4, 1e-12);
  EXPECT_NEAR(ev[0].on_f, kPi / 4, 1e-12);
}

TEST(ArcPairIntersections, TwoLongArcsCrossTwice) {
  // Equator (pole +z) from longitude 45 degrees, 3pi/2 long; the x = 0 circle
  // (pole +x) starting 45 degrees below +y. Both cover +y and -y.
  const Arc e = Arc::from_pole(lonlat(45, 0), UnitVector(0, 0, 1), 1.5 * kPi);
  const Arc f = Arc::from_pole(UnitVector(0, std::cos(-kPi / 4), std::sin(-kPi / 4)), UnitVector(1, 0, 0),
                               1.5 * kPi);
  const auto ev = arc_pair_intersections(e, f);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_EQ(ev[0].kind, EventKind::ProperCrossing);
  EXPECT_EQ(ev[1].kind, EventKind::ProperCrossing);
  EXPECT_EQ(testing::sampled_intersections(e, f).size(), 2u);
}

TEST(ArcPairIntersections, SharedStartReportedOnce) {
  const Arc e = arc_between(UnitVector(1, 0, 0), lonlat(60, 0), false);
  const Arc f = arc_between(UnitVector(1, 0, 0), lonlat(0, 60), false);
  const auto ev = arc_pair_intersections(e, f);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_EQ(ev[0].kind, EventKind::SharedEndpoint);
  EXPECT_EQ(ev[0].on_e, 0.0);
  EXPECT_EQ(ev[0].on_f, 0.0);
}

TEST(ArcPairIntersections, VertexOnInteriorDetected) {
  const Arc e = arc_between(lonlat(-30, 0), lonlat(30, 0), false);
  const Arc f = arc_between(lonlat(0, 0), lonlat(0, 40), false);
  const auto ev = arc_pair_intersections(e, f);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_EQ(ev[0].kind, EventKind::VertexOnInterior);
}

TEST(ArcPairIntersections, CoCircularRejected) {
  const Arc e = arc_between(lonlat(0, 0), lonlat(30, 0), false);
  const Arc f = arc_between(lonlat(60, 0), lonlat(90, 0), false);
  try {
    arc_pair_intersections(e, f);
    FAIL() << "expected CoCircular";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::CoCircular);
  }
}

TEST(ArcPairIntersections, AgreesWithSamplingOracle) {
  std::mt19937_64 rng(2024);
  int crossings = 0;
  int shared = 0;
  for (int i = 0; i < 1500; ++i) {
    const auto pair = testing::random_clear_pair(rng, 0.01);
    const auto got = arc_pair_intersections(pair.e, pair.f);
    const auto want = testing::sampled_intersections(pair.e, pair.f);
    ASSERT_EQ(got.size(), want.size()) << "pair " << i;
    for (const auto& w : want) {
      const bool found = std::any_of(got.begin(), got.end(), [&](const IntersectionEvent& g) {
        return g.kind == w.kind && angular_distance(g.point, w.point) < 1e-6;
      });
      EXPECT_TRUE(found) << "pair " << i;
      crossings += w.kind == EventKind::ProperCrossing;
      shared += w.kind == EventKind::SharedEndpoint;
    }
  }
  EXPECT_GT(crossings, 300);
  EXPECT_GT(shared, 200);
}

TEST(TangentAt, Examples) {
  const Arc eq = arc_between(lonlat(-30, 0), lonlat(30, 0), false);
  ExpectVecNear(tangent_at(eq, UnitVector(1, 0, 0)), Vec3(0, 1, 0));
  const Arc mer = arc_between(lonlat(0, -30), lonlat(0, 30), false);
  ExpectVecNear(mer.pole(), Vec3(0, -1, 0));
  ExpectVecNear(tangent_at(mer, UnitVector(1, 0, 0)), Vec3(0, 0, 1));
  ExpectVecNear(tangent_at(eq.reversed(), UnitVector(1, 0, 0)), Vec3(0, -1, 0));
  EXPECT_THROW(tangent_at(eq, UnitVector(-1, 0, 0)), Error);
}

TEST(TangentAt, OrthogonalToPointAndPole) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    try {
      const Arc a = arc_between(random_unit(rng), random_unit(rng), u(rng) < 0.5);
      const UnitVector p = a.point_at(u(rng) * a.angle());
      const UnitVector t = tangent_at(a, p);
      EXPECT_NEAR(t.dot(p), 0.0, 1e-12);
      EXPECT_NEAR(t.dot(a.pole()), 0.0, 1e-12);
    } catch (const Error&) {
    }
  }
}

TEST(CrossingOrientation, EquatorEastMeridianNorth) {
  const Arc e = arc_between(lonlat(-30, 0), lonlat(30, 0), false);
  const Arc f = arc_between(lonlat(0, -30), lonlat(0, 30), false);
  const auto ev = arc_pair_intersections(e, f);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_EQ(crossing_orientation(e, f, ev[0]), 1);
  EXPECT_EQ(crossing_orientation(f, e, ev[0]), -1);
}

// A good directed 4-path drawn as a straight-line thrackle and lifted onto a
// small cap around the north pole (viewed from outside, planar orientation
// is preserved).
TEST(CrossingOrientation, DirectedFourPathSigns) {
  const std::vector<UnitVector> v = {testing::lift(-0.8, 1.8), testing::lift(-0.6, -1.6),
                                     testing::lift(1.5, 0.8), testing::lift(-1.8, 0.5),
                                     testing::lift(1.7, -0.8)};
  std::vector<Arc> e;
  for (int i = 0; i < 4; ++i) e.push_back(arc_between(v[i], v[i + 1], false));
  auto chi = [&](int a, int b) {
    const auto ev = arc_pair_intersections(e[a], e[b]);
    EXPECT_EQ(ev.size(), 1u);
    return crossing_orientation(e[a], e[b], ev.at(0));
  };
  EXPECT_EQ(chi(2, 0), 1);   // chi(e3, e1)
  EXPECT_EQ(chi(1, 3), -1);  // chi(e2, e4)
  EXPECT_EQ(chi(0, 1), 1);   // chi(e1, e2), at a shared endpoint
  EXPECT_EQ(chi(1, 2), 1);
  EXPECT_EQ(chi(2, 3), 1);
}

TEST(CrossingOrientation, ExactAntisymmetryAndCandidateSign) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 3000; ++i) {
    const auto pair = testing::random_clear_pair(rng, 1e-3);
    const auto ef = arc_pair_intersections(pair.e, pair.f);
    const auto fe = arc_pair_intersections(pair.f, pair.e);
    ASSERT_EQ(ef.size(), fe.size());
    for (const auto& ev : ef) {
      const int s = crossing_orientation(pair.e, pair.f, ev);
      // The same meeting point seen from the swapped pair.
      const auto it = std::find_if(fe.begin(), fe.end(), [&](const IntersectionEvent& o) {
        return angular_distance(o.point, ev.point) < 1e-9;
      });
      ASSERT_NE(it, fe.end());
      EXPECT_EQ(crossing_orientation(pair.f, pair.e, *it), -s);
      // chi(e, f) = +1 exactly at the point along pole_e x pole_f.
      const double side = ev.point.vec().dot(pair.e.pole().vec().cross(pair.f.pole().vec()));
      EXPECT_EQ(s, side > 0 ? 1 : -1);
    }
  }
}

TEST(CrossingOrientation, ParallelTangentsAreDegenerate) {
  const Arc e = arc_between(lonlat(0, 0), lonlat(30, 0), false);
  const Arc f = arc_between(lonlat(30, 0), lonlat(60, 0), false);
  IntersectionEvent at{e.end(), EventKind::SharedEndpoint, e.angle(), 0.0};
  EXPECT_THROW(crossing_orientation(e, f, at), Error);
}

TEST(HemisphereSide, Examples) {
  const GreatCircle c{UnitVector(0, 0, 1)};
  EXPECT_EQ(hemisphere_side(c, UnitVector(0, 0, 1)), 1);
  EXPECT_EQ(hemisphere_side(c, UnitVector(1, 0, 0)), 0);
  EXPECT_EQ(hemisphere_side(c, UnitVector(0, 0, -1)), -1);
  EXPECT_EQ(hemisphere_side(c, UnitVector(1, 0, 1e-9)), 0);
}

TEST(ArcBetween, ComplementaryAnglesSumToTwoPi) {
  std::mt19937_64 rng(5);
  const ToleranceConfig tol;
  for (int i = 0; i < 5000; ++i) {
    const UnitVector a = random_unit(rng);
    const UnitVector b = random_unit(rng);
    try {
      const double sum = arc_between(a, b, false).angle() + arc_between(a, b, true).angle();
      EXPECT_NEAR(sum, kTwoPi, 4 * tol.eps_unit);
    } catch (const Error&) {
    }
  }
}

TEST(Perturb, ZeroMarginIsIdentity) {
  std::mt19937_64 rng(3);
  std::vector<UnitVector> pts;
  for (int i = 0; i < 10; ++i) pts.push_back(random_unit(rng));
  const auto out = perturb_to_general_position(pts, 42, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(out[i].vec(), pts[i].vec());
}

TEST(Perturb, DeterministicAndBounded) {
  std::mt19937_64 rng(3);
  std::vector<UnitVector> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(random_unit(rng));
  const double margin = 2e-7;
  const auto a = perturb_to_general_position(pts, 42, margin);
  const auto b = perturb_to_general_position(pts, 42, margin);
  const auto c = perturb_to_general_position(pts, 43, margin);
  bool differs = false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(a[i].vec(), b[i].vec());
    EXPECT_LE(angular_distance(a[i], pts[i]), margin * (1 + 1e-9));
    differs |= a[i].vec() != c[i].vec();
  }
  EXPECT_TRUE(differs);
  EXPECT_THROW(perturb_to_general_position(pts, 1, 1e-6), Error);
}

TEST(Perturb, BreaksCoCircularity) {
  ToleranceConfig tol;
  tol.eps_event = 1e-5;
  const std::vector<UnitVector> pts = {lonlat(0, 0), lonlat(30, 0), lonlat(60, 0), lonlat(90, 0)};
  EXPECT_THROW(arc_pair_intersections(arc_between(pts[0], pts[1], false), arc_between(pts[2], pts[3], false), tol),
               Error);
  const auto moved = perturb_to_general_position(pts, 17, 1e-6, tol);
  EXPECT_NO_THROW(
      arc_pair_intersections(arc_between(moved[0], moved[1], false), arc_between(moved[2], moved[3], false), tol));
}

}  // namespace
}  // namespace thrackle
