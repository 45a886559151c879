#pragma once

// Generators: odd cycles from planar star polygons lifted onto a spherical
// cap, the three-fold symmetric 6-cycle, even cycles by edge insertion, and
// the edge and vertex splits used as instrumentation by the lemma checks.

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "thrackle/drawing.hpp"

namespace thrackle {

struct PlanarDrawing {
  AbstractGraph graph;
  std::vector<Eigen::Vector2d> points;
};

enum class PlanarPairKind { SharedEndpoint, ProperCrossing, Disjoint, Degenerate };

// Exact-predicate classification of two straight segments.
PlanarPairKind planar_pair_kind(const PlanarDrawing& p, EdgeId e, EdgeId f);

// Every pair of edges meets exactly once: adjacent pairs only at their shared
// endpoint, other pairs at a proper crossing.
bool is_straight_line_thrackle(const PlanarDrawing& p);

// Regular star polygon {n / ((n-1)/2)}. Throws EvenCycleRequested for even n
// and InvalidArgument for n < 3.
PlanarDrawing star_polygon_thrackle(int n);

// Central projection into the cap of the given half angle around +z. Throws
// CapTooLarge if the lifted drawing does not verify.
Drawing gnomonic_lift(const PlanarDrawing& p, double cap_half_angle, const ToleranceConfig& tol = {});

// Frozen three-fold symmetric drawing of the 6-cycle (three long edges on
// circles related by 120 degree rotations about the z axis).
Drawing six_cycle_drawing();

struct InsertionConfig {
  int restarts = 200;
  int steps_per_restart = 4000;
  double margin = 1e-3;
  std::uint64_t seed = 1;
  int polish_iterations = 400;
  ToleranceConfig tol;
};

// Replaces target edge uv of a certified even cycle (length >= 6) by a path
// u-a-b-v. New vertices get ids n and n+1; the edge (u,a) takes the target's
// id and (a,b), (b,v) are appended. Throws PreconditionViolation /
// NotCertified / InsertionFailed.
Drawing insert_edge_pair(const Drawing& d, EdgeId target, const InsertionConfig& cfg = {});

// six_cycle_drawing followed by (n - 6) / 2 insertions. n even, n >= 6.
Drawing even_cycle_drawing(int n, const InsertionConfig& cfg = {});

// Odd n >= 3: lifted star polygon; even n >= 6: even_cycle_drawing. Other
// lengths throw PreconditionViolation.
Drawing cycle_drawing(int n, const ToleranceConfig& tol = {});

// Replaces short edge e = uv by e' = (u, v') in place and appends
// e'' = (v, u'), where u' and v' are new degree-one vertices just beyond u
// and v. Throws PreconditionViolation for a long edge, NotCertified, or
// SplitFailed.
Drawing split_edge(const Drawing& d, EdgeId e, const ToleranceConfig& tol = {});

struct VertexSplit {
  Drawing drawing;
  VertexId new_vertex = -1;
  std::vector<EdgeId> moved_edges;  // edges now ending at new_vertex
  int preserved_crossings = 0;      // moved/non-incident pairs with unchanged event count
  int new_crossings = 0;            // moved/stayed pairs that now cross properly
};

// v must have degree 4 and separate the graph into two parts with two of its
// neighbours each (a figure-8 at v). Adds a vertex near v carrying one edge
// from each part. Throws PreconditionViolation or SplitFailed.
VertexSplit split_vertex(const Drawing& d, VertexId v, const ToleranceConfig& tol = {});

}  // namespace thrackle
