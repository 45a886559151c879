#pragma once

// Combinatorial structure read off a certified drawing: crossing-orientation
// signs of directed edges, good and bad paths and cycles, separating edges
// and bad triangles.

#include <optional>
#include <string_view>
#include <vector>

#include "thrackle/drawing.hpp"

namespace thrackle {

using DirectedPath = std::vector<DirectedEdge>;

// chi of two directed edges of d at their unique meeting point. Throws
// InvalidArgument unless the pair meets exactly once.
int chi(const Drawing& d, const DirectedEdge& a, const DirectedEdge& b, const ToleranceConfig& tol = {});

enum class PathVerdict { Good, Bad };

std::string_view to_string(PathVerdict v);

struct PathClass {
  PathVerdict verdict = PathVerdict::Good;
  std::vector<int> chi_sequence;  // chi(e_{i-1}, e_i), plus the wrap-around sign for cycles
  bool simple = true;
};

// Throws NotAPath if consecutive edges do not run head to tail.
PathClass classify_path(const Drawing& d, const DirectedPath& p, const ToleranceConfig& tol = {});

// The walk must be closed (head of the last edge is the tail of the first).
PathClass classify_cycle(const Drawing& d, const DirectedPath& c, const ToleranceConfig& tol = {});

// Closed walk around a graph that is a single cycle, starting at its
// smallest vertex. Throws InvalidArgument otherwise.
DirectedPath cycle_walk(const AbstractGraph& g);

// Side of C(e) on which the edge f starts when leaving v: sign of the
// tangent of f at v against the pole of e's arc; 0 inside the eps_event band.
int starting_side(const Drawing& d, EdgeId e, EdgeId f, VertexId v, const ToleranceConfig& tol = {});

struct SeparationWitness {
  EdgeId e = -1;
  VertexId v = -1;
  EdgeId f = -1;  // starts on the positive side of C(e)
  EdgeId g = -1;  // starts on the negative side
};

std::optional<SeparationWitness> separates_at(const Drawing& d, EdgeId e, VertexId v,
                                              const ToleranceConfig& tol = {});

struct BadTriangle {
  std::vector<EdgeId> edges;          // in walk order A->B, B->C, C->A
  std::vector<VertexId> vertices;     // A, B, C
  std::vector<int> chi_at_vertices;   // at B, C, A
  int long_edge_count = 0;
  EdgeId long_edge = -1;              // set when long_edge_count == 1
  bool long_edge_vertices_agree = false;  // chi equal at both ends of the long edge
};

struct TriangleScan {
  std::vector<BadTriangle> bad;
  int triangle_count = 0;
  bool multiple_triangles = false;  // alarm: a certified thrackle has at most one 3-cycle
};

TriangleScan find_bad_triangles(const Drawing& d, const ToleranceConfig& tol = {});

}  // namespace thrackle
