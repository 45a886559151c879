#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thrackle/errors.hpp"

namespace thrackle {

using VertexId = int;
using EdgeId = int;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  bool incident_to(VertexId w) const { return u == w || v == w; }
  VertexId other(VertexId w) const { return w == u ? v : u; }
};

// An edge of a walk together with the direction it is traversed in.
struct DirectedEdge {
  EdgeId edge = 0;
  bool forward = true;  // true: traversed u -> v as stored
};

// Simple undirected graph. Edge ids are positions in edges().
class AbstractGraph {
 public:
  AbstractGraph() = default;
  // Throws InvalidArgument on loops, duplicate edges or out-of-range ends.
  AbstractGraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }

  int degree(VertexId v) const { return static_cast<int>(incident_.at(static_cast<std::size_t>(v)).size()); }
  int max_degree() const;
  int min_degree() const;
  const std::vector<EdgeId>& incident_edges(VertexId v) const {
    return incident_.at(static_cast<std::size_t>(v));
  }
  std::optional<EdgeId> edge_between(VertexId a, VertexId b) const;
  bool adjacent_edges(EdgeId e, EdgeId f) const;
  std::optional<VertexId> common_vertex(EdgeId e, EdgeId f) const;

  bool is_connected() const;
  bool has_terminal_edge() const;

  // Every simple cycle, each reported once as a closed walk starting at its
  // smallest vertex. Intended for small graphs.
  std::vector<std::vector<DirectedEdge>> simple_cycles(std::size_t max_cycles = 100000) const;

  // Every simple directed path (distinct vertices) with between min_edges and
  // max_edges edges, in both directions.
  std::vector<std::vector<DirectedEdge>> simple_paths(int min_edges, int max_edges) const;

  // Vertex sequence of a walk: start of the first edge, then each head.
  std::vector<VertexId> walk_vertices(const std::vector<DirectedEdge>& walk) const;
  VertexId tail(const DirectedEdge& d) const { return d.forward ? edge(d.edge).u : edge(d.edge).v; }
  VertexId head(const DirectedEdge& d) const { return d.forward ? edge(d.edge).v : edge(d.edge).u; }

  // Walk following vertex sequence v0 v1 ... vk; throws NotAPath if some
  // consecutive pair is not an edge.
  std::vector<DirectedEdge> walk_from_vertices(const std::vector<VertexId>& vertices) const;

  static AbstractGraph cycle(int n);
  static AbstractGraph path(int edges);

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

std::string describe(const AbstractGraph& g);

}  // namespace thrackle
