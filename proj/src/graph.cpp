#include "thrackle/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "thrackle/errors.hpp"

namespace thrackle {

AbstractGraph::AbstractGraph(int vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  if (n_ < 0) throw Error(ErrorCode::InvalidArgument, "negative vertex count");
  incident_.assign(static_cast<std::size_t>(n_), {});
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) {
      throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    }
    if (e.u == e.v) throw Error(ErrorCode::InvalidArgument, "loops are not allowed");
    if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate edge");
    }
    incident_[static_cast<std::size_t>(e.u)].push_back(static_cast<EdgeId>(i));
    incident_[static_cast<std::size_t>(e.v)].push_back(static_cast<EdgeId>(i));
  }
}

int AbstractGraph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

int AbstractGraph::min_degree() const {
  if (n_ == 0) return 0;
  int d = degree(0);
  for (int v = 1; v < n_; ++v) d = std::min(d, degree(v));
  return d;
}

std::optional<EdgeId> AbstractGraph::edge_between(VertexId a, VertexId b) const {
  for (EdgeId e : incident_edges(a)) {
    if (edge(e).other(a) == b) return e;
  }
  return std::nullopt;
}

std::optional<VertexId> AbstractGraph::common_vertex(EdgeId e, EdgeId f) const {
  if (e == f) return std::nullopt;
  const Edge& a = edge(e);
  const Edge& b = edge(f);
  if (b.incident_to(a.u)) return a.u;
  if (b.incident_to(a.v)) return a.v;
  return std::nullopt;
}

bool AbstractGraph::adjacent_edges(EdgeId e, EdgeId f) const { return common_vertex(e, f).has_value(); }

bool AbstractGraph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : incident_edges(v)) {
      const VertexId w = edge(e).other(v);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n_;
}

bool AbstractGraph::has_terminal_edge() const {
  for (int v = 0; v < n_; ++v) {
    if (degree(v) == 1) return true;
  }
  return false;
}

std::vector<std::vector<DirectedEdge>> AbstractGraph::simple_cycles(std::size_t max_cycles) const {
  std::vector<std::vector<DirectedEdge>> out;
  std::vector<char> on_path(static_cast<std::size_t>(n_), 0);
  std::vector<DirectedEdge> walk;

  for (VertexId s = 0; s < n_ && out.size() < max_cycles; ++s) {
    std::function<void(VertexId)> dfs = [&](VertexId v) {
      if (out.size() >= max_cycles) return;
      for (EdgeId e : incident_edges(v)) {
        const VertexId w = edge(e).other(v);
        const DirectedEdge step{e, edge(e).u == v};
        if (w == s && walk.size() >= 2) {
          // Each cycle appears in both directions; keep the one whose second
          // vertex is smaller than its last.
          const VertexId second = head(walk.front());
          if (second < v) {
            walk.push_back(step);
            out.push_back(walk);
            walk.pop_back();
          }
          continue;
        }
        if (w <= s || on_path[static_cast<std::size_t>(w)]) continue;
        on_path[static_cast<std::size_t>(w)] = 1;
        walk.push_back(step);
        dfs(w);
        walk.pop_back();
        on_path[static_cast<std::size_t>(w)] = 0;
      }
    };
    on_path[static_cast<std::size_t>(s)] = 1;
    dfs(s);
    on_path[static_cast<std::size_t>(s)] = 0;
  }
  return out;
}

std::vector<std::vector<DirectedEdge>> AbstractGraph::simple_paths(int min_edges, int max_edges) const {
  std::vector<std::vector<DirectedEdge>> out;
  std::vector<char> on_path(static_cast<std::size_t>(n_), 0);
  std::vector<DirectedEdge> walk;
  std::function<void(VertexId)> dfs = [&](VertexId v) {
    const int len = static_cast<int>(walk.size());
    if (len >= min_edges && len >= 1) out.push_back(walk);
    if (len >= max_edges) return;
    for (EdgeId e : incident_edges(v)) {
      const VertexId w = edge(e).other(v);
      if (on_path[static_cast<std::size_t>(w)]) continue;
      on_path[static_cast<std::size_t>(w)] = 1;
      walk.push_back({e, edge(e).u == v});
      dfs(w);
      walk.pop_back();
      on_path[static_cast<std::size_t>(w)] = 0;
    }
  };
  for (VertexId s = 0; s < n_; ++s) {
    on_path[static_cast<std::size_t>(s)] = 1;
    dfs(s);
    on_path[static_cast<std::size_t>(s)] = 0;
  }
  return out;
}

std::vector<VertexId> AbstractGraph::walk_vertices(const std::vector<DirectedEdge>& walk) const {
  std::vector<VertexId> vs;
  if (walk.empty()) return vs;
  vs.push_back(tail(walk.front()));
  for (const DirectedEdge& d : walk) vs.push_back(head(d));
  return vs;
}

std::vector<DirectedEdge> AbstractGraph::walk_from_vertices(const std::vector<VertexId>& vertices) const {
  std::vector<DirectedEdge> walk;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const VertexId a = vertices[i - 1];
    const VertexId b = vertices[i];
    if (a < 0 || b < 0 || a >= n_ || b >= n_) throw Error(ErrorCode::NotAPath, "vertex out of range");
    const auto e = edge_between(a, b);
    if (!e) {
      std::ostringstream os;
      os << "no edge between " << a << " and " << b;
      throw Error(ErrorCode::NotAPath, os.str());
    }
    walk.push_back({*e, edge(*e).u == a});
  }
  return walk;
}

AbstractGraph AbstractGraph::cycle(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n});
  return AbstractGraph(n, std::move(es));
}

AbstractGraph AbstractGraph::path(int edges) {
  std::vector<Edge> es;
  for (int i = 0; i < edges; ++i) es.push_back({i, i + 1});
  return AbstractGraph(edges + 1, std::move(es));
}

std::string describe(const AbstractGraph& g) {
  std::ostringstream os;
  os << "n=" << g.vertex_count() << " m=" << g.edge_count() << " edges=[";
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (i) os << ' ';
    os << g.edges()[i].u << '-' << g.edges()[i].v;
  }
  os << ']';
  return os.str();
}

}  // namespace thrackle
