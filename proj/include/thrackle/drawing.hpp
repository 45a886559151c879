#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "thrackle/graph.hpp"
#include "thrackle/sphere.hpp"

namespace thrackle {

// A graph drawn on the unit sphere: one position per vertex and one great
// circle arc per edge. Each arc runs between the positions of its edge's
// endpoints in one of the two directions; which one is recorded per edge.
class Drawing {
 public:
  Drawing() = default;
  // Throws MalformedDrawing if sizes disagree or an arc's endpoints do not
  // match the positions of its edge's endpoints within eps_unit.
  Drawing(AbstractGraph graph, std::vector<UnitVector> positions, std::vector<Arc> arcs,
          const ToleranceConfig& tol = {});

  // Arc for edge uv is built from position(u) to position(v), long or short.
  static Drawing from_classes(AbstractGraph graph, std::vector<UnitVector> positions,
                              const std::vector<LengthClass>& classes,
                              const ToleranceConfig& tol = {});

  const AbstractGraph& graph() const { return graph_; }
  const std::vector<UnitVector>& positions() const { return positions_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const UnitVector& position(VertexId v) const { return positions_.at(static_cast<std::size_t>(v)); }
  const Arc& arc(EdgeId e) const { return arcs_.at(static_cast<std::size_t>(e)); }
  // Whether the stored arc of e starts at edge(e).u.
  bool arc_runs_forward(EdgeId e) const { return arc_forward_.at(static_cast<std::size_t>(e)); }

  // The arc of d.edge oriented from tail(d) to head(d).
  Arc directed_arc(const DirectedEdge& d) const;
  // The arc of e leaving vertex v.
  Arc arc_from(EdgeId e, VertexId v) const;

  std::vector<LengthClass> length_classes() const;

  // Applies a rotation matrix to every position and arc.
  Drawing rotated(const Eigen::Matrix3d& rotation) const;

 private:
  AbstractGraph graph_;
  std::vector<UnitVector> positions_;
  std::vector<Arc> arcs_;
  std::vector<bool> arc_forward_;
};

enum class Violation {
  ZeroCrossings,          // non-adjacent pair never meets
  ExtraEvents,            // a pair meets more than once
  AdjacentCrossing,       // adjacent pair also crosses properly
  MissingSharedEndpoint,  // adjacent pair not reported as meeting at its vertex
  AdjacentLongEdges,      // two long edges share a vertex
  CoCircular,
  MediumEdge,
  VertexOnInterior,
  Tangency,
  VertexTooClose,
  EventsTooClose,         // triple point or events unresolvable along an edge
  DegenerateOrientation,
};

std::string_view to_string(Violation v);

struct ViolationRecord {
  EdgeId e = -1;  // -1 when not applicable
  EdgeId f = -1;
  VertexId vertex = -1;
  Violation reason = Violation::ZeroCrossings;
};

struct PairRecord {
  EdgeId e = 0;
  EdgeId f = 0;
  bool adjacent = false;
  bool co_circular = false;
  std::vector<IntersectionEvent> events;
};

struct GeneralPositionReport {
  std::vector<ViolationRecord> flags;
  bool ok() const { return flags.empty(); }
};

struct VerificationReport {
  bool is_thrackle = false;
  bool is_general_position = false;
  std::vector<PairRecord> pair_table;  // every unordered pair e < f
  std::vector<ViolationRecord> violations;

  const PairRecord& pair(EdgeId e, EdgeId f) const;
};

VerificationReport verify_thrackle(const Drawing& d, const ToleranceConfig& tol = {});

GeneralPositionReport check_general_position(const Drawing& d, const ToleranceConfig& tol = {});

// Throws MediumEdge when the arc length is within eps_medium of pi.
LengthClass edge_length_class(const Drawing& d, EdgeId e, const ToleranceConfig& tol = {});

// n >= m on a certified drawing. Throws NotCertified otherwise.
bool n_ge_m_check(const Drawing& d, const ToleranceConfig& tol = {});
bool n_ge_m_check(const Drawing& d, const VerificationReport& report);

// Smallest angular slack of the drawing against every general-position
// band: vertex separation, vertex-to-arc distance, distance of crossing
// candidates from arc ends, event separation along edges, and distance of
// arc lengths from pi. A certified drawing at margin eps has clearance > eps.
double clearance(const Drawing& d, const ToleranceConfig& tol = {});

std::string summarize(const VerificationReport& r);

}  // namespace thrackle
