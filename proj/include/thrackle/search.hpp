#pragma once

// Simulated-annealing search for spherical thrackle drawings of an abstract
// graph, and the falsification harness that runs it over graph families with
// more edges than vertices.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thrackle/drawing.hpp"

namespace thrackle {

enum class LengthFlag { Free, Long, Short };

struct EmbeddingProblem {
  AbstractGraph graph;
  // Empty, or one flag per edge. Free edges may flip between long and short.
  std::vector<LengthFlag> length_flags;
  // Optional starting drawing; restart 0 starts from it exactly, later
  // restarts keep its non-movable vertices.
  std::optional<Drawing> warm_start;
  // Empty (all movable) or one entry per vertex.
  std::vector<bool> movable;
};

struct SearchConfig {
  int restarts = 32;
  int steps_per_restart = 20000;
  double initial_temperature = 0.05;
  double final_temperature = 1e-5;
  double initial_step = 0.5;   // radians, largest vertex move at the start
  double final_step = 2e-3;    // radians, at the end of a restart
  std::uint64_t rng_seed = 1;
  double margin = 1e-6;        // certification margin (eps_event used for the final check)
  double flag_flip_probability = 0.05;
  int threads = 0;             // 0: hardware concurrency
  ToleranceConfig tol;

  void validate() const;
};

enum class SearchStatus { Certified, Exhausted };

std::string_view to_string(SearchStatus s);

struct SearchOutcome {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<Drawing> drawing;
  double best_energy = 0.0;
  int certified_restart = -1;
  // Lowest energy seen in each restart that was run, by restart index.
  std::vector<double> energy_trace;
};

// Nonnegative penalty that is zero exactly when the drawing verifies as a
// thrackle in general position with every band widened to `margin`.
double violation_energy(const Drawing& d, double margin, const ToleranceConfig& tol = {});

SearchOutcome search_embedding(const EmbeddingProblem& problem, const SearchConfig& cfg);

enum class FalsifyStatus { Exhausted, Certified, PreconditionViolation };

std::string_view to_string(FalsifyStatus s);

struct FalsifyEntry {
  AbstractGraph graph;
  FalsifyStatus status = FalsifyStatus::Exhausted;
  double best_energy = 0.0;
  std::string note;
  std::optional<Drawing> drawing;  // present only for Certified (a critical event)
};

struct FalsifyReport {
  std::vector<FalsifyEntry> entries;
  int restarts = 0;
  int steps_per_restart = 0;

  bool critical() const;
  bool has_precondition_violation() const;
};

// Searches every graph of the family; graphs must be connected, have no
// terminal edges and have more edges than vertices. Any Certified entry is a
// claimed counterexample and must be treated as a critical alarm.
FalsifyReport falsify(const std::vector<AbstractGraph>& family, const SearchConfig& cfg);

}  // namespace thrackle
