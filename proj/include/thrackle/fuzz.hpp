#pragma once

// Seeded campaign over a corpus of certified drawings: constructions, their
// sub-paths and edge splits, search-found cycles and paths, and random
// rotations and perturbations of all of these. Every drawing is run through
// the full lemma suite and the sign contracts.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "thrackle/lemmas.hpp"

namespace thrackle {

struct FuzzConfig {
  long count = 10000;
  std::uint64_t seed = 1;
  bool include_search = true;
  ToleranceConfig tol;
};

struct LemmaTally {
  long pass = 0;
  long fail = 0;
  long not_applicable = 0;
  long configurations = 0;
};

struct FuzzFailure {
  std::string source;
  LemmaReport report;
  Drawing drawing;
};

struct FuzzStats {
  long drawings = 0;
  long rejected = 0;  // perturbed candidates that did not certify
  std::map<std::string, long> by_source;
  std::array<LemmaTally, 13> lemmas{};  // indexed like all_lemma_ids()
  long chi_events = 0;
  long chi_antisymmetry_violations = 0;
  long parity_configurations = 0;  // L-LONG-E configurations
  long parity_violations = 0;
  long n_ge_m_checks = 0;
  long n_ge_m_violations = 0;
  std::vector<FuzzFailure> failures;

  bool critical() const;
};

// Called with each certified drawing and its source label before it is
// checked.
using DrawingSink = std::function<void(const Drawing&, const std::string&)>;

FuzzStats run_fuzz(const FuzzConfig& cfg, const DrawingSink& sink = {});

// Checks chi(e,f) = -chi(f,e) on every meeting point of every pair; returns
// {events checked, violations}.
std::pair<long, long> chi_antisymmetry(const Drawing& d, const ToleranceConfig& tol = {});

}  // namespace thrackle
