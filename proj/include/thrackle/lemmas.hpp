#pragma once

// Executable checks of the structural statements about spherical thrackles.
// Each check reports Pass, Fail (with a witness) or NotApplicable when the
// drawing contains no configuration the statement speaks about.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thrackle/classify.hpp"

namespace thrackle {

enum class LemmaId {
  CycleGood,   // L-CYCLE-GOOD
  EvenLong,    // L-EVEN-LONG
  SepShort,    // L-SEP-SHORT
  Hemi,        // L-HEMI
  Deg4,        // L-DEG4
  LongA,       // L-LONG-A
  LongB,       // L-LONG-B
  LongC,       // L-LONG-C
  LongD,       // L-LONG-D
  LongE,       // L-LONG-E
  Gpl,         // L-GPL
  Gcy,         // L-GCY
  TouchEven,   // L-TOUCH-EVEN
};

const std::vector<LemmaId>& all_lemma_ids();
std::string_view to_string(LemmaId id);
// Throws UnknownLemmaId.
LemmaId parse_lemma_id(std::string_view s);

enum class LemmaVerdict { Pass, Fail, NotApplicable };

std::string_view to_string(LemmaVerdict v);

struct LemmaWitness {
  std::string description;
  std::vector<EdgeId> edges;
  std::vector<VertexId> vertices;
  std::vector<int> signs;
};

struct LemmaReport {
  LemmaId id = LemmaId::CycleGood;
  LemmaVerdict verdict = LemmaVerdict::NotApplicable;
  long configurations = 0;  // number of configurations the statement was checked on
  std::optional<LemmaWitness> witness;
  std::string note;
};

// Both throw NotCertified unless d verifies at tol.
LemmaReport check_lemma(const Drawing& d, LemmaId id, const ToleranceConfig& tol = {});
std::vector<LemmaReport> check_all(const Drawing& d, const ToleranceConfig& tol = {});

}  // namespace thrackle
