#pragma once

#include "ks8/ks_set.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ks8 {

struct StructureReport {
  bool ok = true;
  std::vector<std::string> issues;
};

// Per basis: projectors pairwise orthogonal, underlying rays distinct,
// ranks summing to 8.
StructureReport check_structure(const KSSet& set);

struct ParityResult {
  bool proof = false;
  Census census;
};

// Odd number of bases with every distinct projector occurring an even
// number of times. The census is recomputed from the bases.
ParityResult has_parity_proof(const KSSet& set);

// Noncontextual 0/1 value per distinct projector.
struct Coloring {
  std::map<CanonicalSubspace, bool> value;
};

// Exactly one projector valued 1 in every basis.
bool satisfies(const Coloring& coloring, const KSSet& set);

// Exhaustive backtracking search for a coloring; nullopt means none exists.
std::optional<Coloring> is_colorable(const KSSet& set);

} // namespace ks8

namespace ks8 {

// Matching census of one Gamma set, attached to reports on seed sets.
struct GammaMatchingCount {
  int step_index = 0;
  int pure_index = 0;
  int matchings = 0;
  int r3_compatible = 0;
};

struct VerificationReport {
  bool structure_ok = false;
  std::vector<std::string> structure_issues;
  bool parity_proof = false;
  int basis_count = 0;
  std::string profile;
  // occurrence count -> number of distinct projectors with that count
  std::map<int, int> census_histogram;
  bool colorable = false;
  std::optional<Coloring> witness;
  std::vector<GammaMatchingCount> gamma_matchings;

  // A KS set: sound structure and no noncontextual coloring.
  bool is_ks_set() const { return structure_ok && !colorable; }
};

// Colorability is only searched on structurally sound sets.
VerificationReport verify_set(const KSSet& set);

} // namespace ks8
