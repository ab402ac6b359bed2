#pragma once

#include "ks8/catalog.hpp"

#include <map>
#include <string>
#include <vector>

namespace ks8 {

struct CensusEntry {
  Projector projector;
  int count = 0;
};

// Distinct projectors (by subspace) and how many bases contain each.
using Census = std::map<CanonicalSubspace, CensusEntry>;

Census compute_census(const std::vector<Basis>& bases);

// Occurrence profile, e.g. "20_2 20_4 - 15_8": groups "n_c" of n projectors
// occurring c times, then groups "m_k" of m bases holding k projectors.
// When both ranks are present the rank-2 groups come first and the rank-1
// groups follow after " + ", e.g. "28_2 + 4_2 - 11_4 4_5".
std::string format_profile(const Census& census, const std::vector<Basis>& bases);

struct KSSet {
  std::vector<Basis> bases;
  Census census;
  std::string profile;
  int pure_count = 0;
  int hybrid_count = 0;

  friend bool operator==(const KSSet& a, const KSSet& b) { return a.bases == b.bases; }
};

KSSet make_ks_set(std::vector<Basis> bases);

// Subset of the catalog's bases, in the order given.
KSSet ks_set_from_indices(const Catalog& catalog, const std::vector<int>& basis_indices);

std::string classify_profile(const KSSet& set);

// True when the stored census and profile match a recomputation.
bool is_consistent(const KSSet& set);

std::vector<int> basis_indices(const KSSet& set);

} // namespace ks8
