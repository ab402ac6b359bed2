#pragma once

#include "ks8/ks_set.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace ks8 {

struct SeedSearchOptions {
  // Basis indices eligible for selection; empty means all catalog bases.
  std::vector<int> allowed_bases;
  int subset_size = 15;
  int workers = 1;
};

// All `size`-subsets (as positions into `masks`, ascending) whose masks XOR
// to zero, i.e. every ray is covered an even number of times. Output is
// sorted lexicographically and does not depend on `workers`.
std::vector<std::vector<int>> even_cover_subsets(std::span<const std::uint64_t> masks, int size,
                                                 int workers = 1);

// Every subset of the allowed bases with an even occurrence count for each
// ray. Each result must have 5 pure and 10 hybrid bases, use all 40 rays, and
// profile "20_2 20_4 - 15_8"; a violation throws std::logic_error.
std::vector<KSSet> find_seed_sets(const Catalog& catalog, const SeedSearchOptions& opts = {});

// Seeds for the embedded catalog, computed once.
const std::vector<KSSet>& kp_seed_sets();

struct GammaSet {
  int pure_index = 0;
  std::array<int, 4> gamma{};     // rays of the pure basis occurring 4 times
  std::array<int, 4> not_gamma{}; // the remaining 4 rays (occurring twice)
};

// One GammaSet per pure basis of the seed, ordered by pure basis index.
// Throws std::invalid_argument unless every pure basis splits 4/4.
std::vector<GammaSet> gammas(const KSSet& seed);

} // namespace ks8
