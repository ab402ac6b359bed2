#include "ks8/verifier.hpp"

#include <algorithm>
#include <cstdint>

namespace ks8 {

StructureReport check_structure(const KSSet& set) {
  StructureReport rep;
  for (const auto& b : set.bases) {
    const std::string tag = "basis " + std::to_string(b.index) + ": ";
    auto add = [&](std::string msg) {
      rep.ok = false;
      rep.issues.push_back(tag + msg);
    };
    auto ids = b.ray_set();
    auto dup = std::adjacent_find(ids.begin(), ids.end());
    if (dup != ids.end()) add("ray " + std::to_string(*dup) + " used by more than one projector");
    for (std::size_t i = 0; i < b.projectors.size(); ++i)
      for (std::size_t j = i + 1; j < b.projectors.size(); ++j)
        for (const auto& x : b.projectors[i].rays())
          for (const auto& y : b.projectors[j].rays())
            if (dot(x, y) != 0 && !(x == y))
              add("projectors " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                  " are not orthogonal");
    if (b.total_rank() != kDim)
      add("ranks sum to " + std::to_string(b.total_rank()) + ", not 8");
  }
  return rep;
}

ParityResult has_parity_proof(const KSSet& set) {
  ParityResult res;
  res.census = compute_census(set.bases);
  res.proof = set.bases.size() % 2 == 1 &&
              std::all_of(res.census.begin(), res.census.end(),
                          [](const auto& kv) { return kv.second.count % 2 == 0; });
  return res;
}

bool satisfies(const Coloring& coloring, const KSSet& set) {
  for (const auto& b : set.bases) {
    int ones = 0;
    for (const auto& p : b.projectors) {
      auto it = coloring.value.find(p.subspace());
      if (it == coloring.value.end()) return false;
      ones += it->second ? 1 : 0;
    }
    if (ones != 1) return false;
  }
  return true;
}

namespace {

enum : std::int8_t { kFree = -1, kZero = 0, kOne = 1 };

class ColoringSearch {
public:
  explicit ColoringSearch(const KSSet& set) {
    std::map<CanonicalSubspace, int> id;
    for (const auto& b : set.bases) {
      std::vector<int> members;
      for (const auto& p : b.projectors) {
        auto [it, inserted] = id.try_emplace(p.subspace(), static_cast<int>(keys_.size()));
        if (inserted) keys_.push_back(p.subspace());
        members.push_back(it->second);
      }
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      bases_.push_back(std::move(members));
    }
    containing_.resize(keys_.size());
    for (int k = 0; k < static_cast<int>(bases_.size()); ++k)
      for (int p : bases_[k]) containing_[p].push_back(k);
  }

  std::optional<Coloring> run() {
    std::vector<std::int8_t> value(keys_.size(), kFree);
    for (int k = 0; k < static_cast<int>(bases_.size()); ++k)
      if (!settle(k, value)) return std::nullopt;
    if (!search(value)) return std::nullopt;
    Coloring c;
    for (std::size_t p = 0; p < keys_.size(); ++p) c.value[keys_[p]] = value[p] == kOne;
    return c;
  }

private:
  // Propagates the exactly-one constraint of basis k. Returns false on conflict.
  bool settle(int k, std::vector<std::int8_t>& value) {
    std::vector<int> pending{k};
    while (!pending.empty()) {
      const int cur = pending.back();
      pending.pop_back();
      int ones = 0, free = 0, last_free = -1;
      for (int p : bases_[cur]) {
        if (value[p] == kOne) ++ones;
        if (value[p] == kFree) {
          ++free;
          last_free = p;
        }
      }
      if (ones > 1) return false;
      if (ones == 0 && free == 0) return false;
      if (ones == 1 && free > 0) {
        for (int p : bases_[cur])
          if (value[p] == kFree) {
            value[p] = kZero;
            for (int other : containing_[p]) pending.push_back(other);
          }
      } else if (ones == 0 && free == 1) {
        value[last_free] = kOne;
        for (int other : containing_[last_free]) pending.push_back(other);
      }
    }
    return true;
  }

  bool search(std::vector<std::int8_t>& value) {
    // open basis with the fewest free projectors
    int best = -1, best_free = 0;
    for (int k = 0; k < static_cast<int>(bases_.size()); ++k) {
      int ones = 0, free = 0;
      for (int p : bases_[k]) {
        ones += value[p] == kOne;
        free += value[p] == kFree;
      }
      if (ones == 0 && (best < 0 || free < best_free)) {
        best = k;
        best_free = free;
      }
    }
    if (best < 0) {
      // every basis has its 1; leftover free projectors can only be 0
      for (auto& v : value)
        if (v == kFree) v = kZero;
      return true;
    }
    for (int p : bases_[best]) {
      if (value[p] != kFree) continue;
      auto trial = value;
      trial[p] = kOne;
      bool ok = true;
      for (int k : containing_[p])
        if (!settle(k, trial)) {
          ok = false;
          break;
        }
      if (ok && search(trial)) {
        value = std::move(trial);
        return true;
      }
    }
    return false;
  }

  std::vector<CanonicalSubspace> keys_;
  std::vector<std::vector<int>> bases_;
  std::vector<std::vector<int>> containing_;
};

} // namespace

std::optional<Coloring> is_colorable(const KSSet& set) { return ColoringSearch(set).run(); }

} // namespace ks8

namespace ks8 {

VerificationReport verify_set(const KSSet& set) {
  VerificationReport rep;
  const auto structure = check_structure(set);
  rep.structure_ok = structure.ok;
  rep.structure_issues = structure.issues;
  rep.basis_count = static_cast<int>(set.bases.size());
  const auto parity = has_parity_proof(set);
  rep.parity_proof = structure.ok && parity.proof;
  rep.profile = classify_profile(set);
  for (const auto& [key, e] : parity.census) ++rep.census_histogram[e.count];
  if (structure.ok) {
    rep.witness = is_colorable(set);
    rep.colorable = rep.witness.has_value();
  }
  return rep;
}

} // namespace ks8
