#include "ks8/ks_set.hpp"

namespace ks8 {

namespace {

std::string format_groups(const std::map<int, int>& groups) {
  std::string out;
  for (const auto& [per, n] : groups) {
    if (!out.empty()) out += ' ';
    out += std::to_string(n) + "_" + std::to_string(per);
  }
  return out;
}

} // namespace

Census compute_census(const std::vector<Basis>& bases) {
  Census census;
  for (const auto& b : bases)
    for (const auto& p : b.projectors) {
      auto [it, inserted] = census.try_emplace(p.subspace(), CensusEntry{p, 0});
      ++it->second.count;
    }
  return census;
}

std::string format_profile(const Census& census, const std::vector<Basis>& bases) {
  std::map<int, int> rank1, rank2, per_basis;
  for (const auto& [key, entry] : census)
    ++(entry.projector.rank() == 1 ? rank1 : rank2)[entry.count];
  for (const auto& b : bases) ++per_basis[static_cast<int>(b.projectors.size())];

  std::string head;
  if (rank1.empty() || rank2.empty())
    head = format_groups(rank1.empty() ? rank2 : rank1);
  else
    head = format_groups(rank2) + " + " + format_groups(rank1);
  return head + " - " + format_groups(per_basis);
}

KSSet make_ks_set(std::vector<Basis> bases) {
  KSSet s;
  s.bases = std::move(bases);
  s.census = compute_census(s.bases);
  s.profile = format_profile(s.census, s.bases);
  for (const auto& b : s.bases) ++(b.kind == BasisKind::Pure ? s.pure_count : s.hybrid_count);
  return s;
}

KSSet ks_set_from_indices(const Catalog& catalog, const std::vector<int>& basis_indices) {
  std::vector<Basis> bases;
  for (int k : basis_indices) bases.push_back(catalog.basis(k));
  return make_ks_set(std::move(bases));
}

std::string classify_profile(const KSSet& set) {
  return format_profile(compute_census(set.bases), set.bases);
}

bool is_consistent(const KSSet& set) {
  const auto census = compute_census(set.bases);
  if (census.size() != set.census.size()) return false;
  for (auto a = census.begin(), b = set.census.begin(); a != census.end(); ++a, ++b)
    if (a->first != b->first || a->second.count != b->second.count) return false;
  return set.profile == format_profile(census, set.bases);
}

std::vector<int> basis_indices(const KSSet& set) {
  std::vector<int> out;
  for (const auto& b : set.bases) out.push_back(b.index);
  return out;
}

} // namespace ks8
