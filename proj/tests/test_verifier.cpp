#include "doctest.h"

#include "ks8/seeker.hpp"
#include "ks8/serialize.hpp"
#include "ks8/verifier.hpp"

#include <fstream>
#include <map>
#include <random>
#include <sstream>

using namespace ks8;

namespace {

KSSet ref_rank2() {
  std::ifstream in(KS8_GOLDEN_DIR "/ref_rank2.json");
  REQUIRE(in);
  return ks_set_from_json(json::parse(in), kp_catalog());
}

Projector proj(std::initializer_list<int> ids) {
  std::vector<Ray> rays;
  for (int r : ids) rays.push_back(kp_catalog().ray(r));
  return Projector(std::move(rays));
}

// Reference colorability: plain depth-first search over the bases in the
// given order, choosing which projector of each basis carries the 1. No
// propagation or ordering heuristics.
bool naive_colorable(const std::vector<std::vector<int>>& bases, std::size_t k,
                     std::vector<int>& value) {
  if (k == bases.size()) return true;
  int ones = 0;
  for (int p : bases[k]) ones += value[p] == 1;
  if (ones > 1) return false;
  if (ones == 1) {
    std::vector<int> changed;
    for (int p : bases[k])
      if (value[p] == -1) {
        value[p] = 0;
        changed.push_back(p);
      }
    const bool ok = naive_colorable(bases, k + 1, value);
    for (int p : changed) value[p] = -1;
    return ok;
  }
  for (int pick : bases[k]) {
    if (value[pick] == 0) continue;
    std::vector<int> changed;
    for (int p : bases[k])
      if (value[p] == -1) {
        value[p] = p == pick ? 1 : 0;
        changed.push_back(p);
      }
    if (naive_colorable(bases, k + 1, value)) return true;
    for (int p : changed) value[p] = -1;
  }
  return false;
}

bool brute_colorable(const KSSet& s) {
  std::map<CanonicalSubspace, int> id;
  std::vector<std::vector<int>> bases;
  for (const auto& b : s.bases) {
    std::vector<int> ids;
    for (const auto& p : b.projectors) ids.push_back(id.try_emplace(p.subspace(), static_cast<int>(id.size())).first->second);
    bases.push_back(ids);
  }
  std::vector<int> value(id.size(), -1);
  return naive_colorable(bases, 0, value);
}

} // namespace

TEST_CASE("structure check") {
  CHECK(check_structure(ref_rank2()).ok);
  CHECK(check_structure(kp_seed_sets().front()).ok);

  Basis reuse{1, BasisKind::Pure, {proj({1, 2}), proj({2, 3}), proj({4, 5}), proj({6, 7}), proj({8})}};
  auto rep = check_structure(make_ks_set({reuse}));
  CHECK_FALSE(rep.ok);
  REQUIRE_FALSE(rep.issues.empty());
  CHECK(rep.issues.front().find("ray 2 used by more than one projector") != std::string::npos);

  Basis short_basis{1, BasisKind::Pure, {proj({1, 2}), proj({3, 4}), proj({5, 6})}};
  rep = check_structure(make_ks_set({short_basis}));
  CHECK_FALSE(rep.ok);
  CHECK(rep.issues.back().find("ranks sum to 6") != std::string::npos);

  Basis skew{6, BasisKind::Hybrid, {proj({1}), proj({9}), proj({3, 4}), proj({5, 6}), proj({7, 8})}};
  rep = check_structure(make_ks_set({skew}));
  CHECK_FALSE(rep.ok);
  CHECK(rep.issues.front().find("not orthogonal") != std::string::npos);
}

TEST_CASE("parity proofs") {
  auto r = has_parity_proof(kp_seed_sets().front());
  CHECK(r.proof);
  CHECK(r.census.size() == 40);
  r = has_parity_proof(ref_rank2());
  CHECK(r.proof);
  CHECK(r.census.size() == 30);
  for (const auto& [k, e] : r.census) {
    CHECK(e.count == 2);
    CHECK(e.projector.rank() == 2);
  }
  CHECK_FALSE(has_parity_proof(ks_set_from_indices(kp_catalog(), {1})).proof);
}

TEST_CASE("removing any basis from a seed breaks the parity proof") {
  for (const auto& seed : {kp_seed_sets().front(), ref_rank2()}) {
    for (std::size_t drop = 0; drop < seed.bases.size(); ++drop) {
      auto bases = seed.bases;
      bases.erase(bases.begin() + static_cast<long>(drop));
      CHECK_FALSE(has_parity_proof(make_ks_set(bases)).proof);
    }
  }
}

TEST_CASE("colorability of small sets") {
  const auto single = ks_set_from_indices(kp_catalog(), {1});
  const auto c = is_colorable(single);
  REQUIRE(c.has_value());
  CHECK(satisfies(*c, single));
  CHECK(c->value.size() == 8);
}

TEST_CASE("the full catalog is not colorable") {
  std::vector<int> all;
  for (int k = 1; k <= 25; ++k) all.push_back(k);
  CHECK_FALSE(is_colorable(ks_set_from_indices(kp_catalog(), all)).has_value());
}

TEST_CASE("every seed is a parity proof and not colorable") {
  for (const auto& s : kp_seed_sets()) {
    CHECK(has_parity_proof(s).proof);
    CHECK_FALSE(is_colorable(s).has_value());
  }
  CHECK_FALSE(is_colorable(ref_rank2()).has_value());
}

TEST_CASE("backtracking agrees with exhaustive choice on random basis subsets") {
  std::mt19937 rng(99);
  std::vector<int> idx(25);
  for (int i = 0; i < 25; ++i) idx[i] = i + 1;
  int colorable = 0, total = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::shuffle(idx.begin(), idx.end(), rng);
    const int k = 2 + trial % 24;
    const auto s = ks_set_from_indices(kp_catalog(), {idx.begin(), idx.begin() + k});
    const auto witness = is_colorable(s);
    CHECK(witness.has_value() == brute_colorable(s));
    if (witness) {
      CHECK(satisfies(*witness, s));
      ++colorable;
    }
    ++total;
  }
  // both outcomes must be exercised
  CHECK(colorable > 0);
  CHECK(colorable < total);
}

TEST_CASE("backtracking agrees with exhaustive choice on rank-2 subsets") {
  const auto t4 = ref_rank2();
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto bases = t4.bases;
    std::shuffle(bases.begin(), bases.end(), rng);
    bases.resize(static_cast<std::size_t>(3 + trial % 13));
    const auto s = make_ks_set(bases);
    const auto witness = is_colorable(s);
    CHECK(witness.has_value() == brute_colorable(s));
    if (witness) CHECK(satisfies(*witness, s));
  }
}

TEST_CASE("a rank-1 ray alone and inside a plane are distinct projectors") {
  Basis a{1, BasisKind::Pure, {proj({1, 2}), proj({3}), proj({4}), proj({5}), proj({6}), proj({7}), proj({8})}};
  Basis b{6, BasisKind::Hybrid, {proj({1}), proj({2}), proj({3}), proj({4}), proj({13}), proj({14}), proj({15}), proj({16})}};
  const auto census = compute_census({a, b});
  CHECK(census.size() == 13);
}

TEST_CASE("verification report") {
  auto rep = verify_set(ks_set_from_indices(kp_catalog(), {1}));
  CHECK(rep.structure_ok);
  CHECK_FALSE(rep.parity_proof);
  CHECK(rep.colorable);
  CHECK_FALSE(rep.is_ks_set());
  CHECK(report_to_text(rep).find("verdict: not a parity proof; colorable") != std::string::npos);

  rep = verify_set(ref_rank2());
  CHECK(rep.is_ks_set());
  CHECK(rep.parity_proof);
  CHECK(rep.census_histogram == std::map<int, int>{{2, 30}});
  const auto j = report_to_json(rep);
  CHECK(j["structure_ok"] == true);
  CHECK(j["parity_proof"] == true);
  CHECK(j["basis_count"] == 15);
  CHECK(j["census"]["2"] == 30);
  CHECK(j["colorable"] == false);
  CHECK(j["witness"].is_null());
}
