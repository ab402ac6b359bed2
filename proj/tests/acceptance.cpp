// Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

#include "ks8/seeker.hpp"
#include "ks8/serialize.hpp"
#include "ks8/transformer.hpp"
#include "ks8/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace ks8;

namespace {

const std::vector<int> kRefSeed = {1, 2, 3, 4, 5, 6, 7, 8, 10, 14, 15, 16, 20, 22, 24};

// Collects failure messages for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_s; // 0 = no runtime bound
  std::function<void(Check&)> body;
};

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

const KSSet& ref_seed() {
  static const KSSet s = ks_set_from_indices(kp_catalog(), kRefSeed);
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string key_of(const KSSet& s) { return format_ks_set_text(s); }

Ray negated(const Ray& r) {
  Coords c = r.coords();
  for (auto& x : c) x = -x;
  return canonicalize_ray(c, r.index());
}

void ac1(Check& c) {
  const auto rep = validate_catalog(kp_catalog());
  c.expect(rep.ok, "catalog validation reported problems");
  for (const auto& p : rep.problems) c.expect(false, p);
  for (int r = 0; r < kRayCount; ++r) {
    c.expect(rep.occurrences[r][0] == 1, "ray " + std::to_string(r + 1) + " pure count");
    c.expect(rep.occurrences[r][1] == 4, "ray " + std::to_string(r + 1) + " hybrid count");
  }
  for (int b = 1; b <= kBasisCount; ++b) c.expect(kp_catalog().basis(b).total_rank() == 8, "basis rank");
}

void ac2(Check& c) {
  SeedSearchOptions opts;
  opts.workers = workers();
  const auto seeds = find_seed_sets(kp_catalog(), opts);
  c.expect(seeds.size() == 64, "seed count " + std::to_string(seeds.size()));
  bool ref_seed = false;
  for (const auto& s : seeds) {
    c.expect(s.pure_count == 5 && s.hybrid_count == 10, "seed basis split");
    c.expect(s.profile == "20_2 20_4 - 15_8", "seed profile " + s.profile);
    ref_seed = ref_seed || basis_indices(s) == kRefSeed;
  }
  c.expect(ref_seed, "reference seed not found");
}

void ac3(Check& c) {
  using PairSet = std::set<std::pair<int, int>>;
  const std::vector<PairSet> rows = {
      {{9, 12}, {13, 16}, {14, 10}, {15, 11}}, {{9, 11}, {13, 10}, {14, 16}, {15, 12}},
      {{9, 10}, {13, 11}, {14, 12}, {15, 16}}, {{9, 10}, {13, 16}, {14, 12}, {15, 11}},
      {{9, 11}, {13, 16}, {14, 10}, {15, 12}}, {{9, 10}, {13, 11}, {14, 16}, {15, 12}},
      {{9, 12}, {13, 10}, {14, 16}, {15, 11}}, {{9, 11}, {13, 10}, {14, 12}, {15, 16}},
      {{9, 12}, {13, 11}, {14, 10}, {15, 16}},
  };
  const auto ms = enumerate_matchings(ref_seed(), gammas(ref_seed())[1]);
  c.expect(ms.size() == 9, "matching count " + std::to_string(ms.size()));
  std::set<PairSet> compatible, incompatible;
  for (const auto& m : ms) {
    PairSet s;
    for (const auto& p : m.matching) s.insert({p.first, p.second});
    (m.r3_compatible ? compatible : incompatible).insert(s);
  }
  c.expect(compatible == std::set<PairSet>(rows.begin(), rows.begin() + 3), "compatible rows differ");
  c.expect(incompatible == std::set<PairSet>(rows.begin() + 3, rows.end()), "incompatible rows differ");
}

std::vector<StepChoice> worked_choices() {
  auto pairs = [](std::initializer_list<std::pair<int, int>> l) {
    std::array<RayPair, 4> m{};
    std::size_t i = 0;
    for (const auto& [a, b] : l) m[i++] = RayPair{a, b};
    return m;
  };
  return {
      {1, pairs({{1, 7}, {2, 8}, {3, 4}, {5, 6}}), true, std::nullopt},
      {2, pairs({{9, 12}, {13, 16}, {14, 10}, {15, 11}}), true, std::nullopt},
      {3, pairs({{19, 20}, {21, 22}, {23, 17}, {24, 18}}), true, std::nullopt},
      {4, pairs({{28, 27}, {30, 29}, {31, 25}, {32, 26}}), true, std::nullopt},
      {5, pairs({{33, 35}, {34, 40}, {36, 37}, {38, 39}}), true, std::nullopt},
  };
}

void ac4(Check& c) {
  const auto golden = read_file(KS8_GOLDEN_DIR "/ref_rank2.json");
  c.expect(!golden.empty(), "golden file missing");
  const auto choices = worked_choices();
  const auto t = transform(ref_seed(), choices);
  c.expect(ks_set_to_json(t).dump(2) + "\n" == golden, "transform JSON differs from golden");
  int slots = 0;
  for (const auto& b : t.bases) slots += static_cast<int>(b.projectors.size());
  c.expect(t.bases.size() == 15 && slots == 60, "expected 15 bases and 60 projector slots");
}

void ac5(Check& c) {
  struct Row {
    std::set<int> skip;
    long n_ks;
    int n2, n1;
  };
  const std::vector<Row> rows = {{{}, 243, 30, 0},
                                 {{2}, 486, 28, 4},
                                 {{2, 3}, 972, 26, 8},
                                 {{2, 3, 4}, 1944, 24, 12},
                                 {{2, 3, 4, 5}, 3888, 22, 16}};
  for (const auto& row : rows) {
    EnumerateOptions opts;
    opts.skip_steps = row.skip;
    opts.workers = workers();
    std::set<std::string> distinct;
    const auto start = std::chrono::steady_clock::now();
    const auto census =
        enumerate_transforms(ref_seed(), opts, [&](const KSSet& s, const auto&) { distinct.insert(key_of(s)); });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto label = "k=" + std::to_string(row.skip.size());
    c.expect(census.n_ks == row.n_ks, label + ": count " + std::to_string(census.n_ks));
    c.expect(static_cast<long>(distinct.size()) == row.n_ks, label + ": duplicates");
    c.expect(census.n_rank2 == row.n2 && census.n_rank1 == row.n1,
             label + ": (N2,N1) = (" + std::to_string(census.n_rank2) + "," + std::to_string(census.n_rank1) + ")");
    c.expect(secs < 30.0, label + ": run took " + std::to_string(secs) + " s");
  }
}

void ac6(Check& c) {
  auto noncolorable_proof = [&](const KSSet& s, const std::string& what) {
    c.expect(has_parity_proof(s).proof, what + ": no parity proof");
    c.expect(!is_colorable(s).has_value(), what + ": colorable");
  };
  for (std::size_t i = 0; i < kp_seed_sets().size(); ++i)
    noncolorable_proof(kp_seed_sets()[i], "seed " + std::to_string(i + 1));

  EnumerateOptions opts;
  opts.workers = workers();
  long rank2 = 0;
  enumerate_transforms(ref_seed(), opts, [&](const KSSet& s, const auto&) {
    ++rank2;
    noncolorable_proof(s, "rank-2 transform " + std::to_string(rank2));
  });
  c.expect(rank2 == 243, "rank-2 transform count");

  // mixed-rank sample drawn across all skip sizes
  std::mt19937 rng(7);
  int mixed = 0;
  for (const std::set<int>& skip : {std::set<int>{3}, std::set<int>{2, 5}, std::set<int>{2, 3, 4},
                                    std::set<int>{2, 3, 4, 5}}) {
    std::vector<KSSet> all;
    opts.skip_steps = skip;
    enumerate_transforms(ref_seed(), opts, [&](const KSSet& s, const auto&) { all.push_back(s); });
    std::shuffle(all.begin(), all.end(), rng);
    for (std::size_t i = 0; i < 30 && i < all.size(); ++i, ++mixed)
      noncolorable_proof(all[i], "mixed transform " + std::to_string(mixed + 1));
  }
  c.expect(mixed >= 100, "fewer than 100 mixed samples");

  std::vector<int> every(kBasisCount);
  for (int i = 0; i < kBasisCount; ++i) every[i] = i + 1;
  c.expect(!is_colorable(ks_set_from_indices(kp_catalog(), every)).has_value(), "full catalog colorable");
}

void ac7(Check& c) {
  std::map<int, std::vector<int>> original;
  for (const auto& b : ref_seed().bases) original[b.index] = b.ray_set();
  EnumerateOptions opts;
  opts.workers = workers();
  enumerate_transforms(ref_seed(), opts, [&](const KSSet& s, const auto&) {
    for (const auto& b : s.bases) c.expect(b.ray_set() == original[b.index], "ray conservation");
    for (const auto& [k, e] : s.census) c.expect(e.count == 2 && e.projector.rank() == 2, "twice occurrence");
  });
  opts.skip_steps = {2, 4};
  enumerate_transforms(ref_seed(), opts, [&](const KSSet& s, const auto&) {
    for (const auto& b : s.bases) c.expect(b.ray_set() == original[b.index], "ray conservation (mixed)");
  });

  const auto& rays = kp_rays();
  std::vector<std::pair<int, int>> orthogonal;
  for (int i = 0; i < kRayCount; ++i)
    for (int j = i + 1; j < kRayCount; ++j)
      if (dot(rays[i], rays[j]) == 0) orthogonal.emplace_back(i, j);
  std::mt19937 rng(1000);
  std::uniform_int_distribution<std::size_t> pick(0, orthogonal.size() - 1);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto [i, j] = orthogonal[pick(rng)];
    const std::vector<Ray> base{rays[i], rays[j]};
    const auto s = canonical_subspace(base);
    c.expect(recanonicalize(s) == s, "canonical form not idempotent");
    const Ray a = coin(rng) ? negated(rays[i]) : rays[i];
    const Ray b = coin(rng) ? negated(rays[j]) : rays[j];
    const std::vector<Ray> varied = coin(rng) ? std::vector<Ray>{b, a} : std::vector<Ray>{a, b};
    c.expect(canonical_subspace(varied) == s, "sign/permutation changed canonical form");
  }
}

// Brute-force coupling count for the first pure basis, pinned.
constexpr int kGamma1Matchings = 9;
constexpr int kGamma1Compatible = 3;

void ac8(Check& c) {
  const auto rep = verify_seed(ref_seed());
  c.expect(!rep.gamma_matchings.empty(), "report has no coupling counts");
  if (rep.gamma_matchings.empty()) return;
  const auto& g1 = rep.gamma_matchings.front();
  std::printf("       reported: step 1 (pure basis %d): %d couplings, %d rule-3 compatible\n", g1.pure_index,
              g1.matchings, g1.r3_compatible);
  c.expect(g1.matchings == kGamma1Matchings, "step 1 coupling count " + std::to_string(g1.matchings));
  c.expect(g1.r3_compatible == kGamma1Compatible, "step 1 compatible count");
  const auto ms = enumerate_matchings(ref_seed(), gammas(ref_seed())[0]);
  c.expect(static_cast<int>(ms.size()) == g1.matchings, "report disagrees with enumeration");
  for (const auto& g : rep.gamma_matchings) c.expect(g.r3_compatible == 3, "compatible count per step");
}

} // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "catalog validation", 1.0, ac1},
      {"AC2", "seed search finds 64 sets", 10.0, ac2},
      {"AC3", "couplings for the second pure basis", 0.0, ac3},
      {"AC4", "worked transform matches golden JSON", 0.0, ac4},
      {"AC5", "enumeration counts per skip size", 0.0, ac5},
      {"AC6", "parity proofs are noncolorable", 60.0, ac6},
      {"AC7", "structural invariants", 0.0, ac7},
      {"AC8", "coupling count for the first pure basis", 0.0, ac8},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.time_limit_s > 0 && secs >= cr.time_limit_s)
      c.failures.push_back("runtime " + std::to_string(secs) + " s exceeds limit");
    const bool ok = c.failures.empty();
    std::printf("[%s] %s %s (%.3f s)\n", ok ? "PASS" : "FAIL", cr.id.c_str(), cr.title.c_str(), secs);
    for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) std::printf("       %s\n", c.failures[i].c_str());
    if (!ok) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
