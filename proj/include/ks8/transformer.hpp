#pragma once

#include "ks8/ks_set.hpp"
#include "ks8/seeker.hpp"
#include "ks8/verifier.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

namespace ks8 {

// Ray pair forming a rank-2 projector. For Gamma/not-Gamma couplings
// `first` is the Gamma ray; for Gamma-Gamma pairs first < second.
struct RayPair {
  int first = 0;
  int second = 0;

  friend auto operator<=>(const RayPair&, const RayPair&) = default;
};

// A hybrid basis holding three rays of Gamma^i and one ray of not-Gamma^i.
struct HybridSelection {
  int basis_index = 0;
  std::array<int, 3> gamma_subset{};
  int not_gamma_ray = 0;

  friend bool operator==(const HybridSelection&, const HybridSelection&) = default;
};

// Rule 1: the four hybrid bases of the seed that carry the 3-subsets of
// Gamma^i, ordered by subset ({a,b,c}, {a,b,d}, {a,c,d}, {b,c,d}).
// Throws std::invalid_argument when the seed does not realize them.
std::array<HybridSelection, 4> rule1_select_hbs(const KSSet& seed, const GammaSet& g);

// Rule 2 coupling of every Gamma ray (in GammaSet order) with a distinct
// not-Gamma partner, plus its Rule 3 status.
struct MatchingCandidate {
  std::array<RayPair, 4> matching{};
  bool r3_compatible = false;
  std::optional<std::array<RayPair, 2>> r3_pairs;
};

// All couplings whose pairs co-occur in one of the Rule 1 bases, in
// lexicographic order of the partner sequence.
std::vector<MatchingCandidate> enumerate_matchings(const KSSet& seed, const GammaSet& g);

struct StepChoice {
  int step_index = 0; // 1..5, the pure basis whose Gamma set is processed
  std::array<RayPair, 4> matching{};
  bool apply_r3 = false;
  std::optional<std::array<RayPair, 2>> r3_pairs; // present iff apply_r3
};

// Raised when a step would place a ray that is absent from, or already
// consumed in, a basis. Valid choices never trigger it.
class TransformConflict : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Projectors placed so far, basis by basis, over a fixed seed.
class PartialTransform {
public:
  explicit PartialTransform(const KSSet& seed);

  const KSSet& seed() const noexcept { return *seed_; }
  // Placed projectors of a basis as ray lists, in placement order.
  const std::vector<std::vector<int>>& placed(int basis_index) const;
  // Basis indices with at least one placed projector, ascending.
  std::vector<int> touched() const;
  bool basis_complete(int basis_index) const;
  const std::set<int>& applied_steps() const noexcept { return applied_; }

  void place(int basis_index, std::vector<int> rays);
  void mark_applied(int step_index);

private:
  struct Fill {
    std::vector<int> rays;
    std::set<int> used;
    std::vector<std::vector<int>> projectors;
  };
  const KSSet* seed_;
  std::map<int, Fill> fill_;
  std::set<int> applied_;
};

// Checks `choice` against enumerate_matchings for its Gamma set and fills in
// the induced Rule 3 pairs. Throws std::invalid_argument when not allowed.
StepChoice validate_choice(const KSSet& seed, const GammaSet& g, const StepChoice& choice);

// Rules 2 and 3 for one Gamma set: the four couplings go into the pure basis
// and once more into the hybrid basis holding the partner; leftover Gamma
// rays become the two Rule 3 pairs or stay rank-1.
PartialTransform apply_step(PartialTransform state, const GammaSet& g, const StepChoice& choice);

// Runs steps 1..5 and assembles the finished set (one basis per seed basis,
// projectors sorted by ray indices). Throws std::invalid_argument for
// invalid choices and std::logic_error if any basis is left incomplete.
KSSet transform(const KSSet& seed, std::span<const StepChoice> choices);

struct TransformCensus {
  int n_r3_skipped = 0;
  long n_ks = 0;
  int n_rank2 = 0;
  int n_rank1 = 0;
};

struct EnumerateOptions {
  std::set<int> skip_steps;      // steps where Rule 3 is not applied
  bool allow_step1_skip = false; // step 1 always applies Rule 3 otherwise
  // Skipped steps also use the Rule 3 compatible couplings, left unapplied.
  bool include_unapplied = false;
  int workers = 1;
};

using TransformVisitor = std::function<void(const KSSet&, const std::array<StepChoice, 5>&)>;

// Per-step choice lists used by enumerate_transforms, step 1 first.
std::array<std::vector<StepChoice>, 5> step_options(const KSSet& seed,
                                                    const EnumerateOptions& opts);

// Visits every choice vector in the Cartesian product of step_options in
// lexicographic order (step 1 outermost); the visit order is the same for
// any worker count.
TransformCensus enumerate_transforms(const KSSet& seed, const EnumerateOptions& opts,
                                     const TransformVisitor& visit);

// verify_set plus coupling counts for each of the seed's five steps.
VerificationReport verify_seed(const KSSet& seed);

} // namespace ks8
