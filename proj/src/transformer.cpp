#include "ks8/transformer.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace ks8 {

namespace {

bool contains(std::span<const int> xs, int v) { return std::find(xs.begin(), xs.end(), v) != xs.end(); }

std::string pair_text(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

const GammaSet& gamma_for_step(const std::vector<GammaSet>& gs, int step) {
  if (step < 1 || step > static_cast<int>(gs.size()))
    throw std::invalid_argument("step index must be 1..5, got " + std::to_string(step));
  return gs[static_cast<std::size_t>(step - 1)];
}

// Leftover Gamma rays of every selected basis once the coupling placed
// there is removed; nullopt if some partner's basis lacks its Gamma ray.
std::optional<std::array<RayPair, 4>> leftovers(const std::array<HybridSelection, 4>& sel,
                                                const std::array<RayPair, 4>& matching) {
  std::array<RayPair, 4> out{};
  for (std::size_t h = 0; h < 4; ++h) {
    auto m = std::find_if(matching.begin(), matching.end(),
                          [&](const RayPair& p) { return p.second == sel[h].not_gamma_ray; });
    if (m == matching.end() || !contains(sel[h].gamma_subset, m->first)) return std::nullopt;
    std::vector<int> rest;
    for (int r : sel[h].gamma_subset)
      if (r != m->first) rest.push_back(r);
    out[h] = {rest[0], rest[1]};
  }
  return out;
}

// Two distinct leftover pairs, each in exactly two of the four bases.
std::optional<std::array<RayPair, 2>> rule3_pairs(const std::array<RayPair, 4>& left) {
  std::map<RayPair, int> count;
  for (const auto& p : left) ++count[p];
  if (count.size() != 2) return std::nullopt;
  std::array<RayPair, 2> out{};
  std::size_t i = 0;
  for (const auto& [p, c] : count) {
    if (c != 2) return std::nullopt;
    out[i++] = p;
  }
  return out;
}

} // namespace

std::array<HybridSelection, 4> rule1_select_hbs(const KSSet& seed, const GammaSet& g) {
  std::vector<HybridSelection> found;
  for (const auto& b : seed.bases) {
    if (b.kind != BasisKind::Hybrid) continue;
    std::vector<int> in_gamma, in_not;
    for (int r : b.ray_set()) {
      if (contains(g.gamma, r)) in_gamma.push_back(r);
      if (contains(g.not_gamma, r)) in_not.push_back(r);
    }
    if (in_gamma.size() != 3) continue;
    if (in_not.size() != 1)
      throw std::invalid_argument("hybrid basis " + std::to_string(b.index) + " holds " +
                                  std::to_string(in_not.size()) +
                                  " not-Gamma rays of pure basis " + std::to_string(g.pure_index));
    found.push_back({b.index, {in_gamma[0], in_gamma[1], in_gamma[2]}, in_not[0]});
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.gamma_subset < b.gamma_subset;
  });
  const bool distinct = std::adjacent_find(found.begin(), found.end(), [](const auto& a, const auto& b) {
                          return a.gamma_subset == b.gamma_subset;
                        }) == found.end();
  if (found.size() != 4 || !distinct)
    throw std::invalid_argument("seed does not realize the four 3-subsets of Gamma for pure basis " +
                                std::to_string(g.pure_index));
  std::array<HybridSelection, 4> out;
  std::copy(found.begin(), found.end(), out.begin());
  return out;
}

std::vector<MatchingCandidate> enumerate_matchings(const KSSet& seed, const GammaSet& g) {
  const auto sel = rule1_select_hbs(seed, g);
  std::vector<MatchingCandidate> out;
  auto partners = g.not_gamma;
  std::sort(partners.begin(), partners.end());
  do {
    MatchingCandidate c;
    bool ok = true;
    for (std::size_t k = 0; k < 4 && ok; ++k) {
      c.matching[k] = {g.gamma[k], partners[k]};
      ok = std::any_of(sel.begin(), sel.end(), [&](const HybridSelection& h) {
        return h.not_gamma_ray == partners[k] && contains(h.gamma_subset, g.gamma[k]);
      });
    }
    if (!ok) continue;
    const auto left = leftovers(sel, c.matching);
    if (!left) continue;
    c.r3_pairs = rule3_pairs(*left);
    c.r3_compatible = c.r3_pairs.has_value();
    out.push_back(c);
  } while (std::next_permutation(partners.begin(), partners.end()));
  return out;
}

PartialTransform::PartialTransform(const KSSet& seed) : seed_(&seed) {
  for (const auto& b : seed.bases) fill_[b.index].rays = b.ray_set();
}

const std::vector<std::vector<int>>& PartialTransform::placed(int basis_index) const {
  auto it = fill_.find(basis_index);
  if (it == fill_.end())
    throw std::out_of_range("basis " + std::to_string(basis_index) + " is not in the seed");
  return it->second.projectors;
}

std::vector<int> PartialTransform::touched() const {
  std::vector<int> out;
  for (const auto& [k, f] : fill_)
    if (!f.projectors.empty()) out.push_back(k);
  return out;
}

bool PartialTransform::basis_complete(int basis_index) const {
  auto it = fill_.find(basis_index);
  return it != fill_.end() && it->second.used.size() == it->second.rays.size();
}

void PartialTransform::place(int basis_index, std::vector<int> rays) {
  auto it = fill_.find(basis_index);
  if (it == fill_.end())
    throw TransformConflict("basis " + std::to_string(basis_index) + " is not in the seed");
  auto& f = it->second;
  for (int r : rays) {
    if (!contains(f.rays, r))
      throw TransformConflict("ray " + std::to_string(r) + " is not in basis " +
                              std::to_string(basis_index));
    if (f.used.contains(r))
      throw TransformConflict("ray " + std::to_string(r) + " already placed in basis " +
                              std::to_string(basis_index));
  }
  f.used.insert(rays.begin(), rays.end());
  f.projectors.push_back(std::move(rays));
}

void PartialTransform::mark_applied(int step_index) {
  if (!applied_.insert(step_index).second)
    throw TransformConflict("step " + std::to_string(step_index) + " applied twice");
}

StepChoice validate_choice(const KSSet& seed, const GammaSet& g, const StepChoice& choice) {
  auto sorted = [](std::array<RayPair, 4> m) {
    std::sort(m.begin(), m.end());
    return m;
  };
  const auto want = sorted(choice.matching);
  for (const auto& c : enumerate_matchings(seed, g)) {
    if (sorted(c.matching) != want) continue;
    if (choice.apply_r3 && !c.r3_compatible)
      throw std::invalid_argument("step " + std::to_string(choice.step_index) +
                                  ": rule 3 is not applicable to this coupling");
    if (choice.r3_pairs) {
      if (!choice.apply_r3)
        throw std::invalid_argument("step " + std::to_string(choice.step_index) +
                                    ": rule 3 pairs given but rule 3 not applied");
      auto given = *choice.r3_pairs;
      for (auto& p : given)
        if (p.first > p.second) std::swap(p.first, p.second);
      std::sort(given.begin(), given.end());
      if (given != *c.r3_pairs)
        throw std::invalid_argument("step " + std::to_string(choice.step_index) +
                                    ": rule 3 pairs do not match the coupling");
    }
    StepChoice out = choice;
    out.matching = c.matching;
    out.r3_pairs = choice.apply_r3 ? c.r3_pairs : std::nullopt;
    return out;
  }
  std::string text;
  for (const auto& p : choice.matching) text += pair_text(p.first, p.second);
  throw std::invalid_argument("step " + std::to_string(choice.step_index) + ": coupling " + text +
                              " violates rule 2");
}

PartialTransform apply_step(PartialTransform state, const GammaSet& g, const StepChoice& choice) {
  const auto sel = rule1_select_hbs(state.seed(), g);
  state.mark_applied(choice.step_index);

  for (const auto& p : choice.matching) state.place(g.pure_index, {p.first, p.second});

  const auto left = leftovers(sel, choice.matching);
  if (!left) throw TransformConflict("coupling does not follow the rule 1 bases");
  std::optional<std::array<RayPair, 2>> r3;
  if (choice.apply_r3) {
    r3 = rule3_pairs(*left);
    if (!r3) throw TransformConflict("rule 3 is not applicable to this coupling");
  }
  for (std::size_t h = 0; h < 4; ++h) {
    const int k = sel[h].basis_index;
    for (const auto& p : choice.matching)
      if (p.second == sel[h].not_gamma_ray) state.place(k, {p.first, p.second});
    if (choice.apply_r3) {
      state.place(k, {(*left)[h].first, (*left)[h].second});
    } else {
      state.place(k, {(*left)[h].first});
      state.place(k, {(*left)[h].second});
    }
  }
  return state;
}

KSSet transform(const KSSet& seed, std::span<const StepChoice> choices) {
  const auto gs = gammas(seed);
  if (choices.size() != gs.size())
    throw std::invalid_argument("expected one choice per step (5), got " +
                                std::to_string(choices.size()));
  std::vector<StepChoice> ordered(choices.begin(), choices.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.step_index < b.step_index; });
  for (std::size_t i = 0; i < ordered.size(); ++i)
    if (ordered[i].step_index != static_cast<int>(i + 1))
      throw std::invalid_argument("choices must cover steps 1..5 exactly once");

  // Steps commute only because they touch disjoint Gamma sets.
  std::set<int> seen;
  for (const auto& g : gs)
    for (int r : g.gamma)
      if (!seen.insert(r).second) throw std::logic_error("Gamma sets of two steps overlap");

  PartialTransform state(seed);
  for (const auto& c : ordered) {
    const auto& g = gamma_for_step(gs, c.step_index);
    state = apply_step(std::move(state), g, validate_choice(seed, g, c));
  }

  std::map<int, Ray> ray_by_index;
  for (const auto& b : seed.bases)
    for (const auto& p : b.projectors)
      for (const auto& r : p.rays()) ray_by_index.emplace(r.index().value_or(0), r);

  std::vector<Basis> bases;
  for (const auto& sb : seed.bases) {
    if (!state.basis_complete(sb.index))
      throw std::logic_error("basis " + std::to_string(sb.index) + " left incompletely filled");
    auto lists = state.placed(sb.index);
    for (auto& l : lists) std::sort(l.begin(), l.end());
    std::sort(lists.begin(), lists.end());
    Basis b{sb.index, sb.kind, {}};
    for (const auto& l : lists) {
      std::vector<Ray> rays;
      for (int r : l) rays.push_back(ray_by_index.at(r));
      b.projectors.emplace_back(std::move(rays));
    }
    bases.push_back(std::move(b));
  }
  return make_ks_set(std::move(bases));
}

std::array<std::vector<StepChoice>, 5> step_options(const KSSet& seed, const EnumerateOptions& opts) {
  for (int s : opts.skip_steps) {
    if (s < 1 || s > 5) throw std::invalid_argument("skip step must be 1..5, got " + std::to_string(s));
    if (s == 1 && !opts.allow_step1_skip)
      throw std::invalid_argument("rule 3 is always applied at step 1 unless explicitly allowed");
  }
  const auto gs = gammas(seed);
  std::array<std::vector<StepChoice>, 5> out;
  for (int step = 1; step <= 5; ++step) {
    const bool skip = opts.skip_steps.contains(step);
    for (const auto& c : enumerate_matchings(seed, gs[step - 1])) {
      if (!skip && !c.r3_compatible) continue;
      if (skip && c.r3_compatible && !opts.include_unapplied) continue;
      out[step - 1].push_back({step, c.matching, !skip, skip ? std::nullopt : c.r3_pairs});
    }
  }
  return out;
}

TransformCensus enumerate_transforms(const KSSet& seed, const EnumerateOptions& opts,
                                     const TransformVisitor& visit) {
  const auto options = step_options(seed, opts);
  long total = 1;
  for (const auto& o : options) total *= static_cast<long>(o.size());

  auto choices_at = [&](long idx) {
    std::array<StepChoice, 5> ch;
    for (int s = 4; s >= 0; --s) {
      const long n = static_cast<long>(options[s].size());
      ch[s] = options[s][static_cast<std::size_t>(idx % n)];
      idx /= n;
    }
    return ch;
  };

  TransformCensus census;
  census.n_r3_skipped = static_cast<int>(opts.skip_steps.size());
  bool first = true;
  auto record = [&](const KSSet& s, const std::array<StepChoice, 5>& ch) {
    int n1 = 0, n2 = 0;
    for (const auto& [key, e] : s.census) ++(e.projector.rank() == 1 ? n1 : n2);
    if (first) {
      census.n_rank1 = n1;
      census.n_rank2 = n2;
      first = false;
    } else if (n1 != census.n_rank1 || n2 != census.n_rank2) {
      throw std::logic_error("projector counts differ between sets of one enumeration");
    }
    ++census.n_ks;
    visit(s, ch);
  };

  const int workers = std::max(1, opts.workers);
  if (workers == 1) {
    for (long i = 0; i < total; ++i) {
      const auto ch = choices_at(i);
      record(transform(seed, ch), ch);
    }
    return census;
  }

  // Fixed-size chunks computed in parallel, emitted in index order.
  const long chunk = 64L * workers;
  std::vector<std::optional<KSSet>> buf;
  for (long base = 0; base < total; base += chunk) {
    const long n = std::min(chunk, total - base);
    buf.assign(static_cast<std::size_t>(n), std::nullopt);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    {
      std::vector<std::jthread> pool;
      for (int t = 0; t < workers; ++t)
        pool.emplace_back([&, t] {
          try {
            for (long i = t; i < n; i += workers)
              buf[static_cast<std::size_t>(i)] = transform(seed, choices_at(base + i));
          } catch (...) {
            errors[static_cast<std::size_t>(t)] = std::current_exception();
          }
        });
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (long i = 0; i < n; ++i) record(*buf[static_cast<std::size_t>(i)], choices_at(base + i));
  }
  return census;
}

VerificationReport verify_seed(const KSSet& seed) {
  auto rep = verify_set(seed);
  const auto gs = gammas(seed);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const auto ms = enumerate_matchings(seed, gs[i]);
    const auto compat = std::count_if(ms.begin(), ms.end(), [](const auto& m) { return m.r3_compatible; });
    rep.gamma_matchings.push_back(
        {static_cast<int>(i + 1), gs[i].pure_index, static_cast<int>(ms.size()), static_cast<int>(compat)});
  }
  return rep;
}

} // namespace ks8
