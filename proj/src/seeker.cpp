#include "ks8/seeker.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>

namespace ks8 {

namespace {

struct SubsetSearch {
  std::span<const std::uint64_t> masks;
  std::vector<std::uint64_t> suffix_union;
  int size = 0;

  void descend(int pos, int chosen, std::uint64_t parity, std::vector<int>& picked,
               std::vector<std::vector<int>>& out) const {
    const int n = static_cast<int>(masks.size());
    const int need = size - chosen;
    if (need == 0) {
      if (parity == 0) out.push_back(picked);
      return;
    }
    if (n - pos < need) return;
    // rays with odd count that no remaining basis can touch
    if ((parity & ~suffix_union[pos]) != 0) return;
    picked.push_back(pos);
    descend(pos + 1, chosen + 1, parity ^ masks[pos], picked, out);
    picked.pop_back();
    descend(pos + 1, chosen, parity, picked, out);
  }
};

std::uint64_t ray_mask(const Basis& b) {
  std::uint64_t m = 0;
  for (int r : b.ray_set()) m |= std::uint64_t{1} << (r - 1);
  return m;
}

} // namespace

std::vector<std::vector<int>> even_cover_subsets(std::span<const std::uint64_t> masks, int size,
                                                 int workers) {
  const int n = static_cast<int>(masks.size());
  if (size <= 0 || size > n) return {};
  SubsetSearch search{masks, std::vector<std::uint64_t>(n + 1, 0), size};
  for (int i = n - 1; i >= 0; --i) search.suffix_union[i] = search.suffix_union[i + 1] | masks[i];

  // one partition per choice of the first (smallest) member
  std::vector<std::vector<std::vector<int>>> parts(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int first = next++; first < n; first = next++) {
      std::vector<int> picked{first};
      search.descend(first + 1, 1, masks[first], picked, parts[first]);
    }
  };
  const int w = std::clamp(workers, 1, n);
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < w; ++t) pool.emplace_back(worker);
    worker();
  }
  std::vector<std::vector<int>> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<KSSet> find_seed_sets(const Catalog& catalog, const SeedSearchOptions& opts) {
  std::vector<int> allowed = opts.allowed_bases;
  if (allowed.empty())
    for (const auto& b : catalog.bases()) allowed.push_back(b.index);
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  if (catalog.rays().size() > 64) throw std::invalid_argument("seed search supports at most 64 rays");

  std::vector<std::uint64_t> masks;
  for (int k : allowed) masks.push_back(ray_mask(catalog.basis(k)));

  std::vector<KSSet> seeds;
  for (const auto& subset : even_cover_subsets(masks, opts.subset_size, opts.workers)) {
    std::vector<int> idx;
    for (int pos : subset) idx.push_back(allowed[pos]);
    KSSet s = ks_set_from_indices(catalog, idx);
    const std::string tag = "seed {" + [&] {
      std::string t;
      for (int k : idx) t += (t.empty() ? "" : ",") + std::to_string(k);
      return t;
    }() + "}";
    if (s.pure_count != 5 || s.hybrid_count != 10)
      throw std::logic_error(tag + " is not 5 pure + 10 hybrid bases");
    if (s.census.size() != static_cast<std::size_t>(kRayCount))
      throw std::logic_error(tag + " does not use all 40 rays");
    if (s.profile != "20_2 20_4 - 15_8")
      throw std::logic_error(tag + " has profile " + s.profile);
    seeds.push_back(std::move(s));
  }
  return seeds;
}

const std::vector<KSSet>& kp_seed_sets() {
  static const std::vector<KSSet> seeds = [] {
    SeedSearchOptions opts;
    opts.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return find_seed_sets(kp_catalog(), opts);
  }();
  return seeds;
}

std::vector<GammaSet> gammas(const KSSet& seed) {
  std::map<int, int> count;
  for (const auto& b : seed.bases)
    for (int r : b.ray_set()) ++count[r];

  std::vector<GammaSet> out;
  for (const auto& b : seed.bases) {
    if (b.kind != BasisKind::Pure) continue;
    GammaSet g;
    g.pure_index = b.index;
    int ng = 0, nn = 0;
    for (int r : b.ray_set()) {
      if (count[r] == 4 && ng < 4)
        g.gamma[ng++] = r;
      else if (count[r] == 2 && nn < 4)
        g.not_gamma[nn++] = r;
      else {
        ng = nn = -1;
        break;
      }
    }
    if (ng != 4 || nn != 4)
      throw std::invalid_argument("pure basis " + std::to_string(b.index) +
                                  " does not split into 4 rays occurring four times and 4 twice");
    out.push_back(g);
  }
  std::sort(out.begin(), out.end(),
            [](const GammaSet& a, const GammaSet& b) { return a.pure_index < b.pure_index; });
  if (out.size() != static_cast<std::size_t>(kPureCount))
    throw std::invalid_argument("seed must contain all 5 pure bases");
  return out;
}

} // namespace ks8
