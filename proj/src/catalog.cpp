#include "ks8/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace ks8 {

namespace {

// Table of rays as printed, including the two entries whose first nonzero
// coordinate is -1 (39 and 40); canonicalization flips them.
constexpr std::string_view kRayText[kRayCount] = {
    "10000000", "01000000", "00100000", "00010000", "00001000", "00000100", "00000010", "00000001",
    "11110000", "11--0000", "1-1-0000", "1--10000", "00001111", "000011--", "00001-1-", "00001--1",
    "11001100", "1100--00", "1-001-00", "1-00-100", "00110011", "001100--", "001-001-", "001-00-1",
    "10101010", "1010-0-0", "10-010-0", "10-0-010", "01010101", "01010-0-", "010-010-", "010-0-01",
    "100101-0", "100-0110", "10010-10", "100-0--0", "0110-001", "01-01001", "0-101001", "0--0-001",
};

const std::vector<std::vector<int>> kBasisRays = {
    {1, 2, 3, 4, 5, 6, 7, 8},         {9, 10, 11, 12, 13, 14, 15, 16},
    {17, 18, 19, 20, 21, 22, 23, 24}, {25, 26, 27, 28, 29, 30, 31, 32},
    {33, 34, 35, 36, 37, 38, 39, 40}, {1, 2, 3, 4, 13, 14, 15, 16},
    {1, 2, 5, 6, 21, 22, 23, 24},     {1, 3, 5, 7, 29, 30, 31, 32},
    {1, 4, 6, 7, 37, 38, 39, 40},     {2, 3, 5, 8, 33, 34, 35, 36},
    {2, 4, 6, 8, 25, 26, 27, 28},     {3, 4, 7, 8, 17, 18, 19, 20},
    {5, 6, 7, 8, 9, 10, 11, 12},      {9, 10, 13, 14, 19, 20, 23, 24},
    {9, 11, 13, 15, 27, 28, 31, 32},  {9, 12, 14, 15, 34, 36, 38, 39},
    {10, 11, 13, 16, 33, 35, 37, 40}, {10, 12, 14, 16, 25, 26, 29, 30},
    {11, 12, 15, 16, 17, 18, 21, 22}, {17, 19, 21, 23, 26, 28, 30, 32},
    {17, 20, 22, 23, 35, 36, 37, 39}, {18, 19, 21, 24, 33, 34, 38, 40},
    {18, 20, 22, 24, 25, 27, 29, 31}, {25, 28, 30, 31, 33, 36, 37, 38},
    {26, 27, 29, 32, 34, 35, 39, 40},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::invalid_argument("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

} // namespace

Projector::Projector(std::vector<Ray> rays) : rays_(std::move(rays)) {
  std::sort(rays_.begin(), rays_.end(), [](const Ray& a, const Ray& b) {
    if (a.index() && b.index()) return *a.index() < *b.index();
    return a.coords() > b.coords();
  });
  subspace_ = canonical_subspace(rays_);
}

std::vector<int> Projector::ray_indices() const {
  std::vector<int> out;
  for (const auto& r : rays_) out.push_back(r.index().value_or(0));
  return out;
}

std::vector<int> Basis::ray_set() const {
  std::vector<int> out;
  for (const auto& p : projectors)
    for (const auto& r : p.rays()) out.push_back(r.index().value_or(0));
  std::sort(out.begin(), out.end());
  return out;
}

int Basis::total_rank() const {
  int n = 0;
  for (const auto& p : projectors) n += p.rank();
  return n;
}

Catalog::Catalog(std::vector<Ray> rays, const std::vector<std::vector<int>>& basis_rays)
    : rays_(std::move(rays)) {
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i].index() != static_cast<int>(i + 1))
      throw std::invalid_argument("catalog rays must be indexed 1..n in order");
  for (std::size_t k = 0; k < basis_rays.size(); ++k) {
    Basis b;
    b.index = static_cast<int>(k + 1);
    b.kind = kind_for_index(b.index);
    for (int r : basis_rays[k]) b.projectors.emplace_back(std::vector<Ray>{ray(r)});
    bases_.push_back(std::move(b));
  }
}

const Ray& Catalog::ray(int index) const {
  if (index < 1 || index > static_cast<int>(rays_.size()))
    throw std::out_of_range("no ray with index " + std::to_string(index));
  return rays_[static_cast<std::size_t>(index - 1)];
}

const Basis& Catalog::basis(int index) const {
  if (index < 1 || index > static_cast<int>(bases_.size()))
    throw std::out_of_range("no basis with index " + std::to_string(index));
  return bases_[static_cast<std::size_t>(index - 1)];
}

const Catalog& kp_catalog() {
  static const Catalog catalog = [] {
    std::vector<Ray> rays;
    for (int i = 0; i < kRayCount; ++i)
      rays.push_back(canonicalize_ray(parse_ray_text(kRayText[i]), i + 1));
    return Catalog(std::move(rays), kBasisRays);
  }();
  return catalog;
}

const std::vector<Ray>& kp_rays() { return kp_catalog().rays(); }
const std::vector<Basis>& kp_bases() { return kp_catalog().bases(); }

CatalogReport validate_catalog(const Catalog& catalog) {
  CatalogReport rep;
  const int n_rays = static_cast<int>(catalog.rays().size());
  rep.occurrences.assign(static_cast<std::size_t>(n_rays), {0, 0});
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.problems.push_back(std::move(msg));
  };

  for (const auto& b : catalog.bases()) {
    const std::string tag = "basis " + std::to_string(b.index);
    auto ids = b.ray_set();
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) fail(tag + ": repeated ray");
    std::vector<Coords> rows;
    std::vector<int> row_ids;
    for (const auto& p : b.projectors)
      for (const auto& r : p.rays()) {
        rows.push_back(r.coords());
        row_ids.push_back(r.index().value_or(0));
      }
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j)
        if (dot(rows[i], rows[j]) != 0)
          fail(tag + ": rays " + std::to_string(row_ids[i]) + " and " +
               std::to_string(row_ids[j]) + " are not orthogonal");
    const int rank = integer_rank(rows);
    if (rank != kDim)
      fail(tag + ": incomplete, rank " + std::to_string(rank) + " from " +
           std::to_string(rows.size()) + " rays");
    for (int r : ids)
      if (r >= 1 && r <= n_rays) ++rep.occurrences[r - 1][b.kind == BasisKind::Pure ? 0 : 1];
  }

  for (int r = 1; r <= n_rays; ++r) {
    const auto [pure, hybrid] = rep.occurrences[r - 1];
    if (pure != 1 || hybrid != 4)
      fail("ray " + std::to_string(r) + ": occurs " + std::to_string(pure) +
           " times in pure bases and " + std::to_string(hybrid) +
           " times in hybrid bases (expected 1 and 4)");
  }
  return rep;
}

std::vector<Ray> parse_ray_list(std::string_view text) {
  std::vector<Ray> rays;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    rays.push_back(canonicalize_ray(parse_ray_text(t), static_cast<int>(rays.size()) + 1));
  }
  return rays;
}

std::string format_ray_list(const std::vector<Ray>& rays) {
  std::string out;
  for (const auto& r : rays) out += format_ray_text(r.coords()) + "\n";
  return out;
}

std::vector<std::vector<int>> parse_basis_list(std::string_view text) {
  std::vector<std::vector<int>> bases;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto colon = t.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("basis line missing ':': '" + std::string(t) + "'");
    const int idx = parse_int(trim(t.substr(0, colon)), "basis index");
    if (idx != static_cast<int>(bases.size()) + 1)
      throw std::invalid_argument("basis indices must run consecutively from 1, got " +
                                  std::to_string(idx));
    std::vector<int> rays;
    std::istringstream fields{std::string(t.substr(colon + 1))};
    std::string tok;
    while (fields >> tok) rays.push_back(parse_int(tok, "ray index"));
    bases.push_back(std::move(rays));
  }
  return bases;
}

std::string format_basis_list(const std::vector<Basis>& bases) {
  std::string out;
  for (const auto& b : bases) {
    out += std::to_string(b.index) + ":";
    for (int r : b.ray_set()) out += " " + std::to_string(r);
    out += "\n";
  }
  return out;
}

} // namespace ks8
