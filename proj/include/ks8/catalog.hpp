#pragma once

#include "ks8/linalg.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ks8 {

inline constexpr int kRayCount = 40;
inline constexpr int kBasisCount = 25;
inline constexpr int kPureCount = 5;

enum class BasisKind { Pure, Hybrid };

inline BasisKind kind_for_index(int basis_index) {
  return basis_index <= kPureCount ? BasisKind::Pure : BasisKind::Hybrid;
}

// A rank-1 or rank-2 projector spanned by one or two catalog rays.
class Projector {
public:
  // Rays are stored in ascending catalog-index order. Throws
  // std::invalid_argument for anything canonical_subspace rejects.
  explicit Projector(std::vector<Ray> rays);

  int rank() const noexcept { return static_cast<int>(rays_.size()); }
  const std::vector<Ray>& rays() const noexcept { return rays_; }
  const CanonicalSubspace& subspace() const noexcept { return subspace_; }
  std::vector<int> ray_indices() const;

  friend bool operator==(const Projector& a, const Projector& b) {
    return a.subspace_ == b.subspace_;
  }

private:
  std::vector<Ray> rays_;
  CanonicalSubspace subspace_;
};

struct Basis {
  int index = 0;
  BasisKind kind = BasisKind::Hybrid;
  std::vector<Projector> projectors;

  // Underlying catalog ray indices, ascending.
  std::vector<int> ray_set() const;
  int total_rank() const;

  friend bool operator==(const Basis&, const Basis&) = default;
};

class Catalog {
public:
  // basis_rays[k] lists the ray indices of basis k+1. No validation here;
  // see validate_catalog.
  Catalog(std::vector<Ray> rays, const std::vector<std::vector<int>>& basis_rays);

  const std::vector<Ray>& rays() const noexcept { return rays_; }
  const std::vector<Basis>& bases() const noexcept { return bases_; }
  const Ray& ray(int index) const;     // 1-based
  const Basis& basis(int index) const; // 1-based

  friend bool operator==(const Catalog&, const Catalog&) = default;

private:
  std::vector<Ray> rays_;
  std::vector<Basis> bases_;
};

// The embedded Kernaghan-Peres data: 40 rays, 25 bases of rank-1 projectors.
const Catalog& kp_catalog();
const std::vector<Ray>& kp_rays();
const std::vector<Basis>& kp_bases();

struct CatalogReport {
  bool ok = true;
  std::vector<std::string> problems;
  // occurrences[r-1] = {count among bases 1..5, count among bases 6..}
  std::vector<std::array<int, 2>> occurrences;
};

CatalogReport validate_catalog(const Catalog& catalog);

// One ray per line, 8 characters from {0,1,-}. Blank lines and lines
// starting with '#' are skipped. Rays are indexed by line order.
std::vector<Ray> parse_ray_list(std::string_view text);
std::string format_ray_list(const std::vector<Ray>& rays);

// Lines of the form "index: r1 r2 ... r8", indices consecutive from 1.
std::vector<std::vector<int>> parse_basis_list(std::string_view text);
std::string format_basis_list(const std::vector<Basis>& bases);

} // namespace ks8
