#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace ks8 {

inline constexpr int kDim = 8;

using Coords = std::array<int, kDim>;

// A real ray in R^8 with entries in {-1, 0, +1}, stored with its first
// nonzero coordinate equal to +1. Catalog rays carry their 1-based index.
class Ray {
public:
  Ray() = default;

  const Coords& coords() const noexcept { return coords_; }
  std::optional<int> index() const noexcept {
    return index_ > 0 ? std::optional<int>(index_) : std::nullopt;
  }
  int operator[](int i) const noexcept { return coords_[static_cast<std::size_t>(i)]; }

  // Catalog index when both rays have one, canonical coordinates otherwise.
  friend bool operator==(const Ray& a, const Ray& b) noexcept {
    if (a.index_ > 0 && b.index_ > 0) return a.index_ == b.index_;
    return a.coords_ == b.coords_;
  }

private:
  friend Ray canonicalize_ray(const Coords& v, std::optional<int> index);
  Coords coords_{};
  int index_ = 0;
};

// Returns v or -v, whichever has +1 as its first nonzero entry.
// Throws std::invalid_argument for the zero vector, entries outside
// {-1, 0, 1}, or an index outside 1..40.
Ray canonicalize_ray(const Coords& v, std::optional<int> index = std::nullopt);

int dot(const Ray& a, const Ray& b) noexcept;
int dot(const Coords& a, const Coords& b) noexcept;

// "10-0-010" <-> coordinates; '-' stands for -1.
Coords parse_ray_text(std::string_view text);
std::string format_ray_text(const Coords& v);

// Unique representative of span(rays) for dim 1 or 2: reduced row echelon
// form scaled to integer rows with content 1 and positive pivots.
struct CanonicalSubspace {
  int dim = 0;
  std::array<Coords, 2> rows{};

  friend auto operator<=>(const CanonicalSubspace&, const CanonicalSubspace&) = default;
  friend bool operator==(const CanonicalSubspace&, const CanonicalSubspace&) = default;
};

// Throws std::invalid_argument for an empty or oversized input, linearly
// dependent rays, or a non-orthogonal pair.
CanonicalSubspace canonical_subspace(std::span<const Ray> rays);

// Re-canonicalizes the rows of an existing form; the identity on valid input.
CanonicalSubspace recanonicalize(const CanonicalSubspace& s);

// Exact rank of a set of integer row vectors (fraction-free elimination).
int integer_rank(std::span<const Coords> rows);

} // namespace ks8
