#include "ks8/linalg.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ks8 {

namespace {

using Row = std::array<std::int64_t, kDim>;

Row widen(const Coords& c) {
  Row r{};
  for (int i = 0; i < kDim; ++i) r[i] = c[i];
  return r;
}

int first_nonzero(const Row& r) {
  for (int i = 0; i < kDim; ++i)
    if (r[i] != 0) return i;
  return -1;
}

// Divides by the row content and makes the pivot positive.
Coords normalize(Row r) {
  std::int64_t g = 0;
  for (auto x : r) g = std::gcd(g, x);
  const int p = first_nonzero(r);
  if (p < 0) throw std::invalid_argument("zero row in subspace basis");
  if (r[p] < 0) g = -g;
  Coords out{};
  for (int i = 0; i < kDim; ++i) out[i] = static_cast<int>(r[i] / g);
  return out;
}

CanonicalSubspace echelon(const Row& a_in, const Row& b_in) {
  Row a = a_in, b = b_in;
  int pa = first_nonzero(a), pb = first_nonzero(b);
  if (pa < 0 || pb < 0) throw std::invalid_argument("zero vector in subspace basis");
  if (pb < pa) {
    std::swap(a, b);
    std::swap(pa, pb);
  }
  // clear column pa from b
  const auto ca = a[pa], cb = b[pa];
  for (int i = 0; i < kDim; ++i) b[i] = ca * b[i] - cb * a[i];
  pb = first_nonzero(b);
  if (pb < 0) throw std::invalid_argument("linearly dependent rays");
  b = widen(normalize(b));
  // clear column pb from a
  const auto da = b[pb], db = a[pb];
  for (int i = 0; i < kDim; ++i) a[i] = da * a[i] - db * b[i];
  CanonicalSubspace s;
  s.dim = 2;
  s.rows[0] = normalize(a);
  s.rows[1] = normalize(b);
  return s;
}

} // namespace

Ray canonicalize_ray(const Coords& v, std::optional<int> index) {
  if (index && (*index < 1 || *index > 40))
    throw std::invalid_argument("ray index out of range 1..40: " + std::to_string(*index));
  int sign = 0;
  for (int x : v) {
    if (x < -1 || x > 1) throw std::invalid_argument("ray entry outside {-1,0,1}");
    if (sign == 0 && x != 0) sign = x;
  }
  if (sign == 0) throw std::invalid_argument("zero vector is not a ray");
  Ray r;
  for (int i = 0; i < kDim; ++i) r.coords_[i] = sign * v[i];
  r.index_ = index.value_or(0);
  return r;
}

int dot(const Coords& a, const Coords& b) noexcept {
  int s = 0;
  for (int i = 0; i < kDim; ++i) s += a[i] * b[i];
  return s;
}

int dot(const Ray& a, const Ray& b) noexcept { return dot(a.coords(), b.coords()); }

Coords parse_ray_text(std::string_view text) {
  if (text.size() != kDim)
    throw std::invalid_argument("ray text must have 8 characters: '" + std::string(text) + "'");
  Coords c{};
  for (int i = 0; i < kDim; ++i) {
    switch (text[i]) {
    case '0': c[i] = 0; break;
    case '1': c[i] = 1; break;
    case '-': c[i] = -1; break;
    default:
      throw std::invalid_argument("bad ray character in '" + std::string(text) + "'");
    }
  }
  return c;
}

std::string format_ray_text(const Coords& v) {
  std::string s(kDim, '0');
  for (int i = 0; i < kDim; ++i) s[i] = v[i] > 0 ? '1' : (v[i] < 0 ? '-' : '0');
  return s;
}

CanonicalSubspace canonical_subspace(std::span<const Ray> rays) {
  if (rays.size() == 1) {
    CanonicalSubspace s;
    s.dim = 1;
    s.rows[0] = normalize(widen(rays[0].coords()));
    return s;
  }
  if (rays.size() != 2)
    throw std::invalid_argument("projector must be spanned by 1 or 2 rays");
  if (dot(rays[0], rays[1]) != 0)
    throw std::invalid_argument("rank-2 projector rays are not orthogonal");
  return echelon(widen(rays[0].coords()), widen(rays[1].coords()));
}

CanonicalSubspace recanonicalize(const CanonicalSubspace& s) {
  if (s.dim == 1) {
    CanonicalSubspace out;
    out.dim = 1;
    out.rows[0] = normalize(widen(s.rows[0]));
    return out;
  }
  if (s.dim != 2) throw std::invalid_argument("subspace dimension must be 1 or 2");
  return echelon(widen(s.rows[0]), widen(s.rows[1]));
}

int integer_rank(std::span<const Coords> rows) {
  std::vector<Row> m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.push_back(widen(r));
  int rank = 0;
  for (int col = 0; col < kDim && rank < static_cast<int>(m.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(m.size()); ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = rank + 1; r < static_cast<int>(m.size()); ++r) {
      const auto f = m[r][col], p = m[rank][col];
      if (f == 0) continue;
      std::int64_t g = 0;
      for (int i = 0; i < kDim; ++i) {
        m[r][i] = p * m[r][i] - f * m[rank][i];
        g = std::gcd(g, m[r][i]);
      }
      if (g > 1)
        for (auto& x : m[r]) x /= g;
    }
    ++rank;
  }
  return rank;
}

} // namespace ks8
