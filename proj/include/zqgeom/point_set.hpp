#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zqgeom/geometry.hpp"

namespace zqgeom {

/// A finite subset E of Z_q^d. Points are deduplicated and kept in
/// lexicographic order so every enumeration over E is deterministic.
class PointSet {
 public:
  /// The empty set.
  PointSet(const Modulus& m, int d);
  /// Throws DimensionMismatch or ModulusMismatch if any point disagrees with (m, d).
  PointSet(const Modulus& m, int d, std::vector<Vector> points);

  /// A x ... x A (d-fold). Remembers A so product-only operations can use it.
  static PointSet product(const Modulus& m, int d, std::span<const std::int64_t> base);
  /// All of Z_q^d.
  static PointSet full(const Modulus& m, int d);

  const Modulus& modulus() const noexcept { return m_; }
  int dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return pts_.size(); }
  bool empty() const noexcept { return pts_.empty(); }
  std::span<const Vector> points() const noexcept { return pts_; }
  auto begin() const noexcept { return pts_.begin(); }
  auto end() const noexcept { return pts_.end(); }
  const Vector& operator[](std::size_t i) const { return pts_[i]; }

  bool contains(const Vector& v) const;

  /// Sorted, deduplicated base set when this set was built as a product.
  const std::optional<std::vector<std::int64_t>>& product_base() const noexcept { return base_; }

  /// Flat index of every point in row-major order over Z_q^d.
  std::vector<std::int64_t> flat_indices() const;

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.m_ == b.m_ && a.d_ == b.d_ && a.pts_ == b.pts_;
  }

 private:
  Modulus m_;
  int d_;
  std::vector<Vector> pts_;
  std::optional<std::vector<std::int64_t>> base_;
};

/// Row-major flat index of v in Z_q^d.
std::int64_t flat_index(const Vector& v);
/// Inverse of flat_index.
Vector from_flat_index(const Modulus& m, int d, std::int64_t index);

}  // namespace zqgeom
