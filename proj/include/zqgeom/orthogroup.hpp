#pragma once

// SO_2(Z_q), its action on the plane, stabilizers and triangle congruence.

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "zqgeom/geometry.hpp"
#include "zqgeom/point_set.hpp"

namespace zqgeom {

/// The matrix [[a, -b], [b, a]] with a^2 + b^2 = 1 mod q.
class Rotation {
 public:
  /// Throws Error unless a^2 + b^2 == 1.
  Rotation(const Modulus& m, std::int64_t a, std::int64_t b);
  static Rotation identity(const Modulus& m) { return Rotation(m, 1, 0); }

  const Modulus& modulus() const noexcept { return m_; }
  residue_t a() const noexcept { return a_; }
  residue_t b() const noexcept { return b_; }

  /// Matrix product (*this) * o.
  Rotation compose(const Rotation& o) const;
  /// The transpose, which is also the group inverse.
  Rotation inverse() const { return Rotation(m_, a_, m_.neg(b_), Unchecked{}); }
  Rotation transpose() const { return inverse(); }
  Vector apply(const Vector& v) const;

  friend bool operator==(const Rotation& x, const Rotation& y) noexcept {
    return x.m_ == y.m_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const Rotation& x, const Rotation& y) noexcept {
    if (auto c = x.a_ <=> y.a_; c != 0) return c;
    return x.b_ <=> y.b_;
  }

 private:
  struct Unchecked {};
  Rotation(const Modulus& m, residue_t a, residue_t b, Unchecked) : m_(m), a_(a), b_(b) {}

  Modulus m_;
  residue_t a_;
  residue_t b_;
};

std::ostream& operator<<(std::ostream& os, const Rotation& r);

/// Every rotation, lexicographic in (a, b).
std::vector<Rotation> so2_elements(const Modulus& m);

/// (a v_1 - b v_2, b v_1 + a v_2).
Vector rotate(const Rotation& theta, const Vector& v);

/// Rotations fixing xi, found by scanning so2_elements.
std::vector<Rotation> stabilizer(const Vector& xi);

/// Precomputed action of SO_2(Z_q) on flat indices of Z_q^2.
/// image(r, i) is the flat index of rotation r applied to point i.
class PlaneAction {
 public:
  explicit PlaneAction(const Modulus& m);

  const Modulus& modulus() const noexcept { return m_; }
  const std::vector<Rotation>& rotations() const noexcept { return rots_; }
  std::size_t group_order() const noexcept { return rots_.size(); }
  std::int64_t plane_size() const noexcept { return m_.q() * m_.q(); }

  std::int64_t image(std::size_t r, std::int64_t index) const {
    return table_[r * static_cast<std::size_t>(plane_size()) + static_cast<std::size_t>(index)];
  }
  /// |Stab| of the point with the given flat index.
  std::int64_t stabilizer_size(std::int64_t index) const;

  /// Lexicographically least (theta u, theta v) over the group, encoded as
  /// u_index * q^2 + v_index.
  std::int64_t canonical_pair(std::int64_t u_index, std::int64_t v_index) const;

 private:
  Modulus m_;
  std::vector<Rotation> rots_;
  std::vector<std::int64_t> table_;
};

using Triangle = std::array<Vector, 3>;

/// The congruence class of a planar triangle, keyed by its difference pair
/// (x - y, y - z) reduced to the least element of its SO_2 orbit.
struct TriangleClass {
  Vector u;
  Vector v;

  friend bool operator==(const TriangleClass&, const TriangleClass&) = default;
  friend std::strong_ordering operator<=>(const TriangleClass& a, const TriangleClass& b) {
    if (auto c = a.u <=> b.u; c != 0) return c;
    return a.v <=> b.v;
  }
};

TriangleClass triangle_class(const Vector& u, const Vector& v);
TriangleClass triangle_class(const Triangle& t);

/// Some theta with x^i - x^j = theta (y^i - y^j) for all i, j, the first in
/// lexicographic order; nullopt if the triangles are not congruent.
std::optional<Rotation> congruent(const Triangle& t1, const Triangle& t2);

/// Class -> number of ordered triples of E in that class (the multiplicity mu).
using ClassCensus = std::map<TriangleClass, std::int64_t>;

/// Iterates over all |E|^3 ordered triples. Throws DimensionMismatch unless E is planar.
ClassCensus t2_classes(const PointSet& e);

/// Sum of mu^2 over a census.
std::int64_t sum_of_squares(const ClassCensus& census);

}  // namespace zqgeom
