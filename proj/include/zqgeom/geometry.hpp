#pragma once

// Points of Z_q^d, the quadratic form and dot product, and the stratified
// line structure of the plane Z_q^2.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "zqgeom/ring.hpp"

namespace zqgeom {

/// A point of Z_q^d with canonical coordinates.
class Vector {
 public:
  Vector(const Modulus& m, std::span<const std::int64_t> coords);
  Vector(const Modulus& m, std::initializer_list<std::int64_t> coords);
  /// The zero vector of dimension d.
  static Vector zero(const Modulus& m, int d);

  const Modulus& modulus() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(c_.size()); }
  residue_t operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  RingElem at(int i) const { return RingElem(m_, c_.at(static_cast<std::size_t>(i))); }
  std::span<const residue_t> coords() const noexcept { return c_; }

  bool is_zero() const noexcept;

  Vector operator+(const Vector& o) const;
  Vector operator-(const Vector& o) const;
  Vector operator-() const;
  /// Scalar multiple t * v.
  Vector scaled(std::int64_t t) const;

  friend bool operator==(const Vector& a, const Vector& b) noexcept {
    return a.m_ == b.m_ && a.c_ == b.c_;
  }
  /// Lexicographic on coordinates.
  friend std::strong_ordering operator<=>(const Vector& a, const Vector& b) noexcept {
    return a.c_ <=> b.c_;
  }

 private:
  Vector(const Modulus& m, std::vector<residue_t> c) : m_(m), c_(std::move(c)) {}

  Modulus m_;
  std::vector<residue_t> c_;
};

std::ostream& operator<<(std::ostream& os, const Vector& v);

/// Sum of squared coordinates. Not a metric over Z_q.
RingElem norm(const Vector& x);
/// x_1 y_1 + ... + x_d y_d. Throws DimensionMismatch.
RingElem dot(const Vector& x, const Vector& y);
/// u_1 v_2 - u_2 v_1 for planar vectors. Throws DimensionMismatch otherwise.
RingElem det2(const Vector& u, const Vector& v);

/// Every x in Z_q^d with norm(x) == j, in lexicographic order (full scan).
std::vector<Vector> sphere_points(const RingElem& j, int d);

/// All points of Z_q^d in lexicographic order.
std::vector<Vector> all_points(const Modulus& m, int d);

/// The n with v in Lambda_n: p^n divides both coordinates but p^{n+1} does not
/// divide both. Returns l for the zero vector.
int stratum_of(const Vector& v);

/// |Lambda_n| = p^{2(l-n)} - p^{2(l-n-1)} for 0 <= n <= l-1; throws OutOfRange.
std::int64_t stratum_size(const Modulus& m, int n);

/// Lambda_n enumerated by scanning the plane.
std::vector<Vector> stratum_points(const Modulus& m, int n);

/// The cyclic submodule {t g : t in Z_q} of Z_q^2.
///
/// Lines are stored by a canonical generator p^n (h_1, h_2) where (h_1, h_2) is
/// taken mod p^{l-n} and its first unit coordinate is scaled to 1. Two Line
/// values compare equal exactly when they have the same point set.
class Line {
 public:
  /// Throws ZeroVector for g == 0 and DimensionMismatch unless g is planar.
  explicit Line(const Vector& g);

  const Vector& generator() const noexcept { return gen_; }
  const Modulus& modulus() const noexcept { return gen_.modulus(); }
  /// The n with generator in Lambda_n; the line belongs to L_n.
  int stratum() const noexcept { return stratum_; }
  /// Number of points, p^{l-n}.
  std::int64_t size() const;
  bool contains(const Vector& v) const;
  /// The points t * generator for t in [0, p^{l-n}), sorted.
  std::vector<Vector> points() const;

  friend bool operator==(const Line& a, const Line& b) noexcept { return a.gen_ == b.gen_; }
  friend std::strong_ordering operator<=>(const Line& a, const Line& b) noexcept {
    return a.gen_ <=> b.gen_;
  }

 private:
  Vector gen_;
  int stratum_;
};

std::ostream& operator<<(std::ostream& os, const Line& line);

/// L_n: the distinct lines generated by points of Lambda_n, sorted by generator.
/// Throws OutOfRange unless 0 <= n <= l-1.
std::vector<Line> lines_in_stratum(const Modulus& m, int n);

/// |L_n| = p^{l-n} + p^{l-n-1}.
std::int64_t lines_in_stratum_count(const Modulus& m, int n);

/// The lines of L_0 that contain v. There are p^{stratum_of(v)} of them.
/// Throws ZeroVector for v == 0.
std::vector<Line> lines_through(const Vector& v);

/// Mean number of points per line over L_0 ... L_{l-1}. Diagnostic only.
double mean_points_per_line(const Modulus& m);

}  // namespace zqgeom
