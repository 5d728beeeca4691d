#pragma once

// Exact enumeration counters for configurations determined by a point set:
// distances, dot products, triangle areas, rotation-twisted difference counts,
// difference strata and sumsets with lines.

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "zqgeom/fourier.hpp"
#include "zqgeom/geometry.hpp"
#include "zqgeom/orthogroup.hpp"
#include "zqgeom/point_set.hpp"

namespace zqgeom {

/// Nonnegative counts indexed by Z_q^k (k = 1 for scalars, 2 for plane vectors).
class CountTable {
 public:
  CountTable(const Modulus& m, int index_dim);

  const Modulus& modulus() const noexcept { return m_; }
  int index_dim() const noexcept { return k_; }
  std::size_t size() const noexcept { return counts_.size(); }

  std::int64_t& operator[](std::size_t i) { return counts_[i]; }
  std::int64_t operator[](std::size_t i) const { return counts_[i]; }
  std::int64_t at(const Vector& v) const;
  std::int64_t at(const RingElem& t) const;

  std::span<const std::int64_t> counts() const noexcept { return counts_; }
  std::int64_t total() const;
  std::int64_t max() const;
  std::vector<double> as_reals() const;

 private:
  Modulus m_;
  int k_;
  std::vector<std::int64_t> counts_;
};

/// Delta(E) = {||x - y|| : x, y in E}, diagonal included.
std::set<RingElem> distance_set(const PointSet& e);

/// Pi(E) = {x.y : x, y in E}, diagonal included.
std::set<RingElem> product_set(const PointSet& e);

/// V_2(E): nonzero values of det(x1 - x3, x2 - x3) over ordered triples.
std::set<RingElem> area_set_v2(const PointSet& e);

/// nu(t) = #{(x, y) in E^2 : x.y = t}.
CountTable dot_count(const PointSet& e);

/// nu_theta(t) = #{(u, v) in E^2 : u - theta(v) = t}, indexed by Z_q^2.
CountTable rotation_correlation(const PointSet& e, const Rotation& theta);

/// sum over theta in SO_2 and t in Z_q^2 of nu_theta(t)^3.
std::int64_t rotation_correlation_cubes(const PointSet& e);

/// Both sides of the moment inequality
///   sum f^n <= |F| (|f|_1/|F|)^n + n(n-1)/2 |f|_inf^{n-2} sum (f - |f|_1/|F|)^2.
struct MomentBound {
  double lhs;
  double rhs;
};

/// Throws NegativeValue on a negative entry and OutOfRange for n < 2 or empty F.
MomentBound third_moment_bound(std::span<const double> f, int n);
MomentBound third_moment_bound(const CountTable& f, int n);

/// r_i = #{(x, y) in (Z_q^2)^2 : x - y in Lambda_i} for i = 1 .. l-1, and the
/// weighted sum r = sum r_i p^i with its bound 2 p^{4l-1}.
struct StratumCounts {
  std::vector<std::int64_t> r;  // r[i - 1] holds r_i
  std::int64_t weighted = 0;
  std::int64_t bound = 0;
};

/// Closed form r_i = (q p^{l-i})^2 - (q p^{l-i-1})^2. For l = 1 the list is
/// empty and r = 0.
StratumCounts difference_stratum_counts(const Modulus& m);

/// Same quantities by scanning every pair of plane points.
StratumCounts difference_stratum_counts_enumerated(const Modulus& m);

/// E + L = {e + x : e in E, x in L}.
PointSet sumset(const PointSet& e, const Line& line);

/// |E cap {s x : s a unit of Z_{p^{l-i}}}| for E = A^d carrying its product
/// tag, with s read as an integer in [1, p^{l-i}). Throws MissingProductTag.
std::int64_t restricted_line_count(const PointSet& e, const Vector& x, int i);

/// Real-valued copy of a count table over Z_q^2 (or Z_q), for transforms.
fourier::GridFunction to_grid(const CountTable& counts);

}  // namespace zqgeom
