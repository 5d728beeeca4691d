#pragma once

// Discrete Fourier analysis on Z_q^d with the normalization
//   fhat(m) = q^{-d} sum_x chi(-x.m) f(x),   f(x) = sum_m chi(x.m) fhat(m),
// where chi(t) = exp(2 pi i t / q).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zqgeom/errors.hpp"
#include "zqgeom/geometry.hpp"
#include "zqgeom/orthogroup.hpp"
#include "zqgeom/point_set.hpp"

namespace zqgeom::fourier {

using complex_t = std::complex<double>;

/// The q-th roots of unity, indexed by residue.
class CharacterTable {
 public:
  explicit CharacterTable(const Modulus& m);
  /// chi(t) = exp(2 pi i t / q) for a canonical residue t.
  complex_t operator()(residue_t t) const { return roots_[static_cast<std::size_t>(t)]; }
  const Modulus& modulus() const noexcept { return m_; }

 private:
  Modulus m_;
  std::vector<complex_t> roots_;
};

/// A complex table indexed by Z_q^d in row-major order. The tag keeps spatial
/// and frequency tables apart at compile time.
template <class Tag>
class Table {
 public:
  /// Zero-filled table.
  Table(const Modulus& m, int d) : m_(m), d_(d), values_(checked_size(m, d)) {}
  /// Throws DimensionMismatch unless values.size() == q^d.
  Table(const Modulus& m, int d, std::vector<complex_t> values)
      : m_(m), d_(d), values_(std::move(values)) {
    if (values_.size() != checked_size(m, d)) {
      throw DimensionMismatch("table length " + std::to_string(values_.size()) +
                              " does not match q^d");
    }
  }

  const Modulus& modulus() const noexcept { return m_; }
  int dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return values_.size(); }

  complex_t& operator[](std::size_t i) { return values_[i]; }
  const complex_t& operator[](std::size_t i) const { return values_[i]; }
  complex_t& at(const Vector& v) { return values_.at(static_cast<std::size_t>(flat_index(v))); }
  const complex_t& at(const Vector& v) const {
    return values_.at(static_cast<std::size_t>(flat_index(v)));
  }

  std::span<complex_t> values() noexcept { return values_; }
  std::span<const complex_t> values() const noexcept { return values_; }

 private:
  static std::size_t checked_size(const Modulus& m, int d) {
    if (d < 1) throw DimensionMismatch("table dimension must be >= 1");
    std::size_t n = 1;
    for (int i = 0; i < d; ++i) {
      n *= static_cast<std::size_t>(m.q());
      if (n > (std::size_t{1} << 24)) throw TooLarge("q^d too large for a dense table");
    }
    return n;
  }

  Modulus m_;
  int d_;
  std::vector<complex_t> values_;
};

struct SpatialTag {};
struct FrequencyTag {};

using GridFunction = Table<SpatialTag>;
using SpectrumTable = Table<FrequencyTag>;

/// Direct evaluation of the defining sum, O(q^{2d}). Reference path.
SpectrumTable forward_naive(const GridFunction& f);
GridFunction inverse_naive(const SpectrumTable& fhat);

/// One length-q pass per axis, O(d q^{d+1}).
SpectrumTable forward(const GridFunction& f);
GridFunction inverse(const SpectrumTable& fhat);

/// |sum_m |fhat(m)|^2 - q^{-d} sum_x |f(x)|^2|.
double plancherel_gap(const GridFunction& f);

/// sum_x chi(x.m) over Z_q^d.
complex_t character_sum(const Vector& freq);

/// Indicator function of E.
GridFunction indicator(const PointSet& e);

/// Largest entrywise modulus of a - b. Throws DimensionMismatch on shape mismatch.
template <class Tag>
double max_abs_diff(const Table<Tag>& a, const Table<Tag>& b) {
  if (a.size() != b.size() || a.dim() != b.dim()) {
    throw DimensionMismatch("tables of different shape");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

/// q^2 Ehat(xi) Ehat(-theta^T xi): the closed form of the transform of the
/// rotation correlation count nu_theta, given Ehat = forward(indicator(E)).
complex_t rotation_correlation_spectrum(const SpectrumTable& ehat, const Rotation& theta,
                                        const Vector& xi);

}  // namespace zqgeom::fourier
