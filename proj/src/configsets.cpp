#include "zqgeom/configsets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "zqgeom/errors.hpp"

namespace zqgeom {

namespace {

std::set<RingElem> to_set(const Modulus& m, const std::vector<bool>& seen) {
  std::set<RingElem> out;
  for (std::size_t t = 0; t < seen.size(); ++t) {
    if (seen[t]) out.emplace_hint(out.end(), m, static_cast<std::int64_t>(t));
  }
  return out;
}

void require_planar(const PointSet& e, const char* what) {
  if (e.dim() != 2) throw DimensionMismatch(std::string(what) + " needs a planar point set");
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw TooLarge("stratum count overflows 64 bits");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw TooLarge("stratum count overflows 64 bits");
  return r;
}

std::int64_t stratum_bound(const Modulus& m) {
  std::int64_t b = 2;
  for (int i = 0; i < 4 * m.l() - 1; ++i) b = checked_mul(b, m.p());
  return b;
}

}  // namespace

CountTable::CountTable(const Modulus& m, int index_dim) : m_(m), k_(index_dim) {
  if (index_dim < 1 || index_dim > 2) throw DimensionMismatch("count tables index Z_q or Z_q^2");
  const auto q = static_cast<std::size_t>(m.q());
  counts_.assign(index_dim == 1 ? q : q * q, 0);
}

std::int64_t CountTable::at(const Vector& v) const {
  if (v.dim() != k_) throw DimensionMismatch("index dimension mismatch");
  return counts_.at(static_cast<std::size_t>(flat_index(v)));
}

std::int64_t CountTable::at(const RingElem& t) const {
  if (k_ != 1) throw DimensionMismatch("scalar index into a planar table");
  return counts_.at(static_cast<std::size_t>(t.value()));
}

std::int64_t CountTable::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

std::int64_t CountTable::max() const {
  return counts_.empty() ? 0 : *std::max_element(counts_.begin(), counts_.end());
}

std::vector<double> CountTable::as_reals() const {
  return {counts_.begin(), counts_.end()};
}

std::set<RingElem> distance_set(const PointSet& e) {
  const Modulus& m = e.modulus();
  std::vector<bool> seen(static_cast<std::size_t>(m.q()), false);
  for (const auto& x : e) {
    for (const auto& y : e) {
      residue_t s = 0;
      for (int k = 0; k < e.dim(); ++k) {
        const residue_t d = m.sub(x[k], y[k]);
        s = m.add(s, m.mul(d, d));
      }
      seen[static_cast<std::size_t>(s)] = true;
    }
  }
  return to_set(m, seen);
}

std::set<RingElem> product_set(const PointSet& e) {
  const Modulus& m = e.modulus();
  std::vector<bool> seen(static_cast<std::size_t>(m.q()), false);
  for (const auto& x : e) {
    for (const auto& y : e) seen[static_cast<std::size_t>(dot(x, y).value())] = true;
  }
  return to_set(m, seen);
}

std::set<RingElem> area_set_v2(const PointSet& e) {
  require_planar(e, "area_set_v2");
  const Modulus& m = e.modulus();
  std::vector<bool> seen(static_cast<std::size_t>(m.q()), false);
  for (const auto& x3 : e) {
    for (const auto& x1 : e) {
      const residue_t a0 = m.sub(x1[0], x3[0]), a1 = m.sub(x1[1], x3[1]);
      for (const auto& x2 : e) {
        const residue_t b0 = m.sub(x2[0], x3[0]), b1 = m.sub(x2[1], x3[1]);
        seen[static_cast<std::size_t>(m.sub(m.mul(a0, b1), m.mul(a1, b0)))] = true;
      }
    }
  }
  seen[0] = false;
  return to_set(m, seen);
}

CountTable dot_count(const PointSet& e) {
  CountTable nu(e.modulus(), 1);
  for (const auto& x : e) {
    for (const auto& y : e) ++nu[static_cast<std::size_t>(dot(x, y).value())];
  }
  return nu;
}

CountTable rotation_correlation(const PointSet& e, const Rotation& theta) {
  require_planar(e, "rotation_correlation");
  if (!(theta.modulus() == e.modulus())) throw ModulusMismatch("rotation over a different ring");
  CountTable nu(e.modulus(), 2);
  std::vector<Vector> turned;
  turned.reserve(e.size());
  for (const auto& v : e) turned.push_back(theta.apply(v));
  for (const auto& u : e) {
    for (const auto& tv : turned) ++nu[static_cast<std::size_t>(flat_index(u - tv))];
  }
  return nu;
}

std::int64_t rotation_correlation_cubes(const PointSet& e) {
  require_planar(e, "rotation_correlation_cubes");
  const Modulus& m = e.modulus();
  const PlaneAction action(m);
  const std::int64_t q = m.q();
  const auto idx = e.flat_indices();
  std::vector<std::int64_t> nu(static_cast<std::size_t>(q * q));
  std::int64_t total = 0;
  for (std::size_t r = 0; r < action.group_order(); ++r) {
    std::fill(nu.begin(), nu.end(), 0);
    for (auto u : idx) {
      for (auto v : idx) {
        const std::int64_t tv = action.image(r, v);
        const std::int64_t t = m.sub(u / q, tv / q) * q + m.sub(u % q, tv % q);
        ++nu[static_cast<std::size_t>(t)];
      }
    }
    for (auto c : nu) total += c * c * c;
  }
  return total;
}

MomentBound third_moment_bound(std::span<const double> f, int n) {
  if (n < 2) throw OutOfRange("moment order must be >= 2, got " + std::to_string(n));
  if (f.empty()) throw OutOfRange("moment bound over an empty index set");
  double l1 = 0.0, linf = 0.0, lhs = 0.0;
  for (double v : f) {
    if (v < 0.0) throw NegativeValue("moment bound needs a nonnegative function");
    l1 += v;
    linf = std::max(linf, v);
    lhs += std::pow(v, n);
  }
  const double size = static_cast<double>(f.size());
  const double mean = l1 / size;
  double spread = 0.0;
  for (double v : f) spread += (v - mean) * (v - mean);
  const double rhs = size * std::pow(mean, n) +
                     0.5 * n * (n - 1) * std::pow(linf, n - 2) * spread;
  return {lhs, rhs};
}

MomentBound third_moment_bound(const CountTable& f, int n) {
  const auto reals = f.as_reals();
  return third_moment_bound(reals, n);
}

StratumCounts difference_stratum_counts(const Modulus& m) {
  StratumCounts out;
  out.bound = stratum_bound(m);
  const std::int64_t q = m.q();
  for (int i = 1; i < m.l(); ++i) {
    const std::int64_t hi = checked_mul(q, m.pow_p(m.l() - i));
    const std::int64_t lo = checked_mul(q, m.pow_p(m.l() - i - 1));
    const std::int64_t ri = checked_mul(hi, hi) - checked_mul(lo, lo);
    out.r.push_back(ri);
    out.weighted = checked_add(out.weighted, checked_mul(ri, m.pow_p(i)));
  }
  return out;
}

StratumCounts difference_stratum_counts_enumerated(const Modulus& m) {
  const std::int64_t q = m.q();
  if (q * q > 4096) throw TooLarge("pair enumeration limited to q^2 <= 4096");
  StratumCounts out;
  out.bound = stratum_bound(m);
  out.r.assign(static_cast<std::size_t>(std::max(m.l() - 1, 0)), 0);
  // Valuation of both coordinate differences; x - y is in Lambda_i when the
  // smaller of the two equals i.
  std::vector<int> val(static_cast<std::size_t>(q));
  for (std::int64_t x = 0; x < q; ++x) val[static_cast<std::size_t>(x)] = valuation(x, m);
  for (std::int64_t x0 = 0; x0 < q; ++x0)
    for (std::int64_t x1 = 0; x1 < q; ++x1)
      for (std::int64_t y0 = 0; y0 < q; ++y0)
        for (std::int64_t y1 = 0; y1 < q; ++y1) {
          const int i = std::min(val[static_cast<std::size_t>(m.sub(x0, y0))],
                                 val[static_cast<std::size_t>(m.sub(x1, y1))]);
          if (i >= 1 && i <= m.l() - 1) ++out.r[static_cast<std::size_t>(i - 1)];
        }
  for (int i = 1; i < m.l(); ++i) {
    out.weighted =
        checked_add(out.weighted, checked_mul(out.r[static_cast<std::size_t>(i - 1)], m.pow_p(i)));
  }
  return out;
}

PointSet sumset(const PointSet& e, const Line& line) {
  require_planar(e, "sumset");
  if (!(line.modulus() == e.modulus())) throw ModulusMismatch("line over a different ring");
  const Modulus& m = e.modulus();
  const std::int64_t q = m.q();
  std::vector<bool> hit(static_cast<std::size_t>(q * q), false);
  const auto pts = line.points();
  for (const auto& x : e) {
    for (const auto& y : pts) hit[static_cast<std::size_t>(flat_index(x + y))] = true;
  }
  std::vector<Vector> out;
  for (std::int64_t k = 0; k < q * q; ++k) {
    if (hit[static_cast<std::size_t>(k)]) out.push_back(from_flat_index(m, 2, k));
  }
  return PointSet(m, 2, std::move(out));
}

std::int64_t restricted_line_count(const PointSet& e, const Vector& x, int i) {
  const auto& base = e.product_base();
  if (!base) throw MissingProductTag("restricted_line_count needs E = A x ... x A");
  if (x.dim() != e.dim()) throw DimensionMismatch("x and E differ in dimension");
  const Modulus& m = e.modulus();
  if (i < 0 || i > m.l() - 1) {
    throw OutOfRange("stratum index must lie in [0, l-1], got " + std::to_string(i));
  }
  std::vector<bool> in_base(static_cast<std::size_t>(m.q()), false);
  for (auto a : *base) in_base[static_cast<std::size_t>(a)] = true;

  const std::int64_t limit = m.pow_p(m.l() - i);
  std::set<Vector> hits;
  for (std::int64_t s = 1; s < limit; ++s) {
    if (s % m.p() == 0) continue;
    Vector y = x.scaled(s);
    const auto c = y.coords();
    if (std::all_of(c.begin(), c.end(),
                    [&](residue_t v) { return in_base[static_cast<std::size_t>(v)]; })) {
      hits.insert(std::move(y));
    }
  }
  return static_cast<std::int64_t>(hits.size());
}

fourier::GridFunction to_grid(const CountTable& counts) {
  std::vector<fourier::complex_t> values(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) values[k] = static_cast<double>(counts[k]);
  return fourier::GridFunction(counts.modulus(), counts.index_dim(), std::move(values));
}

}  // namespace zqgeom
