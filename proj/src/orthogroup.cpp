#include "zqgeom/orthogroup.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_map>

#include "zqgeom/errors.hpp"

namespace zqgeom {

namespace {

void require_planar(const Vector& v) {
  if (v.dim() != 2) {
    throw DimensionMismatch("SO_2 acts on Z_q^2, got dimension " + std::to_string(v.dim()));
  }
}

// Dense pair tables are used while q^4 stays below this many entries.
constexpr std::int64_t kDensePairLimit = std::int64_t{1} << 22;

}  // namespace

Rotation::Rotation(const Modulus& m, std::int64_t a, std::int64_t b)
    : m_(m), a_(m.reduce(a)), b_(m.reduce(b)) {
  if (m.add(m.mul(a_, a_), m.mul(b_, b_)) != m.reduce(1)) {
    throw Error("(" + std::to_string(a_) + ", " + std::to_string(b_) +
                ") does not satisfy a^2 + b^2 = 1 mod " + std::to_string(m.q()));
  }
}

Rotation Rotation::compose(const Rotation& o) const {
  if (!(m_ == o.m_)) throw ModulusMismatch("rotations over different rings");
  const residue_t a = m_.sub(m_.mul(a_, o.a_), m_.mul(b_, o.b_));
  const residue_t b = m_.add(m_.mul(a_, o.b_), m_.mul(b_, o.a_));
  return Rotation(m_, a, b, Unchecked{});
}

Vector Rotation::apply(const Vector& v) const {
  require_planar(v);
  if (!(v.modulus() == m_)) throw ModulusMismatch("vector lives in a different ring");
  return Vector(m_, {m_.sub(m_.mul(a_, v[0]), m_.mul(b_, v[1])),
                     m_.add(m_.mul(b_, v[0]), m_.mul(a_, v[1]))});
}

std::ostream& operator<<(std::ostream& os, const Rotation& r) {
  return os << "[" << r.a() << ", " << r.b() << "]";
}

std::vector<Rotation> so2_elements(const Modulus& m) {
  std::vector<Rotation> out;
  const residue_t one = m.reduce(1);
  // For each a, solve b^2 = 1 - a^2 by scanning b: O(q^2), fine at desk scale.
  std::vector<residue_t> square(static_cast<std::size_t>(m.q()));
  for (residue_t x = 0; x < m.q(); ++x) square[static_cast<std::size_t>(x)] = m.mul(x, x);
  for (residue_t a = 0; a < m.q(); ++a) {
    const residue_t need = m.sub(one, square[static_cast<std::size_t>(a)]);
    for (residue_t b = 0; b < m.q(); ++b) {
      if (square[static_cast<std::size_t>(b)] == need) out.emplace_back(m, a, b);
    }
  }
  return out;
}

Vector rotate(const Rotation& theta, const Vector& v) { return theta.apply(v); }

std::vector<Rotation> stabilizer(const Vector& xi) {
  require_planar(xi);
  std::vector<Rotation> out;
  for (const auto& r : so2_elements(xi.modulus())) {
    if (r.apply(xi) == xi) out.push_back(r);
  }
  return out;
}

PlaneAction::PlaneAction(const Modulus& m) : m_(m), rots_(so2_elements(m)) {
  const std::int64_t q = m.q();
  if (q * q * static_cast<std::int64_t>(rots_.size()) > (std::int64_t{1} << 28)) {
    throw TooLarge("plane action table too large for q=" + std::to_string(q));
  }
  table_.resize(rots_.size() * static_cast<std::size_t>(q * q));
  std::size_t k = 0;
  for (const auto& r : rots_) {
    for (std::int64_t x = 0; x < q; ++x) {
      for (std::int64_t y = 0; y < q; ++y) {
        const auto u = m.sub(m.mul(r.a(), x), m.mul(r.b(), y));
        const auto v = m.add(m.mul(r.b(), x), m.mul(r.a(), y));
        table_[k++] = u * q + v;
      }
    }
  }
}

std::int64_t PlaneAction::stabilizer_size(std::int64_t index) const {
  std::int64_t n = 0;
  for (std::size_t r = 0; r < rots_.size(); ++r) n += image(r, index) == index;
  return n;
}

std::int64_t PlaneAction::canonical_pair(std::int64_t u_index, std::int64_t v_index) const {
  const std::int64_t n = plane_size();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t r = 0; r < rots_.size(); ++r) {
    best = std::min(best, image(r, u_index) * n + image(r, v_index));
  }
  return best;
}

TriangleClass triangle_class(const Vector& u, const Vector& v) {
  require_planar(u);
  require_planar(v);
  TriangleClass best{u, v};
  for (const auto& r : so2_elements(u.modulus())) {
    TriangleClass c{r.apply(u), r.apply(v)};
    if (c < best) best = std::move(c);
  }
  return best;
}

TriangleClass triangle_class(const Triangle& t) { return triangle_class(t[0] - t[1], t[1] - t[2]); }

std::optional<Rotation> congruent(const Triangle& t1, const Triangle& t2) {
  for (const auto& v : t1) require_planar(v);
  for (const auto& v : t2) require_planar(v);
  const Vector a1 = t1[0] - t1[1], b1 = t1[1] - t1[2];
  const Vector a2 = t2[0] - t2[1], b2 = t2[1] - t2[2];
  // The third difference is the sum of the other two, so two suffice.
  for (const auto& r : so2_elements(t1[0].modulus())) {
    if (r.apply(a2) == a1 && r.apply(b2) == b1) return r;
  }
  return std::nullopt;
}

ClassCensus t2_classes(const PointSet& e) {
  if (e.dim() != 2) throw DimensionMismatch("t2_classes needs a planar point set");
  const Modulus& m = e.modulus();
  const std::int64_t q = m.q();
  const std::int64_t plane = q * q;
  ClassCensus census;
  if (e.empty()) return census;

  const std::size_t n = e.size();
  std::vector<std::int64_t> diff(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      diff[i * n + j] = m.sub(e[i][0], e[j][0]) * q + m.sub(e[i][1], e[j][1]);
    }
  }

  // Count ordered triples by difference pair first, then canonicalize each
  // distinct pair once.
  std::unordered_map<std::int64_t, std::int64_t> sparse;
  std::vector<std::int64_t> dense;
  const bool use_dense = plane <= kDensePairLimit / plane;
  if (use_dense) dense.assign(static_cast<std::size_t>(plane * plane), 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::int64_t base = diff[x * n + y] * plane;
      const std::int64_t* row = &diff[y * n];
      if (use_dense) {
        for (std::size_t z = 0; z < n; ++z) ++dense[static_cast<std::size_t>(base + row[z])];
      } else {
        for (std::size_t z = 0; z < n; ++z) ++sparse[base + row[z]];
      }
    }
  }

  const PlaneAction action(m);
  std::map<std::int64_t, std::int64_t> by_key;
  auto accumulate = [&](std::int64_t pair, std::int64_t count) {
    by_key[action.canonical_pair(pair / plane, pair % plane)] += count;
  };
  if (use_dense) {
    for (std::size_t k = 0; k < dense.size(); ++k) {
      if (dense[k] != 0) accumulate(static_cast<std::int64_t>(k), dense[k]);
    }
  } else {
    for (const auto& [pair, count] : sparse) accumulate(pair, count);
  }
  for (const auto& [key, count] : by_key) {
    census.emplace_hint(census.end(),
                        TriangleClass{from_flat_index(m, 2, key / plane),
                                      from_flat_index(m, 2, key % plane)},
                        count);
  }
  return census;
}

std::int64_t sum_of_squares(const ClassCensus& census) {
  std::int64_t s = 0;
  for (const auto& [cls, mu] : census) s += mu * mu;
  return s;
}

}  // namespace zqgeom
