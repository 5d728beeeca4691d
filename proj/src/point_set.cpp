#include "zqgeom/point_set.hpp"

#include <algorithm>
#include <string>

#include "zqgeom/errors.hpp"

namespace zqgeom {

PointSet::PointSet(const Modulus& m, int d) : m_(m), d_(d) {
  if (d < 1) throw DimensionMismatch("point set dimension must be >= 1");
}

PointSet::PointSet(const Modulus& m, int d, std::vector<Vector> points)
    : PointSet(m, d) {
  for (const auto& v : points) {
    if (v.dim() != d) {
      throw DimensionMismatch("point " + std::to_string(v.dim()) + "-dimensional in a " +
                              std::to_string(d) + "-dimensional set");
    }
    if (!(v.modulus() == m)) throw ModulusMismatch("point lives in a different ring");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  pts_ = std::move(points);
}

PointSet PointSet::product(const Modulus& m, int d, std::span<const std::int64_t> base) {
  std::vector<std::int64_t> a;
  a.reserve(base.size());
  for (auto x : base) a.push_back(m.reduce(x));
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());

  PointSet out(m, d);
  if (!a.empty()) {
    // Odometer over a^d; lexicographic because a is sorted.
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    std::vector<std::int64_t> c(static_cast<std::size_t>(d));
    while (true) {
      for (std::size_t i = 0; i < idx.size(); ++i) c[i] = a[idx[i]];
      out.pts_.emplace_back(m, std::span<const std::int64_t>(c));
      int i = d - 1;
      for (; i >= 0; --i) {
        auto& k = idx[static_cast<std::size_t>(i)];
        if (++k < a.size()) break;
        k = 0;
      }
      if (i < 0) break;
    }
  }
  out.base_ = std::move(a);
  return out;
}

PointSet PointSet::full(const Modulus& m, int d) {
  std::vector<std::int64_t> all(static_cast<std::size_t>(m.q()));
  for (std::int64_t x = 0; x < m.q(); ++x) all[static_cast<std::size_t>(x)] = x;
  return product(m, d, all);
}

bool PointSet::contains(const Vector& v) const {
  return std::binary_search(pts_.begin(), pts_.end(), v);
}

std::vector<std::int64_t> PointSet::flat_indices() const {
  std::vector<std::int64_t> out;
  out.reserve(pts_.size());
  for (const auto& v : pts_) out.push_back(flat_index(v));
  return out;
}

std::int64_t flat_index(const Vector& v) {
  std::int64_t idx = 0;
  for (auto c : v.coords()) idx = idx * v.modulus().q() + c;
  return idx;
}

Vector from_flat_index(const Modulus& m, int d, std::int64_t index) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(d));
  for (int i = d - 1; i >= 0; --i) {
    c[static_cast<std::size_t>(i)] = index % m.q();
    index /= m.q();
  }
  return Vector(m, std::span<const std::int64_t>(c));
}

}  // namespace zqgeom
