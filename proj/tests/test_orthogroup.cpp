#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "zqgeom/errors.hpp"
#include "zqgeom/orthogroup.hpp"

using namespace zqgeom;

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> as_pairs(const std::vector<Rotation>& rs) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& r : rs) out.emplace_back(r.a(), r.b());
  return out;
}

}  // namespace

TEST_CASE("so2 elements") {
  const Modulus m3(3, 1);
  CHECK(as_pairs(so2_elements(m3)) ==
        std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 1}, {0, 2}, {1, 0}, {2, 0}});
  CHECK(so2_elements(Modulus(3, 2)).size() == 12);
  CHECK(so2_elements(Modulus(5, 1)).size() == 4);
  for (std::int64_t q : {3, 9, 27, 5, 25, 7, 49}) {
    const Modulus m = Modulus::from_q(q);
    CHECK(as_pairs(so2_elements(m)) == oracle::so2(q));
    CHECK(static_cast<std::int64_t>(so2_elements(m).size()) == oracle::sphere_size(q, 1));
  }
  CHECK_THROWS_AS(Rotation(m3, 1, 1), Error);
}

TEST_CASE("rotate") {
  const Modulus m3(3, 1), m9(3, 2);
  const Vector v(m9, {4, 7});
  CHECK(rotate(Rotation::identity(m9), v) == v);
  CHECK(rotate(Rotation(m3, 0, 1), Vector(m3, {1, 0})) == Vector(m3, {0, 1}));
  CHECK(rotate(Rotation(m3, 2, 0), Vector(m3, {1, 2})) == Vector(m3, {2, 1}));
  // Rotations preserve the norm and the dot product.
  for (const auto& r : so2_elements(m9)) {
    for (const auto& u : all_points(m9, 2)) {
      CHECK(norm(rotate(r, u)) == norm(u));
      CHECK(dot(rotate(r, u), rotate(r, v)) == dot(u, v));
    }
  }
}

TEST_CASE("group structure") {
  const Modulus m(7, 2);
  const auto g = so2_elements(m);
  const std::set<Rotation> members(g.begin(), g.end());
  for (const auto& a : g) {
    CHECK(a.compose(a.inverse()) == Rotation::identity(m));
    CHECK(a.transpose() == a.inverse());
    for (const auto& b : g) {
      CHECK(members.contains(a.compose(b)));
      CHECK(a.compose(b) == b.compose(a));  // SO_2 is abelian
    }
  }
}

TEST_CASE("stabilizers") {
  const Modulus m9(3, 2);
  CHECK(stabilizer(Vector(m9, {1, 0})).size() == 1);
  const auto s = stabilizer(Vector(m9, {3, 3}));
  CHECK(as_pairs(s) == std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 0}, {1, 3}, {1, 6}});
  CHECK(stabilizer(Vector::zero(m9, 2)).size() == 12);
  for (std::int64_t q : {9, 25, 27}) {
    const Modulus m = Modulus::from_q(q);
    const PlaneAction action(m);
    for (std::int64_t k = 0; k < q * q; ++k) {
      const auto want = oracle::stabilizer_size(q, k / q, k % q);
      REQUIRE(action.stabilizer_size(k) == want);
      if (k % 7 == 0) {
        CHECK(static_cast<std::int64_t>(stabilizer(from_flat_index(m, 2, k)).size()) == want);
      }
    }
  }
}

TEST_CASE("congruence") {
  const Modulus m(3, 2);
  const Triangle t{Vector(m, {0, 1}), Vector(m, {2, 5}), Vector(m, {7, 3})};
  const Vector c(m, {4, 4});
  const Triangle shifted{t[0] + c, t[1] + c, t[2] + c};
  const auto w = congruent(t, shifted);
  REQUIRE(w.has_value());
  CHECK(*w == Rotation::identity(m));

  const Rotation r0(m, 1, 3);
  const Triangle turned{r0.apply(t[0]), r0.apply(t[1]), r0.apply(t[2])};
  const auto w2 = congruent(t, turned);
  REQUIRE(w2.has_value());
  for (int i = 0; i < 3; ++i) {
    CHECK(w2->apply(turned[i] - turned[(i + 1) % 3]) == t[i] - t[(i + 1) % 3]);
  }
  CHECK(triangle_class(t) == triangle_class(turned));

  const Modulus m3(3, 1);
  const Triangle a{Vector(m3, {0, 0}), Vector(m3, {1, 0}), Vector(m3, {0, 0})};
  const Triangle z{Vector(m3, {0, 0}), Vector(m3, {0, 0}), Vector(m3, {0, 0})};
  CHECK_FALSE(congruent(a, z).has_value());
}

TEST_CASE("triangle class census") {
  const Modulus m3(3, 1);
  const auto single = t2_classes(PointSet(m3, 2, {Vector(m3, {0, 0})}));
  REQUIRE(single.size() == 1);
  CHECK(single.begin()->second == 1);

  // Frozen from the orbit enumeration oracle.
  const auto full = t2_classes(PointSet::full(m3, 2));
  CHECK(full.size() == 21);
  CHECK(full.size() >= 14);
  CHECK(sum_of_squares(full) == 26001);

  const PointSet two(m3, 2, {Vector(m3, {0, 0}), Vector(m3, {1, 0})});
  const auto census = t2_classes(two);
  CHECK(census.size() == 4);
  for (const auto& [cls, mult] : census) CHECK(mult == 2);
  std::vector<std::array<std::int64_t, 4>> keys;
  for (const auto& [cls, mult] : census) keys.push_back({cls.u[0], cls.u[1], cls.v[0], cls.v[1]});
  CHECK(keys == std::vector<std::array<std::int64_t, 4>>{
                    {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 1, 0, 2}});
}

TEST_CASE("census matches the orbit oracle on random sets") {
  std::mt19937_64 rng(5);
  for (std::int64_t q : {5, 7, 9}) {
    const Modulus m = Modulus::from_q(q);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<std::pair<std::int64_t, std::int64_t>> raw;
      std::vector<Vector> pts;
      const int n = 1 + static_cast<int>(rng() % 15);
      for (int i = 0; i < n; ++i) {
        const auto x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
        const auto y = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
        pts.push_back(Vector(m, {x, y}));
      }
      const PointSet e(m, 2, pts);
      for (const auto& v : e) raw.emplace_back(v[0], v[1]);
      const auto want = oracle::t2_census(q, raw);
      const auto got = t2_classes(e);
      CHECK(static_cast<std::int64_t>(got.size()) == want.classes);
      CHECK(sum_of_squares(got) == want.sum_squares);
      std::int64_t total = 0;
      for (const auto& [cls, mult] : got) total += mult;
      CHECK(total == static_cast<std::int64_t>(e.size() * e.size() * e.size()));
    }
  }
}
