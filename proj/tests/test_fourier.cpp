#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "zqgeom/configsets.hpp"
#include "zqgeom/errors.hpp"
#include "zqgeom/fourier.hpp"
#include "zqgeom/orthogroup.hpp"

using namespace zqgeom;
using fourier::complex_t;

namespace {

fourier::GridFunction random_function(const Modulus& m, int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  fourier::GridFunction f(m, d);
  for (auto& v : f.values()) v = {u(rng), u(rng)};
  return f;
}

// Defining sum evaluated from scratch with std::polar.
complex_t direct_coefficient(const fourier::GridFunction& f, const Vector& freq) {
  const Modulus& m = f.modulus();
  const double q = static_cast<double>(m.q());
  complex_t s{0, 0};
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Vector x = from_flat_index(m, f.dim(), static_cast<std::int64_t>(k));
    const double phase = -2.0 * std::numbers::pi * static_cast<double>(dot(x, freq).value()) / q;
    s += std::polar(1.0, phase) * f[k];
  }
  return s / std::pow(q, f.dim());
}

}  // namespace

TEST_CASE("forward transform examples") {
  for (std::int64_t q : {3, 9, 5}) {
    const Modulus m = Modulus::from_q(q);
    for (int d : {1, 2}) {
      fourier::GridFunction delta(m, d);
      delta[0] = 1.0;
      const auto dh = fourier::forward(delta);
      for (const auto& v : dh.values()) CHECK(std::abs(v - std::pow(double(q), -d)) < 1e-12);

      fourier::GridFunction one(m, d);
      for (auto& v : one.values()) v = 1.0;
      const auto oh = fourier::forward(one);
      CHECK(std::abs(oh[0] - 1.0) < 1e-9);
      for (std::size_t k = 1; k < oh.size(); ++k) CHECK(std::abs(oh[k]) < 1e-9);
    }
  }
  const Modulus m3(3, 1);
  fourier::GridFunction f(m3, 2);
  f.at(Vector(m3, {1, 0})) = 1.0;
  const auto fh = fourier::forward(f);
  for (std::int64_t k = 0; k < 9; ++k) {
    const auto m1 = static_cast<double>(k / 3);
    const complex_t want = std::polar(1.0 / 9.0, -2.0 * std::numbers::pi * m1 / 3.0);
    CHECK(std::abs(fh[static_cast<std::size_t>(k)] - want) < 1e-12);
  }
}

TEST_CASE("transforms agree with the defining sum") {
  std::mt19937_64 rng(3);
  for (std::int64_t q : {3, 9, 7}) {
    const Modulus m = Modulus::from_q(q);
    for (int d : {1, 2, 3}) {
      if (q > 3 && d == 3) continue;
      const auto f = random_function(m, d, rng);
      const auto fh = fourier::forward(f);
      const auto naive = fourier::forward_naive(f);
      CHECK(fourier::max_abs_diff(fh, naive) < 1e-10);
      for (std::size_t k = 0; k < fh.size(); k += 5) {
        CHECK(std::abs(fh[k] - direct_coefficient(f, from_flat_index(m, d, std::int64_t(k)))) <
              1e-10);
      }
      CHECK(fourier::max_abs_diff(fourier::inverse(fh), f) < 1e-10);
      CHECK(fourier::max_abs_diff(fourier::inverse_naive(naive), f) < 1e-10);
      CHECK(fourier::plancherel_gap(f) < 1e-10);
    }
  }
}

TEST_CASE("inverse examples") {
  const Modulus m(3, 2);
  fourier::SpectrumTable delta(m, 2);
  delta[0] = 1.0;
  for (const auto& v : fourier::inverse(delta).values()) CHECK(std::abs(v - 1.0) < 1e-12);
  const fourier::SpectrumTable zero(m, 2);
  for (const auto& v : fourier::inverse(zero).values()) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("plancherel gap") {
  const Modulus m(3, 2);
  fourier::GridFunction point(m, 2);
  point[17] = 1.0;
  CHECK(fourier::plancherel_gap(point) < 1e-12);
  CHECK(fourier::plancherel_gap(fourier::GridFunction(m, 2)) == 0.0);
}

TEST_CASE("character sums vanish off zero") {
  const Modulus m(3, 2);
  CHECK(std::abs(fourier::character_sum(Vector::zero(m, 2)) - 81.0) < 1e-9);
  for (const auto& v : all_points(m, 2)) {
    if (!v.is_zero()) CHECK(std::abs(fourier::character_sum(v)) < 1e-9);
  }
}

TEST_CASE("shape errors") {
  const Modulus m(3, 1);
  CHECK_THROWS_AS(fourier::GridFunction(m, 2, std::vector<complex_t>(8)), DimensionMismatch);
  CHECK_THROWS_AS(fourier::max_abs_diff(fourier::GridFunction(m, 1), fourier::GridFunction(m, 2)),
                  DimensionMismatch);
  CHECK_THROWS_AS(fourier::GridFunction(Modulus(7, 4), 3), TooLarge);
}

TEST_CASE("spectral identity for rotation correlations") {
  const Modulus m(3, 2);
  std::mt19937_64 rng(9);
  const auto group = so2_elements(m);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Vector> pts;
    for (int i = 0; i < 10; ++i) {
      pts.push_back(Vector(m, {std::int64_t(rng() % 9), std::int64_t(rng() % 9)}));
    }
    const PointSet e(m, 2, pts);
    const auto ehat = fourier::forward(fourier::indicator(e));
    for (const auto& theta : group) {
      const auto nuhat = fourier::forward(to_grid(rotation_correlation(e, theta)));
      for (std::int64_t k = 0; k < 81; ++k) {
        const auto want =
            fourier::rotation_correlation_spectrum(ehat, theta, from_flat_index(m, 2, k));
        CHECK(std::abs(nuhat[static_cast<std::size_t>(k)] - want) < 1e-8);
      }
    }
  }
}
