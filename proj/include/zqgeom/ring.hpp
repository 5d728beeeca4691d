#pragma once

// Exact arithmetic in the cyclic ring Z_q, q = p^l with p an odd prime.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace zqgeom {

/// Canonical residue type. Always kept in [0, q).
using residue_t = std::int64_t;

/// Largest admissible q. Keeps every product of two residues below 2^62.
inline constexpr std::int64_t kMaxModulus = std::int64_t{1} << 31;

/// Trial-division primality test.
bool is_prime(std::int64_t n);

/// Inverse of a modulo n via the extended Euclidean algorithm.
/// Throws NonUnit when gcd(a, n) != 1 (the reported valuation is 0 since n
/// need not be a prime power here; ring-level callers report the real one).
std::int64_t inverse_mod(std::int64_t a, std::int64_t n);

/// The ring parameters (p, l, q = p^l).
class Modulus {
 public:
  /// Throws InvalidModulus unless p is an odd prime, l >= 1 and p^l <= 2^31.
  Modulus(std::int64_t p, int l);

  /// Recovers (p, l) from an odd prime power q.
  static Modulus from_q(std::int64_t q);

  std::int64_t p() const noexcept { return p_; }
  int l() const noexcept { return l_; }
  std::int64_t q() const noexcept { return q_; }

  /// p^i for 0 <= i <= l.
  std::int64_t pow_p(int i) const;

  residue_t reduce(std::int64_t x) const noexcept {
    x %= q_;
    return x < 0 ? x + q_ : x;
  }
  residue_t add(residue_t a, residue_t b) const noexcept {
    const residue_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  residue_t sub(residue_t a, residue_t b) const noexcept {
    return a >= b ? a - b : a - b + q_;
  }
  residue_t neg(residue_t a) const noexcept { return a == 0 ? 0 : q_ - a; }
  residue_t mul(residue_t a, residue_t b) const noexcept { return (a * b) % q_; }

  /// True when p = 3 mod 4, i.e. -1 is not a square mod p.
  bool minus_one_nonresidue() const noexcept { return p_ % 4 == 3; }

  friend bool operator==(const Modulus& a, const Modulus& b) noexcept {
    return a.p_ == b.p_ && a.l_ == b.l_;
  }

 private:
  std::int64_t p_;
  int l_;
  std::int64_t q_;
};

std::ostream& operator<<(std::ostream& os, const Modulus& m);

/// An element of Z_q, stored as its canonical residue.
class RingElem {
 public:
  RingElem(const Modulus& m, std::int64_t x) : m_(m), v_(m.reduce(x)) {}

  residue_t value() const noexcept { return v_; }
  const Modulus& modulus() const noexcept { return m_; }

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator-() const { return RingElem(m_, m_.neg(v_)); }
  RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
  RingElem& operator-=(const RingElem& o) { return *this = *this - o; }
  RingElem& operator*=(const RingElem& o) { return *this = *this * o; }

  RingElem pow(std::uint64_t e) const;

  bool is_unit() const noexcept { return v_ % m_.p() != 0; }

  friend bool operator==(const RingElem& a, const RingElem& b) noexcept {
    return a.v_ == b.v_ && a.m_ == b.m_;
  }
  friend std::strong_ordering operator<=>(const RingElem& a, const RingElem& b) noexcept {
    return a.v_ <=> b.v_;
  }

 private:
  Modulus m_;
  residue_t v_;
};

std::ostream& operator<<(std::ostream& os, const RingElem& x);

/// p-adic valuation of a canonical residue: the largest i <= l with p^i | x.
/// valuation(0) == l.
int valuation(residue_t x, const Modulus& m);
inline int valuation(const RingElem& x) { return valuation(x.value(), x.modulus()); }

/// Multiplicative inverse. Throws NonUnit carrying valuation(x) when x is a zero divisor.
RingElem inverse(const RingElem& x);

/// Integer polynomial, coefficients lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<std::int64_t> coefficients);

  std::span<const std::int64_t> coefficients() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  Polynomial derivative() const;

  /// f(x) mod n, for 1 <= n <= 2^31.
  std::int64_t eval_mod(std::int64_t x, std::int64_t n) const;

 private:
  std::vector<std::int64_t> coeffs_;
};

/// Lifts a simple root r of f mod p to the unique root mod p^l congruent to r mod p.
/// The lift proceeds one power of p at a time: r_{k+1} = r_k + t p^k where t solves
/// f(r_k)/p^k + t f'(r_k) = 0 mod p.
/// Throws NotARoot if f(r) != 0 mod p and SingularRoot if f'(r) == 0 mod p.
RingElem hensel_lift_root(const Polynomial& f, std::int64_t r, const Modulus& m);

}  // namespace zqgeom
