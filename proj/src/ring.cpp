#include "zqgeom/ring.hpp"

#include <ostream>
#include <string>
#include <utility>

#include "zqgeom/errors.hpp"

namespace zqgeom {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r0 = n, r1 = ((a % n) + n) % n;
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t quot = r0 / r1;
    r0 = std::exchange(r1, r0 - quot * r1);
    s0 = std::exchange(s1, s0 - quot * s1);
  }
  if (r0 != 1) throw NonUnit(0);
  return ((s0 % n) + n) % n;
}

Modulus::Modulus(std::int64_t p, int l) : p_(p), l_(l), q_(1) {
  if (p < 3 || !is_prime(p)) {
    throw InvalidModulus("p must be an odd prime, got " + std::to_string(p));
  }
  if (l < 1) throw InvalidModulus("l must be >= 1, got " + std::to_string(l));
  for (int i = 0; i < l; ++i) {
    if (q_ > kMaxModulus / p) {
      throw InvalidModulus("p^l exceeds 2^31 for p=" + std::to_string(p) +
                           ", l=" + std::to_string(l));
    }
    q_ *= p;
  }
}

Modulus Modulus::from_q(std::int64_t q) {
  if (q < 3 || q % 2 == 0) {
    throw InvalidModulus("q must be an odd prime power, got " + std::to_string(q));
  }
  std::int64_t p = 3;
  while (q % p != 0) p += 2;
  int l = 0;
  std::int64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++l;
  }
  if (rest != 1) {
    throw InvalidModulus("q must be an odd prime power, got " + std::to_string(q));
  }
  return Modulus(p, l);
}

std::int64_t Modulus::pow_p(int i) const {
  if (i < 0 || i > l_) throw OutOfRange("exponent out of [0, l]: " + std::to_string(i));
  std::int64_t r = 1;
  for (int k = 0; k < i; ++k) r *= p_;
  return r;
}

std::ostream& operator<<(std::ostream& os, const Modulus& m) {
  return os << "Z_" << m.q() << " (p=" << m.p() << ", l=" << m.l() << ")";
}

namespace {

void require_same(const Modulus& a, const Modulus& b) {
  if (!(a == b)) throw ModulusMismatch("operands live in different rings");
}

}  // namespace

RingElem RingElem::operator+(const RingElem& o) const {
  require_same(m_, o.m_);
  return RingElem(m_, m_.add(v_, o.v_));
}

RingElem RingElem::operator-(const RingElem& o) const {
  require_same(m_, o.m_);
  return RingElem(m_, m_.sub(v_, o.v_));
}

RingElem RingElem::operator*(const RingElem& o) const {
  require_same(m_, o.m_);
  return RingElem(m_, m_.mul(v_, o.v_));
}

RingElem RingElem::pow(std::uint64_t e) const {
  residue_t result = m_.reduce(1), base = v_;
  while (e > 0) {
    if (e & 1U) result = m_.mul(result, base);
    base = m_.mul(base, base);
    e >>= 1U;
  }
  return RingElem(m_, result);
}

std::ostream& operator<<(std::ostream& os, const RingElem& x) { return os << x.value(); }

int valuation(residue_t x, const Modulus& m) {
  x = m.reduce(x);
  if (x == 0) return m.l();
  int i = 0;
  while (x % m.p() == 0) {
    x /= m.p();
    ++i;
  }
  return i;
}

RingElem inverse(const RingElem& x) {
  const int v = valuation(x);
  if (v > 0) throw NonUnit(v);
  return RingElem(x.modulus(), inverse_mod(x.value(), x.modulus().q()));
}

Polynomial::Polynomial(std::vector<std::int64_t> coefficients)
    : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<std::int64_t> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    d[i - 1] = coeffs_[i] * static_cast<std::int64_t>(i);
  }
  return Polynomial(std::move(d));
}

std::int64_t Polynomial::eval_mod(std::int64_t x, std::int64_t n) const {
  auto red = [n](std::int64_t v) {
    v %= n;
    return v < 0 ? v + n : v;
  };
  x = red(x);
  std::int64_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = red(acc * x + red(*it));
  }
  return acc;
}

RingElem hensel_lift_root(const Polynomial& f, std::int64_t r, const Modulus& m) {
  const std::int64_t p = m.p();
  r = ((r % p) + p) % p;
  if (f.eval_mod(r, p) != 0) {
    throw NotARoot("f(" + std::to_string(r) + ") != 0 mod " + std::to_string(p));
  }
  const Polynomial df = f.derivative();
  const std::int64_t slope = df.eval_mod(r, p);
  if (slope == 0) {
    throw SingularRoot("f'(" + std::to_string(r) + ") == 0 mod " + std::to_string(p));
  }
  // f'(r_k) = f'(r) mod p for every lift, so the inverse slope is fixed.
  const std::int64_t slope_inv = inverse_mod(slope, p);

  std::int64_t pk = p;
  for (int k = 1; k < m.l(); ++k) {
    const std::int64_t next = pk * p;
    const std::int64_t residual = f.eval_mod(r, next) / pk;
    const std::int64_t t = ((p - residual % p) % p) * slope_inv % p;
    r += t * pk;
    pk = next;
  }
  return RingElem(m, r);
}

}  // namespace zqgeom
