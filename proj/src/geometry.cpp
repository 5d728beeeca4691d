#include "zqgeom/geometry.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <string>

#include "zqgeom/errors.hpp"

namespace zqgeom {

namespace {

constexpr std::int64_t kMaxEnumeration = std::int64_t{1} << 26;

void require_planar(const Vector& v, const char* what) {
  if (v.dim() != 2) {
    throw DimensionMismatch(std::string(what) + " requires a vector of Z_q^2, got dimension " +
                            std::to_string(v.dim()));
  }
}

void require_compatible(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("dimension " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
  if (!(a.modulus() == b.modulus())) throw ModulusMismatch("vectors live in different rings");
}

}  // namespace

Vector::Vector(const Modulus& m, std::span<const std::int64_t> coords) : m_(m) {
  if (coords.empty()) throw DimensionMismatch("vector dimension must be >= 1");
  c_.reserve(coords.size());
  for (auto x : coords) c_.push_back(m.reduce(x));
}

Vector::Vector(const Modulus& m, std::initializer_list<std::int64_t> coords)
    : Vector(m, std::span<const std::int64_t>(coords.begin(), coords.size())) {}

Vector Vector::zero(const Modulus& m, int d) {
  if (d < 1) throw DimensionMismatch("vector dimension must be >= 1");
  return Vector(m, std::vector<residue_t>(static_cast<std::size_t>(d), 0));
}

bool Vector::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](residue_t x) { return x == 0; });
}

Vector Vector::operator+(const Vector& o) const {
  require_compatible(*this, o);
  std::vector<residue_t> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = m_.add(c_[i], o.c_[i]);
  return Vector(m_, std::move(r));
}

Vector Vector::operator-(const Vector& o) const {
  require_compatible(*this, o);
  std::vector<residue_t> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = m_.sub(c_[i], o.c_[i]);
  return Vector(m_, std::move(r));
}

Vector Vector::operator-() const {
  std::vector<residue_t> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = m_.neg(c_[i]);
  return Vector(m_, std::move(r));
}

Vector Vector::scaled(std::int64_t t) const {
  const residue_t s = m_.reduce(t);
  std::vector<residue_t> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = m_.mul(s, c_[i]);
  return Vector(m_, std::move(r));
}

std::ostream& operator<<(std::ostream& os, const Vector& v) {
  os << '(';
  for (int i = 0; i < v.dim(); ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

RingElem norm(const Vector& x) {
  const Modulus& m = x.modulus();
  residue_t s = 0;
  for (auto c : x.coords()) s = m.add(s, m.mul(c, c));
  return RingElem(m, s);
}

RingElem dot(const Vector& x, const Vector& y) {
  require_compatible(x, y);
  const Modulus& m = x.modulus();
  residue_t s = 0;
  for (int i = 0; i < x.dim(); ++i) s = m.add(s, m.mul(x[i], y[i]));
  return RingElem(m, s);
}

RingElem det2(const Vector& u, const Vector& v) {
  require_planar(u, "det2");
  require_planar(v, "det2");
  require_compatible(u, v);
  const Modulus& m = u.modulus();
  return RingElem(m, m.sub(m.mul(u[0], v[1]), m.mul(u[1], v[0])));
}

std::vector<Vector> all_points(const Modulus& m, int d) {
  if (d < 1) throw DimensionMismatch("dimension must be >= 1");
  std::int64_t total = 1;
  for (int i = 0; i < d; ++i) {
    total *= m.q();
    if (total > kMaxEnumeration) {
      throw TooLarge("q^d exceeds the enumeration limit for q=" + std::to_string(m.q()) +
                     ", d=" + std::to_string(d));
    }
  }
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::int64_t> c(static_cast<std::size_t>(d), 0);
  for (std::int64_t k = 0; k < total; ++k) {
    out.emplace_back(m, std::span<const std::int64_t>(c));
    for (int i = d - 1; i >= 0; --i) {
      auto& ci = c[static_cast<std::size_t>(i)];
      if (++ci < m.q()) break;
      ci = 0;
    }
  }
  return out;
}

std::vector<Vector> sphere_points(const RingElem& j, int d) {
  if (d < 2) throw DimensionMismatch("sphere_points requires d >= 2");
  std::vector<Vector> out;
  for (auto& x : all_points(j.modulus(), d)) {
    if (norm(x) == j) out.push_back(std::move(x));
  }
  return out;
}

int stratum_of(const Vector& v) {
  require_planar(v, "stratum_of");
  return std::min(valuation(v[0], v.modulus()), valuation(v[1], v.modulus()));
}

std::int64_t stratum_size(const Modulus& m, int n) {
  if (n < 0 || n > m.l() - 1) {
    throw OutOfRange("stratum index must lie in [0, l-1], got " + std::to_string(n));
  }
  const std::int64_t a = m.pow_p(m.l() - n);
  const std::int64_t b = m.pow_p(m.l() - n - 1);
  return a * a - b * b;
}

std::vector<Vector> stratum_points(const Modulus& m, int n) {
  if (n < 0 || n > m.l() - 1) {
    throw OutOfRange("stratum index must lie in [0, l-1], got " + std::to_string(n));
  }
  std::vector<Vector> out;
  for (auto& v : all_points(m, 2)) {
    if (!v.is_zero() && stratum_of(v) == n) out.push_back(std::move(v));
  }
  return out;
}

Line::Line(const Vector& g) : gen_(g), stratum_(0) {
  require_planar(g, "Line");
  if (g.is_zero()) throw ZeroVector("a line needs a nonzero generator");
  const Modulus& m = g.modulus();
  stratum_ = stratum_of(g);
  const std::int64_t pn = m.pow_p(stratum_);
  const std::int64_t sub = m.pow_p(m.l() - stratum_);
  std::int64_t h[2] = {g[0] / pn, g[1] / pn};
  const int k = (h[0] % m.p() != 0) ? 0 : 1;
  const std::int64_t inv = inverse_mod(h[k], sub);
  for (auto& x : h) x = (x * inv % sub) * pn;
  gen_ = Vector(m, {h[0], h[1]});
}

std::int64_t Line::size() const { return modulus().pow_p(modulus().l() - stratum_); }

bool Line::contains(const Vector& v) const {
  require_planar(v, "Line::contains");
  if (!(v.modulus() == modulus())) throw ModulusMismatch("vector lives in a different ring");
  const Modulus& m = modulus();
  const std::int64_t pn = m.pow_p(stratum_);
  // The canonical generator has one coordinate equal to p^n.
  const int k = gen_[0] == pn ? 0 : 1;
  if (v[k] % pn != 0) return false;
  return gen_.scaled(v[k] / pn) == v;
}

std::vector<Vector> Line::points() const {
  std::vector<Vector> out;
  const std::int64_t n = size();
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t t = 0; t < n; ++t) out.push_back(gen_.scaled(t));
  std::sort(out.begin(), out.end());
  return out;
}

std::ostream& operator<<(std::ostream& os, const Line& line) {
  return os << "<" << line.generator() << ">";
}

std::vector<Line> lines_in_stratum(const Modulus& m, int n) {
  std::set<Line> lines;
  for (const auto& v : stratum_points(m, n)) lines.emplace(v);
  return {lines.begin(), lines.end()};
}

std::int64_t lines_in_stratum_count(const Modulus& m, int n) {
  if (n < 0 || n > m.l() - 1) {
    throw OutOfRange("stratum index must lie in [0, l-1], got " + std::to_string(n));
  }
  return m.pow_p(m.l() - n) + m.pow_p(m.l() - n - 1);
}

std::vector<Line> lines_through(const Vector& v) {
  require_planar(v, "lines_through");
  if (v.is_zero()) throw ZeroVector("lines_through needs a nonzero point");
  const Modulus& m = v.modulus();
  // Canonical generators of L_0 are (1, c) and (c, 1) with p | c.
  std::vector<Line> out;
  for (std::int64_t c = 0; c < m.q(); ++c) {
    Line a(Vector(m, {1, c}));
    if (a.contains(v)) out.push_back(a);
  }
  for (std::int64_t c = 0; c < m.q(); c += m.p()) {
    Line b(Vector(m, {c, 1}));
    if (b.contains(v)) out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double mean_points_per_line(const Modulus& m) {
  double points = 0, lines = 0;
  for (int n = 0; n < m.l(); ++n) {
    const auto count = static_cast<double>(lines_in_stratum_count(m, n));
    points += count * static_cast<double>(m.pow_p(m.l() - n));
    lines += count;
  }
  return points / lines;
}

}  // namespace zqgeom
