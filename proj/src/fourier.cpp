#include "zqgeom/fourier.hpp"

#include <cmath>
#include <numbers>

namespace zqgeom::fourier {

namespace {

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// sum_x chi(sign * x.m) in(x) for every m, by the definition.
std::vector<complex_t> naive_transform(const Modulus& m, int d, std::span<const complex_t> in,
                                       int sign) {
  const CharacterTable chi(m);
  const std::int64_t q = m.q();
  const auto n = static_cast<std::size_t>(ipow(q, d));
  std::vector<complex_t> out(n);
  std::vector<std::int64_t> xs(static_cast<std::size_t>(d)), ms(static_cast<std::size_t>(d));
  for (std::size_t mi = 0; mi < n; ++mi) {
    auto rest = static_cast<std::int64_t>(mi);
    for (int k = d - 1; k >= 0; --k) {
      ms[static_cast<std::size_t>(k)] = rest % q;
      rest /= q;
    }
    complex_t acc{0.0, 0.0};
    std::fill(xs.begin(), xs.end(), 0);
    for (std::size_t xi = 0; xi < n; ++xi) {
      residue_t phase = 0;
      for (std::size_t k = 0; k < xs.size(); ++k) phase = m.add(phase, m.mul(xs[k], ms[k]));
      if (sign < 0) phase = m.neg(phase);
      acc += chi(phase) * in[xi];
      for (int k = d - 1; k >= 0; --k) {
        if (++xs[static_cast<std::size_t>(k)] < q) break;
        xs[static_cast<std::size_t>(k)] = 0;
      }
    }
    out[mi] = acc;
  }
  return out;
}

// In-place separable transform: a length-q DFT along each axis in turn.
void axis_transform(const Modulus& m, int d, std::span<complex_t> data, int sign) {
  const CharacterTable chi(m);
  const std::int64_t q = m.q();
  const auto n = static_cast<std::int64_t>(data.size());
  std::vector<complex_t> line(static_cast<std::size_t>(q)), out(static_cast<std::size_t>(q));
  for (int axis = 0; axis < d; ++axis) {
    const std::int64_t stride = ipow(q, d - 1 - axis);
    for (std::int64_t start = 0; start < n; ++start) {
      if ((start / stride) % q != 0) continue;  // not the first element of a line
      for (std::int64_t x = 0; x < q; ++x) {
        line[static_cast<std::size_t>(x)] = data[static_cast<std::size_t>(start + x * stride)];
      }
      for (std::int64_t k = 0; k < q; ++k) {
        complex_t acc{0.0, 0.0};
        residue_t phase = 0;
        const residue_t step = sign < 0 ? m.neg(k) : k;
        for (std::int64_t x = 0; x < q; ++x) {
          acc += chi(phase) * line[static_cast<std::size_t>(x)];
          phase = m.add(phase, step);
        }
        out[static_cast<std::size_t>(k)] = acc;
      }
      for (std::int64_t k = 0; k < q; ++k) {
        data[static_cast<std::size_t>(start + k * stride)] = out[static_cast<std::size_t>(k)];
      }
    }
  }
}

}  // namespace

CharacterTable::CharacterTable(const Modulus& m) : m_(m), roots_(static_cast<std::size_t>(m.q())) {
  const double q = static_cast<double>(m.q());
  for (std::int64_t t = 0; t < m.q(); ++t) {
    roots_[static_cast<std::size_t>(t)] =
        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / q);
  }
}

SpectrumTable forward_naive(const GridFunction& f) {
  auto out = naive_transform(f.modulus(), f.dim(), f.values(), -1);
  const double scale = 1.0 / static_cast<double>(f.size());
  for (auto& v : out) v *= scale;
  return SpectrumTable(f.modulus(), f.dim(), std::move(out));
}

GridFunction inverse_naive(const SpectrumTable& fhat) {
  return GridFunction(fhat.modulus(), fhat.dim(),
                      naive_transform(fhat.modulus(), fhat.dim(), fhat.values(), +1));
}

SpectrumTable forward(const GridFunction& f) {
  std::vector<complex_t> data(f.values().begin(), f.values().end());
  axis_transform(f.modulus(), f.dim(), data, -1);
  const double scale = 1.0 / static_cast<double>(f.size());
  for (auto& v : data) v *= scale;
  return SpectrumTable(f.modulus(), f.dim(), std::move(data));
}

GridFunction inverse(const SpectrumTable& fhat) {
  std::vector<complex_t> data(fhat.values().begin(), fhat.values().end());
  axis_transform(fhat.modulus(), fhat.dim(), data, +1);
  return GridFunction(fhat.modulus(), fhat.dim(), std::move(data));
}

double plancherel_gap(const GridFunction& f) {
  const SpectrumTable fhat = forward(f);
  double spectral = 0.0, spatial = 0.0;
  for (const auto& v : fhat.values()) spectral += std::norm(v);
  for (const auto& v : f.values()) spatial += std::norm(v);
  return std::abs(spectral - spatial / static_cast<double>(f.size()));
}

complex_t character_sum(const Vector& freq) {
  const Modulus& m = freq.modulus();
  const CharacterTable chi(m);
  complex_t acc{0.0, 0.0};
  for (const auto& x : all_points(m, freq.dim())) acc += chi(dot(x, freq).value());
  return acc;
}

GridFunction indicator(const PointSet& e) {
  GridFunction f(e.modulus(), e.dim());
  for (const auto& v : e) f.at(v) = 1.0;
  return f;
}

complex_t rotation_correlation_spectrum(const SpectrumTable& ehat, const Rotation& theta,
                                        const Vector& xi) {
  const double q = static_cast<double>(ehat.modulus().q());
  const Vector twisted = -theta.transpose().apply(xi);
  return q * q * ehat.at(xi) * ehat.at(twisted);
}

}  // namespace zqgeom::fourier
