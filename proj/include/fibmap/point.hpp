#pragma once

#include <cmath>
#include <complex>

namespace fibmap {

using Complex = std::complex<double>;

/// A phase-space point (x, y), either real or complex depending on S.
template <class S>
struct Pt {
  S x{};
  S y{};
};

using CPoint = Pt<Complex>;
using RPoint = Pt<double>;

inline double mag(double v) { return std::abs(v); }
inline double mag(const Complex& v) { return std::abs(v); }

inline bool finite_scalar(double v) { return std::isfinite(v); }
inline bool finite_scalar(const Complex& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template <class S>
bool is_finite(const Pt<S>& z) {
  return finite_scalar(z.x) && finite_scalar(z.y);
}

/// max{|x|, |y|} — the norm used throughout.
template <class S>
double max_norm(const Pt<S>& z) {
  return std::max(mag(z.x), mag(z.y));
}

template <class S>
double min_mod(const Pt<S>& z) {
  return std::min(mag(z.x), mag(z.y));
}

template <class S>
double dist(const Pt<S>& a, const Pt<S>& b) {
  return std::max(mag(a.x - b.x), mag(a.y - b.y));
}

inline CPoint to_complex(const RPoint& z) { return {Complex(z.x, 0.0), Complex(z.y, 0.0)}; }

/// Integer power by binary exponentiation; e may be negative (requires z != 0 then).
template <class S>
S pow_int(S z, long long e) {
  if (e < 0) return S(1) / pow_int(z, -e);
  S acc(1);
  S base = z;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

}  // namespace fibmap
