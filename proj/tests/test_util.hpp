#pragma once

#include <cmath>
#include <complex>

#include "fibmap/context.hpp"
#include "fibmap/dynamics.hpp"
#include "fibmap/point.hpp"
#include "fibmap/rng.hpp"

namespace testutil {

using fibmap::Complex;
using fibmap::CPoint;
using fibmap::RPoint;

// |a - b| within n ulps of the larger magnitude
inline bool ulp_close(double a, double b, int n = 4) {
  if (a == b) return true;
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= n * scale * std::numeric_limits<double>::epsilon();
}

inline bool ulp_close(const Complex& a, const Complex& b, int n = 4) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= n * scale * std::numeric_limits<double>::epsilon();
}

template <class S>
bool pt_close_rel(const fibmap::Pt<S>& a, const fibmap::Pt<S>& b, double rtol) {
  const double sx = std::max({fibmap::mag(a.x), fibmap::mag(b.x), 1e-300});
  const double sy = std::max({fibmap::mag(a.y), fibmap::mag(b.y), 1e-300});
  return fibmap::mag(a.x - b.x) <= rtol * sx && fibmap::mag(a.y - b.y) <= rtol * sy;
}

// n-fold forward iteration at c=0: the brute-force oracle for the
// closed-form monomial maps
template <class S>
fibmap::Pt<S> iterate_forward_c0(fibmap::Pt<S> z, int n) {
  for (int k = 0; k < n; ++k) z = {z.x * z.y, z.x};
  return z;
}

// n-fold inverse-branch iteration at c=0
template <class S>
fibmap::Pt<S> iterate_backward_c0(fibmap::Pt<S> z, int n) {
  for (int k = 0; k < n; ++k) z = {z.y, z.x / z.y};
  return z;
}

// complex scalar with modulus in [lo, hi], uniform phase
inline Complex random_modulus(fibmap::SplitMix64& rng, double lo, double hi) {
  const double r = rng.uniform(lo, hi);
  const double phi = rng.uniform(0.0, 2.0 * M_PI);
  return std::polar(r, phi);
}

inline CPoint random_cpoint_modulus(fibmap::SplitMix64& rng, double lo, double hi) {
  return {random_modulus(rng, lo, hi), random_modulus(rng, lo, hi)};
}

}  // namespace testutil
