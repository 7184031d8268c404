#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "fibmap/point.hpp"

namespace fibmap {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval of extended reals representing {t real : lo <= t <= hi};
/// infinite endpoints are unattained bounds, never values.
struct XInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double t) const { return lo <= t && t <= hi; }
  bool subset_of(const XInterval& o) const { return o.lo <= lo && hi <= o.hi; }
  bool degenerate() const { return lo == hi; }
  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  double width() const { return hi - lo; }  // may be inf
};

namespace detail {
// Corner product for attained ranges: any factor 0 gives 0, which is what
// the x = 0 slice of the rectangle actually contributes; IEEE would make
// 0 * inf a NaN.
inline double corner(double u, double v) {
  if (u == 0.0 || v == 0.0) return 0.0;
  return u * v;
}
}  // namespace detail

/// Exact range of {u*v : u in a, v in b}. For finite intervals the bilinear
/// form attains its extremes at corners; infinite endpoints propagate as
/// unattained bounds.
inline XInterval mul_range(const XInterval& a, const XInterval& b) {
  const double c1 = detail::corner(a.lo, b.lo);
  const double c2 = detail::corner(a.lo, b.hi);
  const double c3 = detail::corner(a.hi, b.lo);
  const double c4 = detail::corner(a.hi, b.hi);
  return {std::min(std::min(c1, c2), std::min(c3, c4)),
          std::max(std::max(c1, c2), std::max(c3, c4))};
}

inline XInterval shift(const XInterval& a, double c) { return {a.lo + c, a.hi + c}; }

/// Reciprocal closure of {1/v : v in a, v != 0} for an interval with 0 at
/// most as an endpoint (split intervals straddling 0 before calling).
inline XInterval recip_edge(const XInterval& a) {
  if (a.lo == 0.0 && a.hi == 0.0) return {kInf, -kInf};  // empty marker
  if (a.lo >= 0.0) {
    // positive side: 1/[0, b] = [1/b, +inf], 1/[a, inf] = [0, 1/a]
    const double lo = a.hi == kInf ? 0.0 : 1.0 / a.hi;
    const double hi = a.lo == 0.0 ? kInf : 1.0 / a.lo;
    return {lo, hi};
  }
  if (a.hi <= 0.0) {
    const double lo = a.hi == 0.0 ? -kInf : 1.0 / a.hi;
    const double hi = a.lo == -kInf ? 0.0 : 1.0 / a.lo;
    return {lo, hi};
  }
  return {-kInf, kInf};  // caller failed to split at 0
}

inline XInterval div_range(const XInterval& num, const XInterval& den) {
  return mul_range(num, recip_edge(den));
}

/// Axis-aligned rectangle, possibly unbounded.
struct Rect {
  XInterval x, y;

  bool contains(const RPoint& p) const { return x.contains(p.x) && y.contains(p.y); }
  bool subset_of(const Rect& o) const { return x.subset_of(o.x) && y.subset_of(o.y); }
};

/// A representative interior-ish point, clamped finite.
inline double interval_rep(const XInterval& a) {
  if (a.finite()) return 0.5 * (a.lo + a.hi);
  if (std::isfinite(a.lo)) return a.lo + 1.0;
  if (std::isfinite(a.hi)) return a.hi - 1.0;
  return 0.0;
}

inline RPoint rect_rep(const Rect& r) { return {interval_rep(r.x), interval_rep(r.y)}; }

/// Exact test that box lies inside the union of rects, by recursive
/// subtraction: split box at a rect edge strictly inside it and recurse.
/// Splits happen only at the finitely many edge coordinates, so this
/// terminates.
bool covered_by(const Rect& box, std::span<const Rect> rects);

/// When covered_by fails, a point of box outside every rect.
RPoint uncovered_witness(const Rect& box, std::span<const Rect> rects);

/// Outward enlargement by k ulp-scale units per finite edge. Region edges
/// like a2 are one-ulp representations of irrationals, so set inclusions
/// that are exactly tight there can only be certified modulo this rounding.
inline XInterval pad_interval(const XInterval& a, double k) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double lo = std::isfinite(a.lo) ? a.lo - k * eps * std::max(1.0, std::abs(a.lo)) : a.lo;
  const double hi = std::isfinite(a.hi) ? a.hi + k * eps * std::max(1.0, std::abs(a.hi)) : a.hi;
  return {lo, hi};
}

inline Rect pad_rect(const Rect& r, double k) {
  return {pad_interval(r.x, k), pad_interval(r.y, k)};
}

}  // namespace fibmap
