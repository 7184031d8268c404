#pragma once

#include <cstdint>
#include <stdexcept>

#include "fibmap/context.hpp"
#include "fibmap/dynamics.hpp"
#include "fibmap/point.hpp"

namespace fibmap {

/// Escape radii derived from c, all scaled by the safety margin mu so the
/// strict inequalities they satisfy survive floating point:
///   R0 = (1+mu) max{2, sqrt(2|c|)}            forward escape radius
///   d_back = 2(|c|+1)
///   R1 = (1+mu) max{d_back, |c| d_back^2/(d_back-1)}   backward escape radius
///   d_trap = 2 + |c|,  R2 = d_trap * R1       trapping bidisk radius
/// Construction verifies |c| < R1(d-1)/d^2 < R1/2 and R1 > d_back and
/// throws std::logic_error otherwise.
struct EscapeRadii {
  double r0 = 0.0;
  double d_back = 0.0;
  double r1 = 0.0;
  double d_trap = 0.0;
  double r2 = 0.0;
  double margin = 0.05;
};

EscapeRadii escape_radii(Complex c, double margin = 0.05);

/// Literal membership in the sets at radius R:
///   V_R: min{|x|,|y|} > R          F_R: 0 < min{|x|,|y|} < 1/R and ||z|| > R
///   G_R: {y = 0} union F_R         D_R: max{|x|,|y|} <= R
struct RegionVerdict {
  bool in_vr = false;
  bool in_fr = false;
  bool in_gr = false;
  bool in_dr = false;
};

template <class S>
RegionVerdict region_membership(double R, const Pt<S>& z) {
  const double lo = min_mod(z);
  const double hi = max_norm(z);
  RegionVerdict v;
  v.in_vr = lo > R;
  v.in_fr = lo > 0.0 && lo < 1.0 / R && hi > R;
  v.in_gr = v.in_fr || mag(z.y) == 0.0;
  v.in_dr = hi <= R;
  return v;
}

enum class EscapeClass { Bounded, Escaped, InverseUndefined };

struct Classification {
  EscapeClass cls = EscapeClass::Bounded;
  int index = -1;  // first-exit index for Escaped / InverseUndefined
};

/// Escaped(n) as soon as f^n(z) enters V_R (definitively divergent);
/// Bounded means the budget ran out. A non-finite iterate counts as
/// Escaped at its index. Requires R above the unscaled paper radius
/// max{2, sqrt(2|c|)}.
template <class S>
Classification classify_forward(const ParamContext& ctx, Pt<S> z, double R, int budget) {
  if (!(R > std::max(2.0, std::sqrt(2.0 * mag(ctx.c)))))
    throw std::invalid_argument("classify_forward: R must exceed max{2, sqrt(2|c|)}");
  for (int n = 0;; ++n) {
    if (!is_finite(z)) return {EscapeClass::Escaped, n};
    if (min_mod(z) > R) return {EscapeClass::Escaped, n};
    if (n == budget) return {EscapeClass::Bounded, -1};
    z = apply_forward(ctx, z);
  }
}

/// Backward analogue through G_R at R = radii.r1. The line y = 0 is part
/// of G_R, so a dying branch reports Escaped, not InverseUndefined.
template <class S>
Classification classify_backward(const ParamContext& ctx, Pt<S> z, const EscapeRadii& radii,
                                 int budget) {
  const double R = radii.r1;
  for (int n = 0;; ++n) {
    if (!is_finite(z)) return {EscapeClass::Escaped, n};
    const RegionVerdict v = region_membership(R, z);
    if (v.in_gr) return {EscapeClass::Escaped, n};
    if (n == budget) return {EscapeClass::Bounded, -1};
    auto inv = apply_inverse(ctx, z);
    if (!inv) return {EscapeClass::InverseUndefined, n};  // unreachable: y=0 is in G_R
    z = *inv;
  }
}

/// Sampling report for the nested-intersection monotonicity claims
/// D ∩ f^{∓(n+1)}(D) ⊂ D ∩ f^{∓n}(D): a violation is a sampled point whose
/// D_R-membership sequence leaves and re-enters.
struct ProbeReport {
  long long samples = 0;
  int n_max = 0;
  double radius = 0.0;
  long long violations = 0;
};

ProbeReport nested_forward_probe(const ParamContext& ctx, double R, int n_max, long long samples,
                                 std::uint64_t seed, int workers = 0);
ProbeReport nested_backward_probe(const ParamContext& ctx, double R, int n_max, long long samples,
                                  std::uint64_t seed, int workers = 0);

/// Samples points classified Bounded in both directions (the periodic
/// points are always included) and reports the coordinate-wise modulus
/// bound; the contract is max(|x|,|y|) <= R^3 for R = (1+mu) R2.
struct CompactnessReport {
  long long samples = 0;
  long long k_points = 0;
  double max_abs_x = 0.0;
  double max_abs_y = 0.0;
  double r = 0.0;        // (1+mu) R2
  double r_cubed = 0.0;
  bool within_bound = true;
};

CompactnessReport compactness_probe(const ParamContext& ctx, int budget, long long samples,
                                    std::uint64_t seed, int workers = 0);

}  // namespace fibmap
