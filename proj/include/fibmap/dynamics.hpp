#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fibmap/context.hpp"
#include "fibmap/point.hpp"

namespace fibmap {

// The family under study is f_c(x, y) = (x*y + c, x) on R^2 and C^2, with
// the single-valued inverse branch f^-1(x, y) = (y, (x - c)/y), undefined
// on the line y = 0.

namespace detail {
template <class S>
S param_as(const ParamContext& ctx) {
  if constexpr (std::is_same_v<S, double>) {
    return ctx.c.real();
  } else {
    return ctx.c;
  }
}
}  // namespace detail

/// (x, y) -> (x*y + c, x). Pure; overflow surfaces as a non-finite result
/// the caller detects with is_finite().
template <class S>
Pt<S> apply_forward(const ParamContext& ctx, const Pt<S>& z) {
  const S c = detail::param_as<S>(ctx);
  return {z.x * z.y + c, z.x};
}

/// Inverse branch (x, y) -> (y, (x - c)/y); nullopt on the line y = 0.
template <class S>
std::optional<Pt<S>> apply_inverse(const ParamContext& ctx, const Pt<S>& z) {
  if (mag(z.y) == 0.0) return std::nullopt;
  const S c = detail::param_as<S>(ctx);
  return Pt<S>{z.y, (z.x - c) / z.y};
}

enum class Direction { Forward, Backward };

enum class OrbitStatus {
  Bounded,            // budget exhausted without exit
  Escaped,            // exit_test fired (or the iterate went non-finite)
  InverseUndefined,   // backward branch hit y = 0
};

template <class S>
struct OrbitTrace {
  std::vector<Pt<S>> points;  // points[0] is the start; only finite points stored
  Direction direction = Direction::Forward;
  OrbitStatus status = OrbitStatus::Bounded;
  int exit_index = -1;  // for Escaped / InverseUndefined
  int budget = 0;
};

/// Iterates until exit_test fires, the inverse dies, the iterate overflows,
/// or budget steps have been taken. exit_test is checked on the start point
/// first, so Escaped(0) is possible.
template <class S>
OrbitTrace<S> iterate_orbit(const ParamContext& ctx, const Pt<S>& z, Direction dir, int budget,
                            const std::function<bool(const Pt<S>&)>& exit_test) {
  OrbitTrace<S> trace;
  trace.direction = dir;
  trace.budget = budget;
  trace.points.reserve(static_cast<std::size_t>(budget) + 1);
  trace.points.push_back(z);
  for (int n = 0;; ++n) {
    const Pt<S>& cur = trace.points.back();
    if (exit_test && exit_test(cur)) {
      trace.status = OrbitStatus::Escaped;
      trace.exit_index = n;
      return trace;
    }
    if (n == budget) {
      trace.status = OrbitStatus::Bounded;
      return trace;
    }
    Pt<S> next;
    if (dir == Direction::Forward) {
      next = apply_forward(ctx, cur);
    } else {
      auto inv = apply_inverse(ctx, cur);
      if (!inv) {
        trace.status = OrbitStatus::InverseUndefined;
        trace.exit_index = n;
        return trace;
      }
      next = *inv;
    }
    if (!is_finite(next)) {
      trace.status = OrbitStatus::Escaped;
      trace.exit_index = n + 1;
      return trace;
    }
    trace.points.push_back(next);
  }
}

/// Closed form for f_0^n, n >= 1: (x^F(n) y^F(n-1), x^F(n-1) y^F(n-2)),
/// with F(-1) = 0. nullopt when an exponent exceeds the table or the
/// result overflows.
template <class S>
std::optional<Pt<S>> monomial_forward_c0(const ParamContext& ctx, const Pt<S>& z, int n);

/// Closed form for f_0^-n, n >= 1. The exponent pattern is fixed against
/// the n-fold inverse-branch oracle, with G(k) the k-th Fibonacci number
/// in the 0,1,1,2,3,... convention and s = (-1)^n:
///   f_0^-n(x, y) = ( x^{s G(n-1)} y^{-s G(n)},  x^{-s G(n)} y^{s G(n+1)} )
/// e.g. n=1 -> (y, x/y), n=2 -> (x/y, y^2/x), n=3 -> (y^2/x, x^2/y^3).
template <class S>
std::optional<Pt<S>> monomial_backward_c0(const ParamContext& ctx, const Pt<S>& z, int n);

enum class SetVerdict { Inside, Outside, BoundaryBand, OriginExcluded };

/// |y| against |x|^-beta with relative band eps; x = 0 is Inside.
SetVerdict c0_kplus_oracle(const ParamContext& ctx, const CPoint& z, double eps = 1e-6);

/// On-curve test for |y| = |x|^(1/beta) with relative band eps;
/// (0, 0) is OriginExcluded.
SetVerdict c0_kminus_oracle(const ParamContext& ctx, const CPoint& z, double eps = 1e-6);

/// || h2(f_0(z)) - fcheck(h2(z)) || where h2(x,y) = (|x|, |y|) and
/// fcheck(r,s) = (r s, r). Identically zero in exact arithmetic.
double semiconjugacy_residual(const CPoint& z);

}  // namespace fibmap
