#include "fibmap/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fibmap {

ParamContext ParamContext::make(Complex c_value) {
  ParamContext ctx;
  ctx.c = c_value;
  ctx.is_real = (c_value.imag() == 0.0);
  ctx.beta = (1.0 + std::sqrt(5.0)) / 2.0;
  // F_0 = F_1 = 1; stop before signed 64-bit overflow.
  ctx.fib = {1, 1};
  for (;;) {
    long long a = ctx.fib[ctx.fib.size() - 2];
    long long b = ctx.fib.back();
    if (a > std::numeric_limits<long long>::max() - b) break;
    ctx.fib.push_back(a + b);
  }
  return ctx;
}

namespace {

template <class S>
std::optional<Pt<S>> finite_or_nullopt(Pt<S> z) {
  if (!is_finite(z)) return std::nullopt;
  return z;
}

}  // namespace

template <class S>
std::optional<Pt<S>> monomial_forward_c0(const ParamContext& ctx, const Pt<S>& z, int n) {
  if (n < 1) throw std::invalid_argument("monomial_forward_c0: n >= 1 required");
  if (n > ctx.max_fib_index()) return std::nullopt;  // exponent exceeds native range
  const long long fn = ctx.fib_at(n);
  const long long fn1 = ctx.fib_at(n - 1);
  const long long fn2 = ctx.fib_at(n - 2);
  Pt<S> out{pow_int(z.x, fn) * pow_int(z.y, fn1), pow_int(z.x, fn1) * pow_int(z.y, fn2)};
  return finite_or_nullopt(out);
}

template <class S>
std::optional<Pt<S>> monomial_backward_c0(const ParamContext& ctx, const Pt<S>& z, int n) {
  if (n < 1) throw std::invalid_argument("monomial_backward_c0: n >= 1 required");
  if (mag(z.x) == 0.0 || mag(z.y) == 0.0) return std::nullopt;
  if (n > ctx.max_fib_index()) return std::nullopt;
  // G(k) in the 0,1,1,2,... convention is fib_at(k-1).
  const long long gn1 = ctx.fib_at(n - 2);  // G(n-1)
  const long long gn = ctx.fib_at(n - 1);   // G(n)
  const long long gp = ctx.fib_at(n);       // G(n+1)
  const long long s = (n % 2 == 0) ? 1 : -1;
  Pt<S> out{pow_int(z.x, s * gn1) * pow_int(z.y, -s * gn),
            pow_int(z.x, -s * gn) * pow_int(z.y, s * gp)};
  return finite_or_nullopt(out);
}

template std::optional<CPoint> monomial_forward_c0<Complex>(const ParamContext&, const CPoint&, int);
template std::optional<RPoint> monomial_forward_c0<double>(const ParamContext&, const RPoint&, int);
template std::optional<CPoint> monomial_backward_c0<Complex>(const ParamContext&, const CPoint&, int);
template std::optional<RPoint> monomial_backward_c0<double>(const ParamContext&, const RPoint&, int);

SetVerdict c0_kplus_oracle(const ParamContext& ctx, const CPoint& z, double eps) {
  const double r = mag(z.x);
  if (r == 0.0) return SetVerdict::Inside;
  const double t = std::pow(r, -ctx.beta);
  if (!std::isfinite(t)) return SetVerdict::Inside;  // |x| so small the bound is past overflow
  const double d = mag(z.y) - t;
  if (std::abs(d) <= eps * std::max(1.0, t)) return SetVerdict::BoundaryBand;
  return d < 0.0 ? SetVerdict::Inside : SetVerdict::Outside;
}

SetVerdict c0_kminus_oracle(const ParamContext& ctx, const CPoint& z, double eps) {
  const double rx = mag(z.x);
  const double ry = mag(z.y);
  if (rx == 0.0 && ry == 0.0) return SetVerdict::OriginExcluded;
  const double t = std::pow(rx, 1.0 / ctx.beta);
  if (std::abs(ry - t) <= eps * std::max(1.0, t)) return SetVerdict::Inside;
  return SetVerdict::Outside;
}

double semiconjugacy_residual(const CPoint& z) {
  const double lhs1 = std::abs(z.x * z.y);
  const double rhs1 = std::abs(z.x) * std::abs(z.y);
  // Second coordinates are both |x| and cancel exactly.
  return std::abs(lhs1 - rhs1);
}

}  // namespace fibmap
