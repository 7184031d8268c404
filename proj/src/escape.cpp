#include "fibmap/escape.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fibmap/parallel.hpp"
#include "fibmap/rng.hpp"
#include "fibmap/spectral.hpp"

namespace fibmap {

EscapeRadii escape_radii(Complex c, double margin) {
  const double ac = std::abs(c);
  EscapeRadii r;
  r.margin = margin;
  r.r0 = (1.0 + margin) * std::max(2.0, std::sqrt(2.0 * ac));
  r.d_back = 2.0 * (ac + 1.0);
  r.r1 = (1.0 + margin) * std::max(r.d_back, ac * r.d_back * r.d_back / (r.d_back - 1.0));
  r.d_trap = 2.0 + ac;
  r.r2 = r.d_trap * r.r1;
  const double d = r.d_back;
  const double mid = r.r1 * (d - 1.0) / (d * d);
  if (!(ac < mid && mid < r.r1 / 2.0 && r.r1 > d))
    throw std::logic_error("escape_radii: constructed radii violate the defining inequalities");
  if (!(r.r0 >= std::max(2.0, std::sqrt(2.0 * ac))))
    throw std::logic_error("escape_radii: R0 below forward escape bound");
  return r;
}

namespace {

CPoint sample_bidisk(SplitMix64& rng, double R) {
  auto disk = [&](void) -> Complex {
    for (;;) {
      double re = rng.uniform(-R, R);
      double im = rng.uniform(-R, R);
      if (re * re + im * im <= R * R) return {re, im};
    }
  };
  return {disk(), disk()};
}

RPoint sample_box(SplitMix64& rng, double R) {
  return {rng.uniform(-R, R), rng.uniform(-R, R)};
}

// Membership sequence of f^{+-k}(z) in D_R for k = 0..n_max+1; false after
// overflow or a dead branch. A violation at n means m[0] && m[n+1] && !m[n].
template <class S>
long long nesting_violations(const ParamContext& ctx, Pt<S> z, double R, int n_max, bool backward) {
  std::vector<char> memb(static_cast<std::size_t>(n_max) + 2, 0);
  bool alive = true;
  for (int k = 0; k <= n_max + 1; ++k) {
    memb[k] = alive && is_finite(z) && max_norm(z) <= R;
    if (!alive) continue;
    if (!is_finite(z)) {
      alive = false;
      continue;
    }
    if (backward) {
      auto inv = apply_inverse(ctx, z);
      if (!inv) {
        alive = false;
        continue;
      }
      z = *inv;
    } else {
      z = apply_forward(ctx, z);
    }
  }
  if (!memb[0]) return 0;
  long long bad = 0;
  for (int n = 0; n <= n_max; ++n)
    if (memb[n + 1] && !memb[n]) ++bad;
  return bad;
}

ProbeReport run_probe(const ParamContext& ctx, double R, int n_max, long long samples,
                      std::uint64_t seed, int workers, bool backward) {
  ProbeReport rep;
  rep.samples = samples;
  rep.n_max = n_max;
  rep.radius = R;
  constexpr long long kBatch = 1024;
  const long long nbatches = (samples + kBatch - 1) / kBatch;
  std::vector<long long> per_batch(static_cast<std::size_t>(nbatches), 0);
  parallel_batches(nbatches, workers, [&](long long b) {
    SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(b));
    const long long count = std::min(kBatch, samples - b * kBatch);
    long long bad = 0;
    for (long long i = 0; i < count; ++i) {
      if (ctx.is_real) {
        bad += nesting_violations(ctx, sample_box(rng, R), R, n_max, backward);
      } else {
        bad += nesting_violations(ctx, sample_bidisk(rng, R), R, n_max, backward);
      }
    }
    per_batch[static_cast<std::size_t>(b)] = bad;
  });
  for (long long v : per_batch) rep.violations += v;
  return rep;
}

}  // namespace

ProbeReport nested_forward_probe(const ParamContext& ctx, double R, int n_max, long long samples,
                                 std::uint64_t seed, int workers) {
  return run_probe(ctx, R, n_max, samples, seed, workers, false);
}

ProbeReport nested_backward_probe(const ParamContext& ctx, double R, int n_max, long long samples,
                                  std::uint64_t seed, int workers) {
  return run_probe(ctx, R, n_max, samples, seed, workers, true);
}

CompactnessReport compactness_probe(const ParamContext& ctx, int budget, long long samples,
                                    std::uint64_t seed, int workers) {
  const EscapeRadii radii = escape_radii(ctx.c);
  CompactnessReport rep;
  rep.r = (1.0 + radii.margin) * radii.r2;
  rep.r_cubed = rep.r * rep.r * rep.r;
  rep.samples = samples;

  auto in_k = [&](const CPoint& z) {
    if (classify_forward(ctx, z, radii.r0, budget).cls != EscapeClass::Bounded) return false;
    return classify_backward(ctx, z, radii, budget).cls == EscapeClass::Bounded;
  };

  std::vector<CPoint> seeds;
  const FixedPoints fps = fixed_points(ctx.c);
  seeds.push_back(fps.a1.location);
  seeds.push_back(fps.a2.location);
  const CycleInfo cyc = three_cycle(ctx.c);
  for (const auto& p : cyc.points) seeds.push_back(p);

  std::atomic<long long> hits{0};
  // max moduli folded with a mutex-free two-pass: batches record local maxima.
  constexpr long long kBatch = 1024;
  const long long nbatches = (samples + kBatch - 1) / kBatch;
  std::vector<double> bx(static_cast<std::size_t>(nbatches), 0.0);
  std::vector<double> by(static_cast<std::size_t>(nbatches), 0.0);
  std::vector<long long> bh(static_cast<std::size_t>(nbatches), 0);
  const double sample_radius = 1.25 * rep.r_cubed;
  parallel_batches(nbatches, workers, [&](long long b) {
    SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(b));
    const long long count = std::min(kBatch, samples - b * kBatch);
    for (long long i = 0; i < count; ++i) {
      CPoint z = ctx.is_real ? to_complex(sample_box(rng, sample_radius))
                             : sample_bidisk(rng, sample_radius);
      if (in_k(z)) {
        ++bh[static_cast<std::size_t>(b)];
        bx[static_cast<std::size_t>(b)] = std::max(bx[static_cast<std::size_t>(b)], mag(z.x));
        by[static_cast<std::size_t>(b)] = std::max(by[static_cast<std::size_t>(b)], mag(z.y));
      }
    }
  });
  for (long long b = 0; b < nbatches; ++b) {
    rep.k_points += bh[static_cast<std::size_t>(b)];
    rep.max_abs_x = std::max(rep.max_abs_x, bx[static_cast<std::size_t>(b)]);
    rep.max_abs_y = std::max(rep.max_abs_y, by[static_cast<std::size_t>(b)]);
  }
  for (const auto& z : seeds) {
    if (is_finite(z) && in_k(z)) {
      ++rep.k_points;
      rep.max_abs_x = std::max(rep.max_abs_x, mag(z.x));
      rep.max_abs_y = std::max(rep.max_abs_y, mag(z.y));
    }
  }
  rep.within_bound = std::max(rep.max_abs_x, rep.max_abs_y) <= rep.r_cubed;
  return rep;
}

}  // namespace fibmap
