#include "fibmap/measure.hpp"

#include <cmath>
#include <charconv>
#include <cstdio>
#include <stdexcept>

#include "fibmap/escape.hpp"
#include "fibmap/parallel.hpp"
#include "fibmap/rng.hpp"

namespace fibmap {

double BoxSpec::volume() const {
  if (polydisk) {
    const double area = M_PI * radius * radius;
    return area * area;
  }
  return (x1 - x0) * (y1 - y0);
}

std::string BoxSpec::describe() const {
  char buf[128];
  if (polydisk)
    std::snprintf(buf, sizeof(buf), "polydisk:%g", radius);
  else
    std::snprintf(buf, sizeof(buf), "box:%g:%g:%g:%g", x0, x1, y0, y1);
  return buf;
}

BoxSpec BoxSpec::real_box(double x0, double x1, double y0, double y1) {
  BoxSpec b;
  b.x0 = x0;
  b.x1 = x1;
  b.y0 = y0;
  b.y1 = y1;
  return b;
}

BoxSpec BoxSpec::bidisk(double radius) {
  BoxSpec b;
  b.polydisk = true;
  b.radius = radius;
  return b;
}

namespace {

Complex sample_disk(SplitMix64& rng, double R) {
  for (;;) {
    const double re = rng.uniform(-R, R);
    const double im = rng.uniform(-R, R);
    if (re * re + im * im <= R * R) return {re, im};
  }
}

constexpr long long kBatch = 4096;

}  // namespace

MeasureEstimate mc_measure(const ParamContext& ctx, SetSelector selector, const BoxSpec& box,
                           long long samples, std::uint64_t seed, int budget, int workers) {
  if (samples < 1) throw std::invalid_argument("mc_measure: samples >= 1 required");
  const EscapeRadii radii = escape_radii(ctx.c);
  auto hit = [&](const CPoint& z) {
    const bool fwd = selector != SetSelector::Kminus;
    const bool bwd = selector != SetSelector::Kplus;
    if (fwd && classify_forward(ctx, z, radii.r0, budget).cls != EscapeClass::Bounded) return false;
    if (bwd && classify_backward(ctx, z, radii, budget).cls != EscapeClass::Bounded) return false;
    return true;
  };

  const long long nbatches = (samples + kBatch - 1) / kBatch;
  std::vector<long long> batch_hits(static_cast<std::size_t>(nbatches), 0);
  parallel_batches(nbatches, workers, [&](long long b) {
    SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(b));
    const long long count = std::min(kBatch, samples - b * kBatch);
    long long h = 0;
    for (long long i = 0; i < count; ++i) {
      CPoint z;
      if (box.polydisk) {
        z = {sample_disk(rng, box.radius), sample_disk(rng, box.radius)};
      } else {
        z = to_complex(RPoint{rng.uniform(box.x0, box.x1), rng.uniform(box.y0, box.y1)});
      }
      if (hit(z)) ++h;
    }
    batch_hits[static_cast<std::size_t>(b)] = h;
  });

  MeasureEstimate est;
  est.c = ctx.c;
  est.selector = selector;
  est.box = box;
  est.samples = samples;
  est.budget = budget;
  est.seed = seed;
  for (long long h : batch_hits) est.hits += h;
  const double p = static_cast<double>(est.hits) / static_cast<double>(samples);
  const double vol = box.volume();
  est.value = vol * p;
  est.stderr_ = vol * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return est;
}

std::string measure_csv_header() { return "c,set,box,samples,budget,value,stderr,seed\n"; }

namespace {

// shortest round-trip decimal
std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string measure_csv_row(const MeasureEstimate& est) {
  const char* set = est.selector == SetSelector::Kplus    ? "kplus"
                    : est.selector == SetSelector::Kminus ? "kminus"
                                                          : "k";
  std::string c_str = num(est.c.real());
  if (est.c.imag() != 0.0) {
    if (est.c.imag() > 0.0) c_str += "+";
    c_str += num(est.c.imag()) + "i";
  }
  char buf[320];
  std::snprintf(buf, sizeof(buf), "%s,%s,%s,%lld,%d,%s,%s,%llu\n", c_str.c_str(), set,
                est.box.describe().c_str(), est.samples, est.budget, num(est.value).c_str(),
                num(est.stderr_).c_str(), static_cast<unsigned long long>(est.seed));
  return buf;
}

std::optional<PolydiskInfo> interior_polydisk(Complex c) {
  const double ac = std::abs(c);
  if (ac >= 0.25) return std::nullopt;
  PolydiskInfo info;
  info.a = 0.5;
  info.margin = 0.25 - ac;
  // |xy + c| <= a^2 + |c| < a on D_a: the triangle-inequality invariance bound
  if (!(ac + info.a * info.a < info.a)) return std::nullopt;
  return info;
}

PositivityReport kminus_positivity_check(double c, long long samples, std::uint64_t seed,
                                         int budget, int workers) {
  if (!(c < -2.0)) throw std::invalid_argument("kminus_positivity_check: requires c < -2");
  PositivityReport rep;
  rep.inverse = inverse_fixed_classification(c);
  rep.samples = samples;
  rep.ball_radius = 0.01;
  const ParamContext ctx = ParamContext::make(Complex(c, 0.0));
  const Complex a1(rep.inverse.a1, 0.0);
  const CPoint fixed{a1, a1};

  const long long nbatches = (samples + kBatch - 1) / kBatch;
  std::vector<long long> conv(static_cast<std::size_t>(nbatches), 0);
  parallel_batches(nbatches, workers, [&](long long b) {
    SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(b));
    const long long count = std::min(kBatch, samples - b * kBatch);
    long long ok = 0;
    for (long long i = 0; i < count; ++i) {
      CPoint z{a1 + sample_disk(rng, rep.ball_radius), a1 + sample_disk(rng, rep.ball_radius)};
      for (int n = 0; n <= budget; ++n) {
        if (dist(z, fixed) < 1e-6) {
          ++ok;
          break;
        }
        auto inv = apply_inverse(ctx, z);
        if (!inv || !is_finite(*inv)) break;
        z = *inv;
      }
    }
    conv[static_cast<std::size_t>(b)] = ok;
  });
  for (long long v : conv) rep.converged += v;
  rep.fraction = static_cast<double>(rep.converged) / static_cast<double>(samples);
  return rep;
}

std::vector<ExplorerRow> conjecture_explorer(const std::vector<Complex>& c_list,
                                             const BoxSpec& box, long long samples,
                                             std::uint64_t seed, int budget, int workers) {
  std::vector<ExplorerRow> rows;
  for (const Complex& c : c_list) {
    const ParamContext ctx = ParamContext::make(c);
    rows.push_back({mc_measure(ctx, SetSelector::Kplus, box, samples, seed, budget, workers)});
    rows.push_back({mc_measure(ctx, SetSelector::Kminus, box, samples, seed, budget, workers)});
  }
  return rows;
}

std::string explorer_csv(const std::vector<ExplorerRow>& rows) {
  std::string out =
      "# EXPLORATORY: box-restricted estimates across parameters; no claim is asserted\n";
  out += measure_csv_header();
  for (const auto& row : rows) out += measure_csv_row(row.estimate);
  return out;
}

}  // namespace fibmap
