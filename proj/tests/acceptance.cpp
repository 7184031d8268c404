// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fibmap/dynamics.hpp"
#include "fibmap/escape.hpp"
#include "fibmap/manifolds.hpp"
#include "fibmap/measure.hpp"
#include "fibmap/partition.hpp"
#include "fibmap/render.hpp"
#include "fibmap/rng.hpp"
#include "fibmap/spectral.hpp"

using namespace fibmap;

namespace {

int failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %2d %-28s %s  %s\n", idx, name, pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Complex random_modulus(SplitMix64& rng, double lo, double hi) {
  return std::polar(rng.uniform(lo, hi), rng.uniform(0.0, 2.0 * M_PI));
}

// 1. classify_forward at c=0 vs the closed-form K+ oracle
void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const ParamContext ctx = ParamContext::make(Complex(0.0, 0.0));
  SplitMix64 rng(101);
  int tested = 0, agree = 0;
  while (tested < 10000) {
    const CPoint z{Complex(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)),
                   Complex(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0))};
    const SetVerdict v = c0_kplus_oracle(ctx, z, 1e-3);
    if (v == SetVerdict::BoundaryBand) continue;
    ++tested;
    const bool bounded = classify_forward(ctx, z, 2.1, 200).cls == EscapeClass::Bounded;
    if (bounded == (v == SetVerdict::Inside)) ++agree;
  }
  const double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "agreement %d/%d (>=9900), %.2fs (<10s)", agree, tested, dt);
  report(1, "c=0 closed-form equivalence", agree >= 9900 && dt < 10.0, buf);
}

// 2. monomial closed forms against direct iteration
void criterion2() {
  const ParamContext ctx = ParamContext::make(Complex(0.0, 0.0));
  SplitMix64 rng(102);
  long long checks = 0, ok = 0;
  for (int i = 0; i < 1000; ++i) {
    const CPoint z{random_modulus(rng, 0.5, 1.5), random_modulus(rng, 0.5, 1.5)};
    CPoint fwd = z, bwd = z;
    for (int n = 1; n <= 10; ++n) {
      fwd = {fwd.x * fwd.y, fwd.x};
      bwd = {bwd.y, bwd.x / bwd.y};
      const auto cf = monomial_forward_c0(ctx, z, n);
      const auto cb = monomial_backward_c0(ctx, z, n);
      auto close = [](const CPoint& a, const CPoint& b) {
        return mag(a.x - b.x) <= 1e-9 * std::max(1e-300, std::max(mag(a.x), mag(b.x))) &&
               mag(a.y - b.y) <= 1e-9 * std::max(1e-300, std::max(mag(a.y), mag(b.y)));
      };
      checks += 2;
      if (cf && close(*cf, fwd)) ++ok;
      if (cb && close(*cb, bwd)) ++ok;
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof(buf), "%lld/%lld identities at rtol 1e-9", ok, checks);
  report(2, "monomial identities", ok == checks, buf);
}

// 3. the real-parameter fixed point table with exact boundary cases
void criterion3() {
  bool ok = true;
  std::string why;
  for (int i = 0; i < 1000; ++i) {
    const double c = -25.0 + (0.25 + 25.0) * i / 999.0;
    const ParameterClass pc = classify_parameter(c);
    PointKind want_a1;
    if (c == 0.25) {
      want_a1 = PointKind::Degenerate;
    } else if (c < -2.0) {
      want_a1 = PointKind::Repelling;
    } else {
      want_a1 = PointKind::Attracting;
    }
    if (pc.a1_kind != want_a1 || (c != 0.25 && pc.a2_kind != PointKind::Saddle)) {
      ok = false;
      why = "grid mismatch at c=" + std::to_string(c);
      break;
    }
  }
  const ParameterClass b1 = classify_parameter(-2.0);
  const double arg_err =
      std::abs(std::abs(std::arg(b1.a1_eigenvalues[1])) - 2.0 * M_PI / 3.0);
  if (b1.a1_kind != PointKind::Indifferent || arg_err > 1e-9) {
    ok = false;
    why = "c=-2 boundary case";
  }
  const ParameterClass b2 = classify_parameter(0.25);
  const double e1 = std::abs(b2.a1_eigenvalues[1] - Complex(1.0));
  const double e2 = std::abs(b2.a1_eigenvalues[0] - Complex(-0.5));
  if (e1 > 1e-9 || e2 > 1e-9) {
    ok = false;
    why = "c=1/4 boundary case";
  }
  if (ok) why = "1000-point grid + boundary cases exact";
  report(3, "fixed-point table", ok, why);
}

// 4. universal 3-cycle closure and period-2 nonexistence
void criterion4() {
  SplitMix64 rng(104);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Complex c = random_modulus(rng, 0.0, 10.0);
    const CycleInfo cyc = three_cycle(c);
    const ParamContext ctx = ParamContext::make(c);
    for (const CPoint& p : cyc.points) {
      CPoint w = p;
      for (int k = 0; k < 3; ++k) w = apply_forward(ctx, w);
      worst = std::max(worst, dist(w, p));
    }
  }
  const Period2Report r1 = period2_certificate(0.2, -3.0, 3.0, -3.0, 3.0, 32);
  const Period2Report r2 = period2_certificate(-3.0, -5.0, 5.0, -5.0, 5.0, 32);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "worst |f^3(p)-p| = %.3g (<1e-12), nonfixed %zu+%zu (=0)",
                worst, r1.nonfixed.size(), r2.nonfixed.size());
  report(4, "3-cycle and no 2-cycles", worst < 1e-12 && r1.nonfixed.empty() && r2.nonfixed.empty(),
         buf);
}

// 5. every paper transition inclusion certifies at four parameters
void criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  int rows = 0, counterexamples = 0, unverified_tails = 0;
  for (double c : {0.05, 0.1, 0.2, 0.24}) {
    const TransitionReport rep = verify_transition_tables(c);
    ok = ok && rep.all_pass;
    for (const auto& row : rep.rows) {
      ++rows;
      if (row.status == CertStatus::Counterexample) ++counterexamples;
      if (row.status == CertStatus::TailUnverified) ++unverified_tails;
    }
  }
  const double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%d inclusions + ca lemma, %d counterexamples, %d unverified tails, %.2fs (<60s)",
                rows, counterexamples, unverified_tails, dt);
  report(5, "transition certification", ok && counterexamples == 0 && dt < 60.0, buf);
}

// 6. the stable-manifold description of K+, behaviorally at c = 0.22
void criterion6() {
  RasterSpec spec;
  spec.mode = RasterMode::LimitClasses;
  spec.c = Complex(0.22, 0.0);
  spec.x0 = -2.0;
  spec.x1 = 2.0;
  spec.y0 = -2.0;
  spec.y1 = 2.0;
  spec.width = 512;
  spec.height = 512;
  spec.budget = 10000;
  const Raster raster = rasterize(spec);
  long long undecided = 0;
  for (auto code : raster.codes)
    if (code == 0) ++undecided;
  const long long total = static_cast<long long>(raster.codes.size());

  const RealDynamics rd = make_real_dynamics(0.22);
  const KplusDecompReport rep =
      verify_kplus_decomposition(rd, 128, -2.0, 2.0, -2.0, 2.0, 10000, 1e-4, 200, 106);
  char buf[220];
  std::snprintf(buf, sizeof(buf),
                "undecided %lld/%lld (<1%%), boundary %d/%d within 1e-4 of theta/cycle "
                "(>=95%%; %d confirmed over 3 period-multiples)",
                undecided, total, rep.boundary_approach, rep.segments_used,
                rep.boundary_success);
  const bool ok = undecided * 100 < total && rep.segments_used == 200 &&
                  rep.boundary_approach * 100 >= rep.segments_used * 95;
  report(6, "K+ stable-manifold theorem", ok, buf);
}

// 7. the unstable-manifold description of K-, behaviorally at c = 0.2
void criterion7() {
  const RealDynamics rd = make_real_dynamics(0.2);
  const KminusDecompReport rep = verify_kminus_decomposition(rd, 128, 10000, 1e-4, 107);
  const long long classified = rep.theta_or_cycle;
  const bool ratio_ok =
      rep.backward_bounded == 0 || classified * 100 >= rep.backward_bounded * 95;
  char buf[220];
  if (rep.backward_bounded == 0) {
    std::snprintf(buf, sizeof(buf),
                  "0 backward-bounded grid points (K- has empty interior; vacuous), "
                  "manifold seeds %lld/%lld explained",
                  rep.seeded_ok, rep.seeded_total);
  } else {
    std::snprintf(buf, sizeof(buf), "theta/cycle %lld of %lld backward-bounded (>=95%%)",
                  classified, rep.backward_bounded);
  }
  report(7, "K- unstable-manifold theorem", ratio_ok && rep.seeded_ok == rep.seeded_total, buf);
}

// 8. forward/backward nested trapping plus the compactness probe
void criterion8() {
  bool ok = true;
  long long worst_violations = 0;
  bool compact_ok = true;
  for (double c : {0.0, 0.2, 0.33, -0.6, -3.0}) {
    const ParamContext ctx = ParamContext::make(Complex(c, 0.0));
    const EscapeRadii radii = escape_radii(ctx.c);
    const double R = (1.0 + radii.margin) * radii.r2;
    const auto fwd = nested_forward_probe(ctx, R, 20, 10000, 108);
    const auto bwd = nested_backward_probe(ctx, R, 20, 10000, 109);
    worst_violations = std::max({worst_violations, fwd.violations, bwd.violations});
    const auto comp = compactness_probe(ctx, 1000, 10000, 110);
    compact_ok = compact_ok && comp.within_bound;
  }
  ok = worst_violations == 0 && compact_ok;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "max violations %lld (=0), compactness box inside D_R^3: %s",
                worst_violations, compact_ok ? "yes" : "no");
  report(8, "trapping and nesting", ok, buf);
}

// 9. the two measure propositions at desk scale
void criterion9() {
  const auto disk = interior_polydisk(Complex(0.2, 0.0));
  bool ok = disk.has_value() && disk->a == 0.5;
  // 1e4-sample invariance of the bidisk
  const ParamContext ctx = ParamContext::make(Complex(0.2, 0.0));
  SplitMix64 rng(111);
  long long stayed = 0;
  for (int i = 0; i < 10000; ++i) {
    CPoint z{std::polar(0.5 * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * M_PI)),
             std::polar(0.5 * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * M_PI))};
    bool in = true;
    for (int k = 0; k < 100 && in; ++k) {
      z = apply_forward(ctx, z);
      in = max_norm(z) <= 0.5;
    }
    if (in) ++stayed;
  }
  ok = ok && stayed == 10000;
  const PositivityReport pos = kminus_positivity_check(-3.0, 10000, 112, 1000);
  const bool prod_ok = std::abs(pos.inverse.product_modulus - 0.76759) < 1e-5 &&
                       std::abs(pos.inverse.product_modulus - 0.7675918792439982) < 1e-6;
  ok = ok && pos.fraction == 1.0 && prod_ok;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "D_1/2 invariance %lld/10000, backward basin fraction %.4f (=1), |a1 a2|=%.7f",
                stayed, pos.fraction, pos.inverse.product_modulus);
  report(9, "measure propositions", ok, buf);
}

// 10. figure-analog renders are byte-identical across runs and worker counts
void criterion10() {
  std::vector<RasterSpec> specs;
  {
    RasterSpec s;
    s.mode = RasterMode::KplusComplexSlice;
    s.c = Complex(0.2, 0.0);
    s.y0_slice = Complex(0.33, 0.0);
    s.x0 = -3.0;
    s.x1 = 3.0;
    s.y0 = -3.0;
    s.y1 = 3.0;
    s.width = 192;
    s.height = 192;
    s.budget = 1000;
    specs.push_back(s);
  }
  for (int n = 0; n <= 2; ++n) {
    RasterSpec s;
    s.mode = RasterMode::Nested;
    s.c = Complex(0.3, 0.0);
    s.nested_n = n;
    const EscapeRadii radii = escape_radii(s.c);
    const double R = (1.0 + radii.margin) * radii.r2;
    s.x0 = -R;
    s.x1 = R;
    s.y0 = -R;
    s.y1 = R;
    s.width = 192;
    s.height = 192;
    specs.push_back(s);
  }
  {
    RasterSpec s;
    s.mode = RasterMode::LimitClasses;
    s.c = Complex(0.22, 0.0);
    s.x0 = -2.0;
    s.x1 = 2.0;
    s.y0 = -2.0;
    s.y1 = 2.0;
    s.width = 192;
    s.height = 192;
    s.budget = 10000;
    specs.push_back(s);
  }
  bool ok = true;
  for (const auto& s : specs) {
    const Palette pal = Palette::default_for(s.mode);
    const auto run1 = encode_ppm(rasterize(s, 1), pal);
    const auto run2 = encode_ppm(rasterize(s, 1), pal);
    const auto par2 = encode_ppm(rasterize(s, 2), pal);
    const auto par5 = encode_ppm(rasterize(s, 5), pal);
    ok = ok && run1 == run2 && run1 == par2 && run1 == par5;
  }
  char buf[120];
  std::snprintf(buf, sizeof(buf), "%zu specs x {rerun, 2 workers, 5 workers} byte-identical",
                specs.size());
  report(10, "rendering regression", ok, buf);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (failures == 0)
    std::printf("acceptance: all criteria PASS\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return failures;
}
