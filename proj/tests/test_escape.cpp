#include <doctest.h>

#include "fibmap/escape.hpp"
#include "test_util.hpp"

using namespace fibmap;
using namespace testutil;

TEST_CASE("escape radii formulas and constraints") {
  const EscapeRadii r0 = escape_radii(Complex(0.0, 0.0));
  CHECK(ulp_close(r0.r0, 2.1));
  CHECK(ulp_close(r0.d_back, 2.0));
  CHECK(ulp_close(r0.r1, 2.1));
  CHECK(ulp_close(r0.r2, 4.2));

  const EscapeRadii r8 = escape_radii(Complex(8.0, 0.0));
  CHECK(ulp_close(r8.r0, 1.05 * 4.0));  // max{2, sqrt(16)} = 4 before the margin

  for (double c : {0.0, 0.2, 0.33, -0.6, -3.0, 8.0, -25.0}) {
    const EscapeRadii r = escape_radii(Complex(c, 0.0));
    const double ac = std::abs(c);
    const double d = r.d_back;
    CHECK(r.r0 >= std::max(2.0, std::sqrt(2.0 * ac)));
    CHECK(ac < r.r1 * (d - 1.0) / (d * d));
    CHECK(r.r1 * (d - 1.0) / (d * d) < r.r1 / 2.0);
    CHECK(r.r1 > d);
    CHECK(ulp_close(r.r2, (2.0 + ac) * r.r1));
  }
}

TEST_CASE("region membership verdicts") {
  const auto v1 = region_membership(2.0, RPoint{3.0, 3.0});
  CHECK(v1.in_vr);
  CHECK_FALSE(v1.in_dr);

  const auto v2 = region_membership(2.0, RPoint{5.0, 0.1});
  CHECK(v2.in_fr);
  CHECK(v2.in_gr);
  CHECK_FALSE(v2.in_vr);

  const auto v3 = region_membership(2.0, RPoint{5.0, 0.0});
  CHECK(v3.in_gr);
  CHECK_FALSE(v3.in_fr);

  // structural invariants on random points
  SplitMix64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const CPoint z = random_cpoint_modulus(rng, 0.0, 6.0);
    const auto v = region_membership(2.5, z);
    CHECK(v.in_gr == (v.in_fr || mag(z.y) == 0.0));
    if (v.in_vr) CHECK_FALSE(v.in_dr);
  }
}

TEST_CASE("classify_forward examples") {
  const ParamContext c0 = ParamContext::make(Complex(0.0, 0.0));
  const auto esc = classify_forward(c0, CPoint{Complex(3.0), Complex(3.0)}, 2.5, 100);
  CHECK(esc.cls == EscapeClass::Escaped);
  CHECK(esc.index == 0);

  CHECK(classify_forward(c0, CPoint{Complex(0.0), Complex(0.0)}, 2.1, 10000).cls ==
        EscapeClass::Bounded);

  const ParamContext c02 = ParamContext::make(Complex(0.2, 0.0));
  CHECK(classify_forward(c02, RPoint{0.3, 0.3}, 2.1, 1000).cls == EscapeClass::Bounded);
}

TEST_CASE("classify_forward first exit is stable under larger budgets") {
  const ParamContext ctx = ParamContext::make(Complex(0.2, 0.0));
  const EscapeRadii radii = escape_radii(ctx.c);
  SplitMix64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const CPoint z = random_cpoint_modulus(rng, 0.0, 3.0);
    const auto a = classify_forward(ctx, z, radii.r0, 200);
    if (a.cls != EscapeClass::Escaped) continue;
    const auto b = classify_forward(ctx, z, radii.r0, 2000);
    CHECK(b.cls == EscapeClass::Escaped);
    CHECK(b.index == a.index);
  }
}

TEST_CASE("classify_backward examples") {
  // (0.5, 0.5) at c = 0.25 reproduces itself exactly in binary arithmetic
  const ParamContext c25 = ParamContext::make(Complex(0.25, 0.0));
  CHECK(classify_backward(c25, RPoint{0.5, 0.5}, escape_radii(c25.c), 100000).cls ==
        EscapeClass::Bounded);

  // theta = (0.7, 0.7) at c = 0.21: rounding drift along the expanding
  // backward direction grows like 1.8^n, so boundedness is budget-limited
  const ParamContext c21 = ParamContext::make(Complex(0.21, 0.0));
  const EscapeRadii radii = escape_radii(c21.c);
  CHECK(classify_backward(c21, RPoint{0.7, 0.7}, radii, 50).cls == EscapeClass::Bounded);

  const auto line = classify_backward(c21, RPoint{5.0, 0.0}, radii, 100);
  CHECK(line.cls == EscapeClass::Escaped);
  CHECK(line.index == 0);

  const ParamContext c0 = ParamContext::make(Complex(0.0, 0.0));
  const EscapeRadii radii0 = escape_radii(c0.c);
  const auto esc = classify_backward(c0, RPoint{0.1, 100.0}, radii0, 100);
  CHECK(esc.cls == EscapeClass::Escaped);
  CHECK(esc.index <= 5);
}

TEST_CASE("escaped orbits obey the Fibonacci growth bound") {
  // after the first entry into V_R, ||f^(k+n)(z)|| >= (R/2)^F(n) for a few steps
  const ParamContext ctx = ParamContext::make(Complex(0.2, 0.0));
  const EscapeRadii radii = escape_radii(ctx.c);
  const double R = radii.r0;
  SplitMix64 rng(23);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 100; ++i) {
    const CPoint z = random_cpoint_modulus(rng, 0.5, 3.0);
    const auto cl = classify_forward(ctx, z, R, 200);
    if (cl.cls != EscapeClass::Escaped) continue;
    ++checked;
    CPoint w = z;
    for (int k = 0; k < cl.index; ++k) w = apply_forward(ctx, w);
    // F(2)=2, F(3)=3, F(4)=5 in the F0=F1=1 convention
    const long long fib[3] = {2, 3, 5};
    CPoint t = w;
    t = apply_forward(ctx, apply_forward(ctx, t));
    for (int n = 0; n < 3; ++n) {
      CHECK(max_norm(t) >= std::pow(R / 2.0, static_cast<double>(fib[n])));
      t = apply_forward(ctx, t);
      if (!is_finite(t)) break;
    }
  }
  CHECK(checked == 100);
}

TEST_CASE("c=0 oracle agrees with the forward classifier") {
  const ParamContext c0 = ParamContext::make(Complex(0.0, 0.0));
  SplitMix64 rng(29);
  int tested = 0, agree = 0;
  while (tested < 10000) {
    const CPoint z{Complex(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)),
                   Complex(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0))};
    const SetVerdict v = c0_kplus_oracle(c0, z, 1e-3);
    if (v == SetVerdict::BoundaryBand) continue;
    ++tested;
    const auto cl = classify_forward(c0, z, 2.1, 200);
    const bool inside = cl.cls == EscapeClass::Bounded;
    if (inside == (v == SetVerdict::Inside)) ++agree;
  }
  CHECK(agree >= 9900);
}

TEST_CASE("nested probes report zero violations") {
  for (double c : {0.3, 0.2}) {
    const ParamContext ctx = ParamContext::make(Complex(c, 0.0));
    const EscapeRadii radii = escape_radii(ctx.c);
    const double R = (1.0 + radii.margin) * radii.r2;
    const auto fwd = nested_forward_probe(ctx, R, 10, 2000, 99);
    CHECK(fwd.violations == 0);
    const auto bwd = nested_backward_probe(ctx, R, 10, 2000, 99);
    CHECK(bwd.violations == 0);
  }

  // empty report is vacuous
  const ParamContext ctx = ParamContext::make(Complex(0.2, 0.0));
  CHECK(nested_forward_probe(ctx, 5.0, 5, 0, 1).violations == 0);
}

TEST_CASE("probe results do not depend on the worker count") {
  const ParamContext ctx = ParamContext::make(Complex(0.33, 0.0));
  const EscapeRadii radii = escape_radii(ctx.c);
  const double R = (1.0 + radii.margin) * radii.r2;
  const auto one = nested_forward_probe(ctx, R, 8, 3000, 7, 1);
  const auto four = nested_forward_probe(ctx, R, 8, 3000, 7, 4);
  CHECK(one.violations == four.violations);
}

TEST_CASE("nesting holds along the 3-cycle and the origin orbit") {
  const ParamContext ctx = ParamContext::make(Complex(0.2, 0.0));
  const EscapeRadii radii = escape_radii(ctx.c);
  const double R = (1.0 + radii.margin) * radii.r2;
  // (0,0) with |c| < 1/4 stays in the invariant bidisk, hence in D_R forever
  RPoint z{0.0, 0.0};
  for (int k = 0; k < 200; ++k) {
    CHECK(max_norm(z) <= R);
    z = apply_forward(ctx, z);
  }
  // cycle points are backward-periodic, hence survive every backward depth
  RPoint p{-1.0, -1.0};
  for (int k = 0; k < 200; ++k) {
    CHECK(max_norm(p) <= R);
    const auto inv = apply_inverse(ctx, p);
    REQUIRE(inv.has_value());
    p = *inv;
  }
}

TEST_CASE("compactness probe bounding box") {
  const ParamContext ctx = ParamContext::make(Complex(0.2, 0.0));
  const auto rep = compactness_probe(ctx, 500, 2000, 4);
  CHECK(rep.within_bound);
  CHECK(rep.k_points >= 5);  // alpha, theta and the cycle at least
  CHECK(rep.max_abs_x <= rep.r_cubed);
  CHECK(rep.max_abs_y <= rep.r_cubed);

  const ParamContext c0 = ParamContext::make(Complex(0.0, 0.0));
  const auto rep0 = compactness_probe(c0, 500, 1000, 4);
  // (1,1) is the theta fixed point at c=0 and must land inside the box bound
  CHECK(rep0.within_bound);
  CHECK(rep0.max_abs_x >= 1.0);
  CHECK(rep0.max_abs_y >= 1.0);
}
