#include <doctest.h>

#include "fibmap/dynamics.hpp"
#include "test_util.hpp"

using namespace fibmap;
using namespace testutil;

TEST_CASE("context constants") {
  const ParamContext ctx = ParamContext::make(Complex(0.2, 0.0));
  CHECK(ctx.is_real);
  CHECK(ulp_close(ctx.beta * ctx.beta, ctx.beta + 1.0));
  CHECK(ctx.fib_at(-1) == 0);
  CHECK(ctx.fib_at(0) == 1);
  CHECK(ctx.fib_at(1) == 1);
  for (int n = 0; n + 2 <= ctx.max_fib_index(); ++n)
    CHECK(ctx.fib_at(n + 2) == ctx.fib_at(n + 1) + ctx.fib_at(n));
  // the table really is capped at the native exponent range
  CHECK(ctx.max_fib_index() >= 80);
  CHECK(ctx.fib_at(ctx.max_fib_index()) > 0);
}

TEST_CASE("apply_forward basic values") {
  const ParamContext c0 = ParamContext::make(Complex(0.0, 0.0));
  const RPoint a = apply_forward(c0, RPoint{2.0, 1.0});
  CHECK(a.x == 2.0);
  CHECK(a.y == 2.0);

  // the universal 3-cycle step: (-1,-1) -> (1+c,-1)
  const ParamContext cx = ParamContext::make(Complex(0.37, -1.2));
  const CPoint b = apply_forward(cx, CPoint{Complex(-1.0), Complex(-1.0)});
  CHECK(ulp_close(b.x, Complex(1.37, -1.2)));
  CHECK(b.y == Complex(-1.0));

  // the line {x=0} collapses to (c, 0)
  const CPoint d = apply_forward(cx, CPoint{Complex(0.0), Complex(123.0, -7.0)});
  CHECK(d.x == cx.c);
  CHECK(d.y == Complex(0.0));
}

TEST_CASE("apply_inverse basic values and round trips") {
  const ParamContext cx = ParamContext::make(Complex(0.31, 0.0));
  // solve f(a,b) = (1+c, -1) by hand: a = -1, b = -1
  const auto pre = apply_inverse(cx, CPoint{Complex(1.31), Complex(-1.0)});
  REQUIRE(pre.has_value());
  CHECK(ulp_close(pre->x, Complex(-1.0)));
  CHECK(ulp_close(pre->y, Complex(-1.0)));

  // (a2, a2) is a fixed point of the inverse branch; a2 = 0.7 at c = 0.21
  const ParamContext c21 = ParamContext::make(Complex(0.21, 0.0));
  const auto fp = apply_inverse(c21, CPoint{Complex(0.7), Complex(0.7)});
  REQUIRE(fp.has_value());
  CHECK(ulp_close(fp->x, Complex(0.7)));
  CHECK(ulp_close(fp->y, Complex(0.7)));

  CHECK_FALSE(apply_inverse(cx, CPoint{Complex(5.0), Complex(0.0)}).has_value());

  SplitMix64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const CPoint z = random_cpoint_modulus(rng, 0.3, 2.0);
    const auto back = apply_inverse(cx, apply_forward(cx, z));
    REQUIRE(back.has_value());
    CHECK(ulp_close(back->x, z.x));
    CHECK(ulp_close(back->y, z.y));
    const auto fwd = apply_forward(cx, *apply_inverse(cx, z));
    CHECK(ulp_close(fwd.x, z.x));
    CHECK(ulp_close(fwd.y, z.y));
  }
}

TEST_CASE("iterate_orbit statuses") {
  const ParamContext c0 = ParamContext::make(Complex(0.0, 0.0));
  const auto fixed = iterate_orbit<double>(c0, {0.0, 0.0}, Direction::Forward, 10, nullptr);
  CHECK(fixed.status == OrbitStatus::Bounded);
  CHECK(fixed.points.size() == 11);
  for (const auto& p : fixed.points) {
    CHECK(p.x == 0.0);
    CHECK(p.y == 0.0);
  }

  const ParamContext c02 = ParamContext::make(Complex(0.2, 0.0));
  const auto esc = iterate_orbit<double>(
      c02, {2.0, 2.0}, Direction::Forward, 100,
      [](const RPoint& z) { return std::min(std::abs(z.x), std::abs(z.y)) >= 2.0; });
  CHECK(esc.status == OrbitStatus::Escaped);
  CHECK(esc.exit_index == 0);

  const auto dead = iterate_orbit<double>(c02, {5.0, 0.0}, Direction::Backward, 100, nullptr);
  CHECK(dead.status == OrbitStatus::InverseUndefined);
  CHECK(dead.exit_index == 0);

  // consecutive points satisfy the map relation
  const auto orb = iterate_orbit<double>(c02, {0.3, 0.4}, Direction::Forward, 50, nullptr);
  for (std::size_t i = 0; i + 1 < orb.points.size(); ++i) {
    const RPoint next = apply_forward(c02, orb.points[i]);
    CHECK(ulp_close(next.x, orb.points[i + 1].x));
    CHECK(ulp_close(next.y, orb.points[i + 1].y));
  }
}

TEST_CASE("monomial forward closed form") {
  const ParamContext c0 = ParamContext::make(Complex(0.0, 0.0));

  // frozen oracle values: (2,1) -> (2,2) -> (4,2) -> (8,4)
  const auto n3 = monomial_forward_c0<double>(c0, {2.0, 1.0}, 3);
  REQUIRE(n3.has_value());
  CHECK(n3->x == 8.0);
  CHECK(n3->y == 4.0);
  const auto n2 = monomial_forward_c0<double>(c0, {3.0, 2.0}, 2);
  REQUIRE(n2.has_value());
  CHECK(n2->x == 18.0);
  CHECK(n2->y == 6.0);

  SplitMix64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const CPoint z = random_cpoint_modulus(rng, 0.5, 1.5);
    for (int n = 1; n <= 10; ++n) {
      const auto closed = monomial_forward_c0<Complex>(c0, z, n);
      REQUIRE(closed.has_value());
      CHECK(pt_close_rel(*closed, iterate_forward_c0(z, n), 1e-9));
    }
  }

  // n=1 is one application
  const CPoint w{Complex(1.1, 0.3), Complex(0.7, -0.2)};
  const auto one = monomial_forward_c0<Complex>(c0, w, 1);
  REQUIRE(one.has_value());
  CHECK(ulp_close(one->x, w.x * w.y));
  CHECK(ulp_close(one->y, w.x));

  // overflow reports nullopt rather than storing infinities
  CHECK_FALSE(monomial_forward_c0<double>(c0, {3.0, 3.0}, 60).has_value());
}

TEST_CASE("monomial backward closed form matches the inverse oracle") {
  const ParamContext c0 = ParamContext::make(Complex(0.0, 0.0));

  // frozen: f0(2,2) = (4,2), so n=1 takes (4,2) back to (2,2)
  const auto b1 = monomial_backward_c0<double>(c0, {4.0, 2.0}, 1);
  REQUIRE(b1.has_value());
  CHECK(ulp_close(b1->x, 2.0));
  CHECK(ulp_close(b1->y, 2.0));

  // n=1 is (y, x/y), n=2 is (x/y, y^2/x)
  const CPoint w{Complex(1.2, 0.4), Complex(0.8, -0.5)};
  const auto w1 = monomial_backward_c0<Complex>(c0, w, 1);
  REQUIRE(w1.has_value());
  CHECK(ulp_close(w1->x, w.y));
  CHECK(ulp_close(w1->y, w.x / w.y));
  const auto w2 = monomial_backward_c0<Complex>(c0, w, 2);
  REQUIRE(w2.has_value());
  CHECK(ulp_close(w2->x, w.x / w.y));
  CHECK(ulp_close(w2->y, w.y * w.y / w.x));

  SplitMix64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const CPoint z = random_cpoint_modulus(rng, 0.5, 1.5);
    for (int n = 1; n <= 10; ++n) {
      const auto closed = monomial_backward_c0<Complex>(c0, z, n);
      REQUIRE(closed.has_value());
      CHECK(pt_close_rel(*closed, iterate_backward_c0(z, n), 1e-9));
    }
  }

  // backward then forward closed forms invert each other
  SplitMix64 rng2(14);
  for (int i = 0; i < 100; ++i) {
    const CPoint z = random_cpoint_modulus(rng2, 0.6, 1.4);
    const auto back = monomial_backward_c0<Complex>(c0, z, 4);
    REQUIRE(back.has_value());
    const auto fwd = monomial_forward_c0<Complex>(c0, *back, 4);
    REQUIRE(fwd.has_value());
    CHECK(pt_close_rel(*fwd, z, 1e-9));
  }
}

TEST_CASE("c=0 membership oracles") {
  const ParamContext c0 = ParamContext::make(Complex(0.0, 0.0));
  CHECK(c0_kplus_oracle(c0, {Complex(0.0), Complex(1e6)}) == SetVerdict::Inside);
  CHECK(c0_kplus_oracle(c0, {Complex(1.0), Complex(1.0)}) == SetVerdict::BoundaryBand);
  CHECK(c0_kplus_oracle(c0, {Complex(2.0), Complex(1.0)}) == SetVerdict::Outside);
  CHECK(c0_kplus_oracle(c0, {Complex(2.0), Complex(0.1)}) == SetVerdict::Inside);

  CHECK(c0_kminus_oracle(c0, {Complex(1.0), Complex(1.0)}) == SetVerdict::Inside);
  const double t = std::pow(4.0, 1.0 / c0.beta);
  CHECK(c0_kminus_oracle(c0, {Complex(4.0), Complex(t)}) == SetVerdict::Inside);
  CHECK(c0_kminus_oracle(c0, {Complex(4.0), Complex(1.0)}) == SetVerdict::Outside);
  CHECK(c0_kminus_oracle(c0, {Complex(0.0), Complex(0.0)}) == SetVerdict::OriginExcluded);
}

TEST_CASE("semiconjugacy residual vanishes") {
  CHECK(semiconjugacy_residual({Complex(1.0, 1.0), Complex(2.0)}) <=
        4 * std::numeric_limits<double>::epsilon() * 4.0);
  CHECK(semiconjugacy_residual({Complex(0.0), Complex(5.0)}) == 0.0);
  CHECK(semiconjugacy_residual({Complex(3.0), Complex(-2.0)}) == 0.0);

  SplitMix64 rng(5);
  for (int i = 0; i < 10000; ++i) {
    const CPoint z = random_cpoint_modulus(rng, 0.0, 10.0);
    const double scale = std::max(1.0, std::abs(z.x) * std::abs(z.y));
    CHECK(semiconjugacy_residual(z) <= 4 * scale * std::numeric_limits<double>::epsilon());
  }
}
