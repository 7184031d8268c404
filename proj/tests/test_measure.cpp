#include <doctest.h>

#include "fibmap/measure.hpp"
#include "test_util.hpp"

using namespace fibmap;
using namespace testutil;

TEST_CASE("mc_measure basic behaviour") {
  const ParamContext c0 = ParamContext::make(Complex(0.0, 0.0));

  // a box deep inside V_R: everything escapes at step 0
  const MeasureEstimate zero =
      mc_measure(c0, SetSelector::Kplus, BoxSpec::real_box(10.0, 11.0, 10.0, 11.0), 500, 1, 50);
  CHECK(zero.hits == 0);
  CHECK(zero.value == 0.0);
  CHECK(zero.stderr_ == 0.0);

  // the invariant bidisk at c=0.2 is entirely inside K+
  const ParamContext c02 = ParamContext::make(Complex(0.2, 0.0));
  const MeasureEstimate full =
      mc_measure(c02, SetSelector::Kplus, BoxSpec::bidisk(0.5), 2000, 2, 200);
  CHECK(full.hits == full.samples);
  const double vol = std::pow(M_PI * 0.25, 2.0);
  CHECK(std::abs(full.value - vol) < 1e-12);
  CHECK(full.stderr_ == 0.0);  // p = 1 degenerates the binomial error

  // single sample edge case
  const MeasureEstimate one =
      mc_measure(c0, SetSelector::Kplus, BoxSpec::real_box(0.0, 0.1, 0.0, 0.1), 1, 3, 50);
  CHECK(one.stderr_ == 0.0);
  CHECK((one.hits == 0 || one.hits == 1));

  CHECK_THROWS_AS(
      mc_measure(c0, SetSelector::Kplus, BoxSpec::real_box(0, 1, 0, 1), 0, 1, 10),
      std::invalid_argument);
}

TEST_CASE("mc_measure is deterministic and worker-count independent") {
  const ParamContext ctx = ParamContext::make(Complex(0.2, 0.0));
  const BoxSpec box = BoxSpec::real_box(-2.0, 2.0, -2.0, 2.0);
  const MeasureEstimate a = mc_measure(ctx, SetSelector::Kplus, box, 20000, 77, 300, 1);
  const MeasureEstimate b = mc_measure(ctx, SetSelector::Kplus, box, 20000, 77, 300, 4);
  const MeasureEstimate c = mc_measure(ctx, SetSelector::Kplus, box, 20000, 77, 300, 3);
  CHECK(a.hits == b.hits);
  CHECK(a.hits == c.hits);
  CHECK(a.value == b.value);

  // different seeds move the estimate, same seed reproduces it bit-exactly
  const MeasureEstimate d = mc_measure(ctx, SetSelector::Kplus, box, 20000, 78, 300, 2);
  CHECK(a.value == mc_measure(ctx, SetSelector::Kplus, box, 20000, 77, 300, 2).value);
  CHECK(d.samples == a.samples);
}

TEST_CASE("hit count is non-increasing in the budget") {
  const ParamContext ctx = ParamContext::make(Complex(0.33, 0.0));
  const BoxSpec box = BoxSpec::real_box(-2.0, 2.0, -2.0, 2.0);
  long long prev = -1;
  for (int budget : {10, 40, 200, 1000}) {
    const MeasureEstimate est = mc_measure(ctx, SetSelector::Kplus, box, 5000, 5, budget);
    if (prev >= 0) CHECK(est.hits <= prev);
    prev = est.hits;
  }
}

TEST_CASE("csv row format") {
  const ParamContext ctx = ParamContext::make(Complex(0.2, 0.0));
  const MeasureEstimate est =
      mc_measure(ctx, SetSelector::Kminus, BoxSpec::bidisk(1.0), 100, 9, 50);
  CHECK(measure_csv_header() == "c,set,box,samples,budget,value,stderr,seed\n");
  const std::string row = measure_csv_row(est);
  CHECK(row.find("0.2,kminus,polydisk:1,100,50,") == 0);
  CHECK(row.find(",9\n") == row.size() - 3);
}

TEST_CASE("interior polydisk") {
  const auto p02 = interior_polydisk(Complex(0.2, 0.0));
  REQUIRE(p02.has_value());
  CHECK(p02->a == 0.5);
  CHECK(std::abs(p02->margin - 0.05) < 1e-15);

  const auto p0 = interior_polydisk(Complex(0.0, 0.0));
  REQUIRE(p0.has_value());
  CHECK(p0->margin == 0.25);

  CHECK_FALSE(interior_polydisk(Complex(0.3, 0.0)).has_value());
  CHECK_FALSE(interior_polydisk(Complex(0.2, 0.2)).has_value());

  // sampled invariance: points of D_a remain in D_a for 100 steps
  const ParamContext ctx = ParamContext::make(Complex(0.2, 0.0));
  SplitMix64 rng(61);
  for (int i = 0; i < 2000; ++i) {
    CPoint z = random_cpoint_modulus(rng, 0.0, p02->a);
    for (int k = 0; k < 100; ++k) {
      CHECK(max_norm(z) <= p02->a);
      z = apply_forward(ctx, z);
    }
  }
}

TEST_CASE("kminus positivity at strongly negative c") {
  const PositivityReport rep = kminus_positivity_check(-3.0, 2000, 13, 1000);
  CHECK(std::abs(rep.inverse.product_modulus - 0.7675918792439982) < 1e-6);
  CHECK(rep.inverse.attracting);
  CHECK(rep.fraction == 1.0);

  const PositivityReport deep = kminus_positivity_check(-20.0, 500, 13, 1000);
  CHECK(deep.fraction == 1.0);

  CHECK_THROWS_AS(kminus_positivity_check(-1.0, 10, 1, 10), std::invalid_argument);
}

TEST_CASE("conjecture explorer tabulates without asserting") {
  const std::vector<Complex> cs = {Complex(0.2, 0.0), Complex(-3.0, 0.0)};
  const auto rows = conjecture_explorer(cs, BoxSpec::bidisk(2.0), 2000, 21, 200);
  REQUIRE(rows.size() == 4);  // kplus and kminus per parameter
  // K+ estimate at c=0.2 is positive: the invariant bidisk guarantees hits
  CHECK(rows[0].estimate.value > 0.0);
  CHECK(conjecture_explorer({}, BoxSpec::bidisk(1.0), 10, 1, 10).empty());

  const std::string csv = explorer_csv(rows);
  CHECK(csv.find("# EXPLORATORY") == 0);
  CHECK(csv.find("c,set,box,samples,budget,value,stderr,seed\n") != std::string::npos);
  CHECK(csv.find("-3,kminus,") != std::string::npos);
}
