#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fibmap/context.hpp"
#include "fibmap/spectral.hpp"

namespace fibmap {

enum class SetSelector { Kplus, Kminus, K };

/// Sampling domain: either a real-plane box (area) or the complex bidisk
/// max(|x|,|y|) <= radius (4-volume (pi r^2)^2, sampled by per-coordinate
/// rejection from the bounding square, acceptance ratio (pi/4)^2).
struct BoxSpec {
  bool polydisk = false;
  double radius = 0.0;
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;

  double volume() const;
  std::string describe() const;

  static BoxSpec real_box(double x0, double x1, double y0, double y1);
  static BoxSpec bidisk(double radius);
};

/// Box-restricted Monte Carlo estimate of the Lebesgue measure of the
/// selected invariant set, a hit being a budget-bounded classification.
/// Bit-identical for fixed (seed, samples, budget, box) at any worker count.
struct MeasureEstimate {
  Complex c;
  SetSelector selector = SetSelector::Kplus;
  BoxSpec box;
  long long samples = 0;
  long long hits = 0;
  int budget = 0;
  std::uint64_t seed = 0;
  double value = 0.0;   // volume * hits/samples
  double stderr_ = 0.0; // volume * sqrt(p(1-p)/samples)
};

MeasureEstimate mc_measure(const ParamContext& ctx, SetSelector selector, const BoxSpec& box,
                           long long samples, std::uint64_t seed, int budget, int workers = 0);

/// CSV row `c,set,box,samples,budget,value,stderr,seed`.
std::string measure_csv_header();
std::string measure_csv_row(const MeasureEstimate& est);

/// Invariant bidisk D_a with f(D_a) inside D_a: for |c| < 1/4 the radius
/// a = 1/2 maximizes a - a^2 - |c| and the margin is 1/4 - |c|; nullopt
/// once the margin closes.
struct PolydiskInfo {
  double a = 0.0;
  double margin = 0.0;
};

std::optional<PolydiskInfo> interior_polydisk(Complex c);

/// For real c < -2 the inverse branch has an attracting fixed point at
/// (a1, a1); samples of a small bidisk around it must converge backward.
struct PositivityReport {
  InverseFixedInfo inverse;
  long long samples = 0;
  long long converged = 0;
  double fraction = 0.0;
  double ball_radius = 0.0;
};

PositivityReport kminus_positivity_check(double c, long long samples, std::uint64_t seed,
                                         int budget, int workers = 0);

/// EXPLORATORY tabulation of box-restricted K+/K- estimates across
/// parameters; prints data, asserts nothing.
struct ExplorerRow {
  MeasureEstimate estimate;
};

std::vector<ExplorerRow> conjecture_explorer(const std::vector<Complex>& c_list,
                                             const BoxSpec& box, long long samples,
                                             std::uint64_t seed, int budget, int workers = 0);

std::string explorer_csv(const std::vector<ExplorerRow>& rows);

}  // namespace fibmap
