#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fibmap/partition.hpp"
#include "fibmap/point.hpp"

namespace fibmap {

enum class BaseSelector { Theta, P1, P2, P3 };  // theta, p, f(p), f^2(p)

/// Local eigen-frame of the period map at a saddle periodic point.
/// Directions are unit vectors with the first nonzero component positive.
struct SaddleFrame {
  RPoint base{};
  int period = 1;
  RPoint stable_dir{}, unstable_dir{};
  double stable_mult = 0.0, unstable_mult = 0.0;
};

/// Throws std::domain_error (NotASaddle) when the period-map eigenvalues
/// do not straddle the unit circle at tolerance 1e-9.
SaddleFrame saddle_frame(const RealDynamics& rd, BaseSelector base);

struct ManifoldCurve {
  SaddleFrame frame;
  bool stable_side = false;
  int branch = +1;  // seed direction sign
  double eps0 = 0.0;
  double arc_tol = 0.0;
  std::vector<RPoint> vertices;  // vertices[0] is the base point
  bool truncated_at_singular_line = false;  // stable branch hit |y| < 1e-9
};

/// Grows one branch of the unstable manifold by iterating an adaptive
/// fundamental arc with f^period (f^(2 period) when the multiplier is
/// negative, which swaps the branches) and resampling so consecutive
/// vertices are at most arc_tol * (1 + ||z||) apart. Stops at max_arclen
/// or on leaving the bidisk of radius R2.
ManifoldCurve trace_unstable(const RealDynamics& rd, const SaddleFrame& frame, int steps,
                             double eps0, double arc_tol, double max_arclen, int branch = +1);

/// Same growth under the inverse branch; a branch is truncated when its
/// next point would need |y| < 1e-9. Throws std::domain_error (BranchDied)
/// if the seed segment is unusable.
ManifoldCurve trace_stable(const RealDynamics& rd, const SaddleFrame& frame, int steps,
                           double eps0, double arc_tol, double max_arclen, int branch = +1);

double default_eps0(const SaddleFrame& frame);  // 1e-6 * (1 + ||base||)

/// CSV rows `branch,side,index,x,y` with a comment header carrying c, the
/// base point and the multipliers.
std::string curves_to_csv(const RealDynamics& rd, const std::vector<ManifoldCurve>& curves);

/// Distance from a point to the polyline (min over point-segment distances).
double polyline_distance(const std::vector<RPoint>& poly, const RPoint& z);

/// Sampling verification of K+ = union of stable manifolds:
///  - interior: Alpha-classified grid points probed at 4 neighbours;
///  - boundary: bisection between Alpha and Escape grid points down to
///    width 1e-9; the midpoint's orbit must shadow theta or the 3-cycle
///    to tol for three consecutive period-multiples.
struct KplusDecompReport {
  int grid_n = 0;
  long long alpha_points = 0, theta_points = 0, cycle_points = 0, escape_points = 0,
            undecided_points = 0;
  long long interior_total = 0, interior_ok = 0;
  int segments_requested = 0, segments_used = 0, segments_discarded = 0;
  // approach = orbit ever within tol of theta/the cycle; success adds the
  // stricter three-consecutive-period-multiples requirement
  int boundary_approach = 0;
  int boundary_success = 0;
  int boundary_undecided = 0;
};

KplusDecompReport verify_kplus_decomposition(const RealDynamics& rd, int grid_n, double x0,
                                             double x1, double y0, double y1, int budget,
                                             double tol, int segments, std::uint64_t seed,
                                             int workers = 0);

/// Sampling verification of K- = union of unstable manifolds: grid points
/// classified backward-Bounded must classify Theta/Cycle3 or sit within
/// tol of a traced unstable curve. Off-curve points escape backward at
/// these budgets, so the grid count is expected to be zero (K- has empty
/// interior); seeded points on the manifolds make the check non-vacuous.
struct KminusDecompReport {
  int grid_n = 0;
  int budget = 0;
  long long grid_points = 0;
  long long backward_bounded = 0;
  long long theta_or_cycle = 0;
  long long near_curve = 0;
  long long unexplained = 0;
  double worst_curve_distance = 0.0;
  long long seeded_total = 0, seeded_ok = 0;
};

KminusDecompReport verify_kminus_decomposition(const RealDynamics& rd, int grid_n, int budget,
                                               double tol, std::uint64_t seed, int workers = 0);

}  // namespace fibmap
