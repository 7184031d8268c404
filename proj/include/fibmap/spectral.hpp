#pragma once

#include <array>
#include <vector>

#include "fibmap/context.hpp"
#include "fibmap/point.hpp"

namespace fibmap {

/// Eigenvalue-modulus tolerance separating attracting / repelling /
/// indifferent. Boundary parameters (c = -2, c = 1/4) land exactly on
/// modulus 1, so the band only has to absorb rounding.
inline constexpr double kKindTol = 1e-9;

enum class PointKind { Attracting, Repelling, Saddle, Indifferent, Degenerate };

using Mat2 = std::array<std::array<Complex, 2>, 2>;

std::array<Complex, 2> eigenvalues_2x2(const Mat2& m);

/// Jacobian of f at (x, y): [[y, x], [1, 0]].
Mat2 forward_jacobian(const CPoint& z);

struct FixedPointInfo {
  Complex a;                // the root of a^2 - a + c = 0
  CPoint location;          // (a, a)
  int which = 1;            // 1 for a1 = (1-sqrt(1-4c))/2, 2 for a2
  std::array<Complex, 2> eigenvalues{};  // roots of x^2 - a x - a
  PointKind kind = PointKind::Degenerate;
};

enum class FixedPointStatus {
  Ok,
  Degenerate,   // 1 - 4c = 0: the two roots coincide
  NonRealPair,  // real mode with c > 1/4: roots left the real plane
};

struct FixedPoints {
  FixedPointStatus status = FixedPointStatus::Ok;
  FixedPointInfo a1, a2;
};

/// Both fixed points of f (equivalently of the inverse branch) with their
/// eigenvalue classification. real_mode only affects the NonRealPair marker.
FixedPoints fixed_points(Complex c, bool real_mode = false);

/// The section-3.1 table for real c, computed from the eigenvalues rather
/// than hard-coded: c < -2 (Repelling, Saddle); -2 < c < 1/4 (Attracting,
/// Saddle); c = -2 Indifferent; c = 1/4 Degenerate; c > 1/4 NonRealPair.
struct ParameterClass {
  FixedPointStatus status = FixedPointStatus::Ok;
  PointKind a1_kind = PointKind::Degenerate;
  PointKind a2_kind = PointKind::Degenerate;
  std::array<Complex, 2> a1_eigenvalues{};
  std::array<Complex, 2> a2_eigenvalues{};
};

ParameterClass classify_parameter(double c);

/// Eigen data of the inverse-branch Jacobian [[0, 1], [1/a1, -1]] at
/// (a1, a1): alpha_{1,2} = (-1 -+ sqrt(1 + 4/a1))/2. Throws
/// std::domain_error at a1 = 0 (c = 0) and std::invalid_argument for
/// c >= 1/4.
struct InverseFixedInfo {
  double a1 = 0.0;
  std::array<Complex, 2> eigenvalues{};
  double product_modulus = 0.0;  // |alpha1 alpha2| = 1/|a1|
  bool attracting = false;       // both moduli < 1 (holds for all c < -2)
};

InverseFixedInfo inverse_fixed_classification(double c);

/// The parameter-independent 3-cycle p = (-1,-1) -> (1+c,-1) -> (-1,1+c)
/// and its chain-rule multiplier J(f^2 p) J(f p) J(p).
struct CycleInfo {
  std::array<CPoint, 3> points{};
  Mat2 multiplier{};
  std::array<Complex, 2> multiplier_eigenvalues{};
};

CycleInfo three_cycle(Complex c);

/// Newton search for solutions of f^2(z) = z from a seed grid; converged
/// roots are deduplicated and split into fixed points of f and the rest.
/// The paper's no-2-cycles remark predicts nonfixed is always empty.
struct Period2Report {
  int seeds = 0;
  int converged = 0;
  std::vector<RPoint> fixed;     // within 1e-6 of a fixed point of f
  std::vector<RPoint> nonfixed;  // genuine period-2 points, if any existed
};

Period2Report period2_certificate(double c, double x0, double x1, double y0, double y1,
                                  int grid_n);

}  // namespace fibmap
