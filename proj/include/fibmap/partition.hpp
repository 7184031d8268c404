#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fibmap/context.hpp"
#include "fibmap/escape.hpp"
#include "fibmap/interval.hpp"
#include "fibmap/point.hpp"

namespace fibmap {

// The section-3.2 rectangle partition for real parameters, its exact
// image arithmetic, and machine certification of every transition
// inclusion the analysis rests on.

enum class RegionLabel : int {
  L, M, N, P, Q0, Q1, Q2, Q3, A, B, C, D, E, F, G, H, R1rect, R2rect
};

inline constexpr int kRegionCount = 18;

const char* region_name(RegionLabel label);

struct LabeledRect {
  RegionLabel label{};
  Rect rect{};
};

struct RegionTable {
  double c = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  std::array<LabeledRect, kRegionCount> regions{};

  const Rect& operator[](RegionLabel label) const {
    return regions[static_cast<int>(label)].rect;
  }
};

/// All 18 rectangles parameterized by c and a2. Requires 0 < c < 1/4, or
/// -1 < c < 0 when relax_negative is set (the paper's remark extends the
/// construction there).
RegionTable build_regions(double c, bool relax_negative = false);

/// Every closed rectangle containing z; regions overlap along edges, so
/// boundary points report several labels.
std::vector<RegionLabel> locate(const RegionTable& regions, const RPoint& z);

/// Exact bounding box of f(r): the second factor is r.x copied, the first
/// is the corner-attained range of x*y shifted by c. Corners pairing 0
/// with an infinite endpoint contribute 0, the value the x = 0 slice
/// attains, so no truncation or subdivision is ever needed.
Rect rect_image_bbox(double c, const Rect& r);

/// Exact bounding box of the branch preimage f^-1(r) = (r.y, (r.x - c)/r.y)
/// for r.y not straddling 0 (split first). The y = 0 line itself is
/// handled separately by the certifier.
Rect rect_preimage_bbox(double c, const Rect& r);

enum class CertStatus { Certified, Counterexample, DepthExceeded, TailUnverified };

/// Outward rounding applied to target edges during certification; several
/// inclusions are exactly tight at corners whose coordinates (a2, ...) are
/// irrational, so 1-ulp float overshoot there is not a counterexample.
inline constexpr double kEdgeSlackUlps = 4.0;

struct CertLeaf {
  Rect source;      // sub-rectangle of the source (forward) or of the target-space set (backward)
  Rect image_bbox;  // exact image (or preimage) bounding box
  int target = -1;  // index into targets when a single one contains the bbox, -1 for the union
};

struct InclusionCertificate {
  std::string name;
  double c = 0.0;
  bool backward = false;
  int max_depth = 0;
  CertStatus status = CertStatus::Certified;
  std::vector<std::string> target_names;
  std::vector<CertLeaf> leaves;  // sorted by source rectangle coordinates
  RPoint counterexample{};       // a point of the source set with...
  RPoint counterexample_image{}; // ...its image outside every target
};

/// Certifies f(source) inside the union of targets by adaptive bisection:
/// a piece whose exact image box fits one target (or, failing that, the
/// union of targets) becomes a leaf; otherwise the piece splits along its
/// longest finite axis, unbounded axes splitting at offset B from their
/// finite end. A piece of diameter below 1e-9 that still fails, or whose
/// representative point demonstrably maps outside the union, yields a
/// Counterexample.
InclusionCertificate certify_inclusion(double c, const std::string& name, const Rect& source,
                                       const std::vector<std::string>& target_names,
                                       const std::vector<Rect>& targets, int max_depth = 30,
                                       double B = 1e3);

/// Same machinery for f^-1(source) inside the union of targets, driven by
/// exact interval evaluation of the inverse branch. If (c, 0) lies in
/// source, the preimage contains the whole line {x = 0}, and the targets
/// must cover it.
InclusionCertificate certify_preimage_inclusion(double c, const std::string& name,
                                                const Rect& source,
                                                const std::vector<std::string>& target_names,
                                                const std::vector<Rect>& targets,
                                                int max_depth = 30, double B = 1e3);

std::string serialize_certificate(const InclusionCertificate& cert);

/// Runs every transition inclusion of the section-3.2 analysis (forward
/// and backward for all 16 regions, the two auxiliary strips of the
/// non-membership lemma) plus the scalar inequality (1+c) a2 <= 1.
struct TransitionReport {
  struct Row {
    std::string name;
    CertStatus status = CertStatus::Certified;
    bool pass = false;
    std::size_t leaves = 0;
  };
  double c = 0.0;
  std::vector<Row> rows;
  double ca_value = 0.0;  // (1+c) a2
  bool ca_pass = false;
  bool all_pass = false;
};

TransitionReport verify_transition_tables(double c, int max_depth = 30);

/// Bundle of everything the real-plane classifiers need.
struct RealDynamics {
  ParamContext ctx;
  double c = 0.0;
  RegionTable regions;
  EscapeRadii radii;
  RPoint alpha{}, theta{};
  std::array<RPoint, 3> cycle{};  // p, f(p), f^2(p)
};

RealDynamics make_real_dynamics(double c, bool relax_negative = false);

struct ItineraryStep {
  RPoint z{};
  std::vector<RegionLabel> labels;
};

struct Itinerary {
  std::vector<ItineraryStep> steps;
  OrbitStatus status = OrbitStatus::Bounded;
};

/// locate() along the orbit; stops at budget, at entry into the escape
/// set V_R / G_R at the context radii, or when the inverse dies.
Itinerary itinerary(const RealDynamics& rd, const RPoint& z, Direction dir, int budget);

enum class ForwardLimit { Alpha, Theta, Cycle3, Escape, Undecided };
enum class BackwardLimit { Theta, Cycle3, BackwardEscape, InverseUndefined, Undecided };

struct ForwardLimitResult {
  ForwardLimit cls = ForwardLimit::Undecided;
  int phase = -1;  // cycle phase at the decision step, for Cycle3
  int index = -1;  // decision step (escape entry or convergence onset)
};

struct BackwardLimitResult {
  BackwardLimit cls = BackwardLimit::Undecided;
  int phase = -1;
  int index = -1;
};

/// Radius of the exclusion balls around the five exceptional periodic
/// points when deciding escape through S = L∪M∪N∪P (resp. Z = A..H).
inline constexpr double kEscapeBallRadius = 1e-8;

/// Forward fate of a real point: Escape once the orbit enters S away from
/// the periodic points (divergence is then a theorem), a periodic target
/// once the orbit is within tol of it and stays within 2 tol for 10 more
/// steps, Undecided when the budget runs out.
ForwardLimitResult classify_limit_real(const RealDynamics& rd, RPoint z, int budget, double tol);

/// Mirror under the inverse branch, with escape through Z and targets
/// theta / the 3-cycle (alpha is backward-repelling, so orbits other than
/// alpha itself never settle there).
BackwardLimitResult classify_backward_limit_real(const RealDynamics& rd, RPoint z, int budget,
                                                 double tol);

}  // namespace fibmap
