#include "fibmap/manifolds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fibmap/dynamics.hpp"
#include "fibmap/parallel.hpp"
#include "fibmap/rng.hpp"
#include "fibmap/spectral.hpp"

namespace fibmap {

namespace {

constexpr double kSingularGuard = 1e-9;

struct Eig2 {
  double lambda1, lambda2;       // |lambda1| <= |lambda2|
  RPoint v1{}, v2{};
};

RPoint normalize_signed(RPoint v) {
  const double n = std::hypot(v.x, v.y);
  v = {v.x / n, v.y / n};
  const double lead = std::abs(v.x) > 1e-12 ? v.x : v.y;
  if (lead < 0.0) v = {-v.x, -v.y};
  return v;
}

// real eigen-decomposition of [[a, b], [c, d]]; throws if complex pair
Eig2 eigen_real(double a, double b, double c, double d) {
  const double tr = a + d;
  const double det = a * d - b * c;
  const double disc = tr * tr - 4.0 * det;
  if (disc < 0.0) throw std::domain_error("NotASaddle: complex eigenvalue pair");
  const double root = std::sqrt(disc);
  double l1 = (tr - root) / 2.0;
  double l2 = (tr + root) / 2.0;
  if (std::abs(l1) > std::abs(l2)) std::swap(l1, l2);
  auto vec = [&](double l) {
    RPoint v{b, l - a};
    if (std::max(std::abs(v.x), std::abs(v.y)) < 1e-14) v = {l - d, c};
    return normalize_signed(v);
  };
  return {l1, l2, vec(l1), vec(l2)};
}

std::array<std::array<double, 2>, 2> period_jacobian(const RealDynamics& rd, const RPoint& base,
                                                     int period) {
  std::array<std::array<double, 2>, 2> m{{{1.0, 0.0}, {0.0, 1.0}}};
  RPoint z = base;
  for (int k = 0; k < period; ++k) {
    const double j[2][2] = {{z.y, z.x}, {1.0, 0.0}};
    std::array<std::array<double, 2>, 2> next{};
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) next[r][s] = j[r][0] * m[0][s] + j[r][1] * m[1][s];
    m = next;
    z = apply_forward(rd.ctx, z);
  }
  return m;
}

}  // namespace

SaddleFrame saddle_frame(const RealDynamics& rd, BaseSelector base) {
  SaddleFrame fr;
  switch (base) {
    case BaseSelector::Theta: fr.base = rd.theta; fr.period = 1; break;
    case BaseSelector::P1: fr.base = rd.cycle[0]; fr.period = 3; break;
    case BaseSelector::P2: fr.base = rd.cycle[1]; fr.period = 3; break;
    case BaseSelector::P3: fr.base = rd.cycle[2]; fr.period = 3; break;
  }
  const auto m = period_jacobian(rd, fr.base, fr.period);
  const Eig2 eig = eigen_real(m[0][0], m[0][1], m[1][0], m[1][1]);
  if (!(std::abs(eig.lambda1) < 1.0 - kKindTol && std::abs(eig.lambda2) > 1.0 + kKindTol))
    throw std::domain_error("NotASaddle: eigenvalue moduli do not straddle 1");
  fr.stable_mult = eig.lambda1;
  fr.unstable_mult = eig.lambda2;
  fr.stable_dir = eig.v1;
  fr.unstable_dir = eig.v2;
  return fr;
}

double default_eps0(const SaddleFrame& frame) {
  return 1e-6 * (1.0 + max_norm(frame.base));
}

namespace {

struct Tracer {
  const RealDynamics& rd;
  bool stable;
  int apps;       // map applications per level (doubled for negative multiplier)
  RPoint origin;
  RPoint dir;
  double eps0;
  double growth;  // |mult|^(1 or 2)

  // point of the fundamental arc at parameter t in [0, 1]
  RPoint fund(double t) const {
    const double r = eps0 * std::pow(growth, t);
    return {origin.x + r * dir.x, origin.y + r * dir.y};
  }

  // applies the level map k times; false when the inverse branch dies
  bool map_level(RPoint z, int k, RPoint* out) const {
    for (int i = 0; i < k * apps; ++i) {
      if (stable) {
        if (std::abs(z.y) < kSingularGuard) return false;
        auto inv = apply_inverse(rd.ctx, z);
        if (!inv) return false;
        z = *inv;
      } else {
        z = apply_forward(rd.ctx, z);
      }
      if (!is_finite(z)) return false;
    }
    *out = z;
    return true;
  }
};

struct GrowState {
  ManifoldCurve* curve;
  double arclen = 0.0;
  double max_arclen;
  double box_radius;
  bool stopped = false;

  void push(const RPoint& z) {
    if (stopped) return;
    arclen += dist(curve->vertices.back(), z);
    curve->vertices.push_back(z);
    if (arclen > max_arclen || max_norm(z) > box_radius) stopped = true;
  }
};

// Emits the arc between parameters t0 < t1 of level k, refining until
// consecutive vertices are within arc_tol * (1 + ||z||).
void emit_segment(const Tracer& tr, GrowState& st, int k, double t0, double t1, const RPoint& z0,
                  const RPoint& z1, double arc_tol, int depth) {
  if (st.stopped) return;
  if (dist(z0, z1) <= arc_tol * (1.0 + max_norm(z1)) || depth >= 28 || t1 - t0 < 1e-12) {
    st.push(z1);
    return;
  }
  const double tm = 0.5 * (t0 + t1);
  RPoint zm;
  if (!tr.map_level(tr.fund(tm), k, &zm)) {
    st.curve->truncated_at_singular_line = tr.stable;
    st.stopped = true;
    return;
  }
  emit_segment(tr, st, k, t0, tm, z0, zm, arc_tol, depth + 1);
  emit_segment(tr, st, k, tm, t1, zm, z1, arc_tol, depth + 1);
}

ManifoldCurve trace_curve(const RealDynamics& rd, const SaddleFrame& frame, bool stable, int steps,
                          double eps0, double arc_tol, double max_arclen, int branch) {
  const double mult = stable ? frame.stable_mult : frame.unstable_mult;
  ManifoldCurve curve;
  curve.frame = frame;
  curve.stable_side = stable;
  curve.branch = branch >= 0 ? +1 : -1;
  curve.eps0 = eps0;
  curve.arc_tol = arc_tol;

  Tracer tr{rd,
            stable,
            frame.period * (mult < 0.0 ? 2 : 1),
            frame.base,
            {curve.branch * (stable ? frame.stable_dir.x : frame.unstable_dir.x),
             curve.branch * (stable ? frame.stable_dir.y : frame.unstable_dir.y)},
            eps0,
            0.0};
  const double g = std::abs(mult);
  tr.growth = mult < 0.0 ? g * g : g;
  if (stable) tr.growth = 1.0 / tr.growth;  // inverse map expands by 1/|mult|

  curve.vertices.push_back(frame.base);
  GrowState st{&curve, 0.0, max_arclen, (1.0 + rd.radii.margin) * rd.radii.r2, false};
  st.push(tr.fund(0.0));

  for (int k = 0; k <= steps && !st.stopped; ++k) {
    // level k spans the image of the fundamental arc under k applications
    RPoint z0;
    if (!tr.map_level(tr.fund(0.0), k, &z0)) {
      if (k == 0) throw std::domain_error("BranchDied: seed segment hits the singular line");
      curve.truncated_at_singular_line = stable;
      break;
    }
    if (k > 0) {
      // stitch the small nonlinearity gap between level ends
      st.push(z0);
      if (st.stopped) break;
    }
    RPoint z1;
    if (!tr.map_level(tr.fund(1.0), k, &z1)) {
      curve.truncated_at_singular_line = stable;
      break;
    }
    emit_segment(tr, st, k, 0.0, 1.0, z0, z1, arc_tol, 0);
  }
  return curve;
}

}  // namespace

ManifoldCurve trace_unstable(const RealDynamics& rd, const SaddleFrame& frame, int steps,
                             double eps0, double arc_tol, double max_arclen, int branch) {
  return trace_curve(rd, frame, false, steps, eps0, arc_tol, max_arclen, branch);
}

ManifoldCurve trace_stable(const RealDynamics& rd, const SaddleFrame& frame, int steps,
                           double eps0, double arc_tol, double max_arclen, int branch) {
  return trace_curve(rd, frame, true, steps, eps0, arc_tol, max_arclen, branch);
}

std::string curves_to_csv(const RealDynamics& rd, const std::vector<ManifoldCurve>& curves) {
  std::string out;
  char buf[256];
  if (!curves.empty()) {
    const SaddleFrame& fr = curves.front().frame;
    std::snprintf(buf, sizeof(buf),
                  "# c=%.17g base=(%.17g,%.17g) period=%d stable_mult=%.17g unstable_mult=%.17g\n",
                  rd.c, fr.base.x, fr.base.y, fr.period, fr.stable_mult, fr.unstable_mult);
    out += buf;
  }
  out += "branch,side,index,x,y\n";
  for (const auto& curve : curves) {
    const char* side = curve.stable_side ? "stable" : "unstable";
    for (std::size_t i = 0; i < curve.vertices.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%+d,%s,%zu,%.17g,%.17g\n", curve.branch, side, i,
                    curve.vertices[i].x, curve.vertices[i].y);
      out += buf;
    }
  }
  return out;
}

double polyline_distance(const std::vector<RPoint>& poly, const RPoint& z) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    const RPoint& a = poly[i];
    const RPoint& b = poly[i + 1];
    const double ux = b.x - a.x, uy = b.y - a.y;
    const double len2 = ux * ux + uy * uy;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((z.x - a.x) * ux + (z.y - a.y) * uy) / len2, 0.0, 1.0);
    const double px = a.x + t * ux - z.x, py = a.y + t * uy - z.y;
    best = std::min(best, std::hypot(px, py));
  }
  if (poly.size() == 1) best = std::hypot(poly[0].x - z.x, poly[0].y - z.y);
  return best;
}

KplusDecompReport verify_kplus_decomposition(const RealDynamics& rd, int grid_n, double x0,
                                             double x1, double y0, double y1, int budget,
                                             double tol, int segments, std::uint64_t seed,
                                             int workers) {
  KplusDecompReport rep;
  rep.grid_n = grid_n;
  rep.segments_requested = segments;

  std::vector<ForwardLimit> cls(static_cast<std::size_t>(grid_n) * grid_n);
  std::vector<RPoint> pts(cls.size());
  parallel_for(static_cast<long long>(cls.size()), workers, [&](long long b, long long e) {
    for (long long i = b; i < e; ++i) {
      const int r = static_cast<int>(i) / grid_n;
      const int col = static_cast<int>(i) % grid_n;
      const RPoint z{x0 + (x1 - x0) * (col + 0.5) / grid_n, y0 + (y1 - y0) * (r + 0.5) / grid_n};
      pts[static_cast<std::size_t>(i)] = z;
      cls[static_cast<std::size_t>(i)] = classify_limit_real(rd, z, budget, tol).cls;
    }
  });

  std::vector<std::size_t> alpha_idx, escape_idx;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    switch (cls[i]) {
      case ForwardLimit::Alpha: ++rep.alpha_points; alpha_idx.push_back(i); break;
      case ForwardLimit::Theta: ++rep.theta_points; break;
      case ForwardLimit::Cycle3: ++rep.cycle_points; break;
      case ForwardLimit::Escape: ++rep.escape_points; escape_idx.push_back(i); break;
      case ForwardLimit::Undecided: ++rep.undecided_points; break;
    }
  }

  // interior probes at distance 1e-4 (reported, not gated: Alpha points
  // closer than that to the boundary legitimately have escaping probes)
  const double h = 1e-4;
  std::vector<long long> ok_flags(alpha_idx.size(), 0);
  parallel_for(static_cast<long long>(alpha_idx.size()), workers, [&](long long b, long long e) {
    for (long long i = b; i < e; ++i) {
      const RPoint z = pts[alpha_idx[static_cast<std::size_t>(i)]];
      const RPoint probes[4] = {{z.x + h, z.y}, {z.x - h, z.y}, {z.x, z.y + h}, {z.x, z.y - h}};
      bool ok = true;
      for (const auto& p : probes)
        ok = ok &&
             classify_forward(rd.ctx, p, rd.radii.r0, budget).cls == EscapeClass::Bounded;
      ok_flags[static_cast<std::size_t>(i)] = ok ? 1 : 0;
    }
  });
  rep.interior_total = static_cast<long long>(alpha_idx.size());
  for (long long f : ok_flags) rep.interior_ok += f;

  if (alpha_idx.empty() || escape_idx.empty()) return rep;

  // boundary localization along random Alpha-Escape segments
  SplitMix64 rng(seed);
  auto escapes = [&](const RPoint& z) {
    return classify_forward(rd.ctx, z, rd.radii.r0, budget).cls == EscapeClass::Escaped;
  };
  // first: the orbit comes within tol of theta or the cycle at all;
  // second: it does so on three consecutive steps (theta) or three
  // consecutive period-multiples of the same cycle point
  auto orbit_approaches = [&](RPoint z) -> std::pair<bool, bool> {
    bool approached = false;
    int theta_run = 0;
    int cycle_run[3][3] = {};
    for (int n = 0; n <= budget; ++n) {
      if (!is_finite(z)) break;
      const double dt = dist(z, rd.theta);
      theta_run = dt <= tol ? theta_run + 1 : 0;
      if (dt <= tol) approached = true;
      if (theta_run >= 3) return {true, true};
      const int r = n % 3;
      for (int j = 0; j < 3; ++j) {
        const bool hit = dist(z, rd.cycle[j]) <= tol;
        if (hit) approached = true;
        cycle_run[j][r] = hit ? cycle_run[j][r] + 1 : 0;
        if (cycle_run[j][r] >= 3) return {true, true};
      }
      if (min_mod(z) > rd.radii.r0) break;
      z = apply_forward(rd.ctx, z);
    }
    return {approached, false};
  };

  int attempts = 0;
  while (rep.segments_used < segments && attempts < 20 * segments) {
    ++attempts;
    const RPoint a = pts[alpha_idx[rng.next() % alpha_idx.size()]];
    const RPoint b = pts[escape_idx[rng.next() % escape_idx.size()]];
    // reject segments with more than one escape transition
    int transitions = 0;
    bool prev = escapes(a);
    for (int k = 1; k <= 16; ++k) {
      const double t = k / 16.0;
      const bool cur = escapes({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
      if (cur != prev) ++transitions;
      prev = cur;
    }
    if (transitions != 1) {
      ++rep.segments_discarded;
      continue;
    }
    ++rep.segments_used;
    RPoint lo = a, hi = b;
    while (dist(lo, hi) > 1e-9) {
      const RPoint mid{0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)};
      if (escapes(mid))
        hi = mid;
      else
        lo = mid;
    }
    const RPoint mid{0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)};
    const auto [approached, confirmed] = orbit_approaches(mid);
    if (approached) ++rep.boundary_approach;
    if (confirmed)
      ++rep.boundary_success;
    else if (!approached)
      ++rep.boundary_undecided;
  }
  return rep;
}

KminusDecompReport verify_kminus_decomposition(const RealDynamics& rd, int grid_n, int budget,
                                               double tol, std::uint64_t seed, int workers) {
  KminusDecompReport rep;
  rep.grid_n = grid_n;
  rep.budget = budget;
  rep.grid_points = static_cast<long long>(grid_n) * grid_n;

  std::vector<ManifoldCurve> curves;
  for (BaseSelector b : {BaseSelector::Theta, BaseSelector::P1, BaseSelector::P2, BaseSelector::P3}) {
    const SaddleFrame fr = saddle_frame(rd, b);
    for (int branch : {+1, -1})
      curves.push_back(trace_unstable(rd, fr, 150, default_eps0(fr), 1e-3, 200.0, branch));
  }

  const double R = rd.radii.r2;
  std::vector<char> bounded(static_cast<std::size_t>(rep.grid_points), 0);
  std::vector<RPoint> pts(bounded.size());
  parallel_for(rep.grid_points, workers, [&](long long b, long long e) {
    for (long long i = b; i < e; ++i) {
      const int r = static_cast<int>(i) / grid_n;
      const int col = static_cast<int>(i) % grid_n;
      const RPoint z{-R + 2.0 * R * (col + 0.5) / grid_n, -R + 2.0 * R * (r + 0.5) / grid_n};
      pts[static_cast<std::size_t>(i)] = z;
      bounded[static_cast<std::size_t>(i)] =
          classify_backward(rd.ctx, z, rd.radii, budget).cls == EscapeClass::Bounded ? 1 : 0;
    }
  });

  for (std::size_t i = 0; i < bounded.size(); ++i) {
    if (!bounded[i]) continue;
    ++rep.backward_bounded;
    const BackwardLimitResult r = classify_backward_limit_real(rd, pts[i], budget, tol);
    if (r.cls == BackwardLimit::Theta || r.cls == BackwardLimit::Cycle3) {
      ++rep.theta_or_cycle;
      continue;
    }
    double d = std::numeric_limits<double>::infinity();
    for (const auto& curve : curves) d = std::min(d, polyline_distance(curve.vertices, pts[i]));
    if (d <= tol) {
      ++rep.near_curve;
      rep.worst_curve_distance = std::max(rep.worst_curve_distance, d);
    } else {
      ++rep.unexplained;
    }
  }

  // non-vacuous half: points seeded on the manifolds themselves
  SplitMix64 rng(seed);
  std::vector<RPoint> seeds = {rd.theta, rd.cycle[0], rd.cycle[1], rd.cycle[2]};
  for (const auto& curve : curves) {
    if (curve.vertices.size() < 4) continue;
    for (int k = 0; k < 8; ++k)
      seeds.push_back(curve.vertices[rng.next() % (curve.vertices.size() / 2)]);
  }
  for (const auto& z : seeds) {
    ++rep.seeded_total;
    const BackwardLimitResult r = classify_backward_limit_real(rd, z, budget, tol);
    if (r.cls == BackwardLimit::Theta || r.cls == BackwardLimit::Cycle3) {
      ++rep.seeded_ok;
    } else {
      double d = std::numeric_limits<double>::infinity();
      for (const auto& curve : curves) d = std::min(d, polyline_distance(curve.vertices, z));
      if (d <= tol) ++rep.seeded_ok;
    }
  }
  return rep;
}

}  // namespace fibmap
