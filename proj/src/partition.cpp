#include "fibmap/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <stdexcept>

#include "fibmap/dynamics.hpp"

namespace fibmap {

const char* region_name(RegionLabel label) {
  static const char* names[kRegionCount] = {"L",  "M",  "N",  "P", "Q0", "Q1", "Q2", "Q3", "A",
                                            "B",  "C",  "D",  "E", "F",  "G",  "H",  "R1", "R2"};
  return names[static_cast<int>(label)];
}

RegionTable build_regions(double c, bool relax_negative) {
  const bool standard = c > 0.0 && c < 0.25;
  const bool relaxed = relax_negative && c > -1.0 && c < 0.0;
  if (!standard && !relaxed)
    throw std::invalid_argument("build_regions: c outside (0, 1/4) (or (-1, 0) when relaxed)");
  RegionTable t;
  t.c = c;
  const double root = std::sqrt(1.0 - 4.0 * c);
  t.a1 = (1.0 - root) / 2.0;
  t.a2 = (1.0 + root) / 2.0;
  const double a2 = t.a2;
  const double u = 1.0 + c;
  auto set = [&](RegionLabel lab, double xlo, double xhi, double ylo, double yhi) {
    t.regions[static_cast<int>(lab)] = {lab, Rect{{xlo, xhi}, {ylo, yhi}}};
  };
  set(RegionLabel::L, a2, kInf, a2, kInf);
  set(RegionLabel::M, -kInf, -1.0, u, kInf);
  set(RegionLabel::N, -kInf, -1.0, -kInf, -1.0);
  set(RegionLabel::P, u, kInf, -kInf, -1.0);
  set(RegionLabel::Q0, 0.0, u, 0.0, a2);
  set(RegionLabel::Q1, -1.0, 0.0, 0.0, u);
  set(RegionLabel::Q2, -1.0, 0.0, -1.0, 0.0);
  set(RegionLabel::Q3, 0.0, u, -1.0, 0.0);
  set(RegionLabel::A, 0.0, a2, a2, kInf);
  set(RegionLabel::B, -1.0, 0.0, u, kInf);
  set(RegionLabel::C, -kInf, -1.0, 0.0, u);
  set(RegionLabel::D, -kInf, -1.0, -1.0, 0.0);
  set(RegionLabel::E, -1.0, 0.0, -kInf, -1.0);
  set(RegionLabel::F, 0.0, u, -kInf, -1.0);
  set(RegionLabel::G, u, kInf, -1.0, 0.0);
  set(RegionLabel::H, u, kInf, 0.0, a2);
  set(RegionLabel::R1rect, -1.0, 0.0, -1.0, u);
  set(RegionLabel::R2rect, 0.0, u, -1.0, a2);
  return t;
}

std::vector<RegionLabel> locate(const RegionTable& regions, const RPoint& z) {
  std::vector<RegionLabel> out;
  for (const auto& lr : regions.regions)
    if (lr.rect.contains(z)) out.push_back(lr.label);
  return out;
}

Rect rect_image_bbox(double c, const Rect& r) {
  return {shift(mul_range(r.x, r.y), c), r.x};
}

Rect rect_preimage_bbox(double c, const Rect& r) {
  return {r.y, div_range(shift(r.x, -c), r.y)};
}

namespace {

constexpr double kPieceFloor = 1e-9;

double finite_width(const XInterval& a) { return a.finite() ? a.width() : -1.0; }

bool bbox_of_piece(double c, const Rect& piece, bool backward, Rect* bbox) {
  if (backward) {
    if (piece.y.degenerate() && piece.y.lo == 0.0) return false;  // branch preimage empty
    *bbox = rect_preimage_bbox(c, piece);
  } else {
    *bbox = rect_image_bbox(c, piece);
  }
  return true;
}

RPoint piece_rep(const Rect& piece, bool backward) {
  RPoint rep = rect_rep(piece);
  if (backward && rep.y == 0.0) {
    // nudge off the singular line, staying inside the piece
    rep.y = piece.y.hi > 0.0 ? std::min(piece.y.hi, 1.0) / 2.0
                             : std::max(piece.y.lo, -1.0) / 2.0;
  }
  return rep;
}

RPoint map_rep(double c, const RPoint& rep, bool backward) {
  if (backward) return {rep.y, (rep.x - c) / rep.y};
  return {rep.x * rep.y + c, rep.x};
}

// Split preference: the longest finite axis; infinite axes are split (at
// offset B from their finite end) only once no finite axis is left to
// refine, since the finite structure decides the sign analysis.
void split_piece(const Rect& piece, double B, Rect* lo_child, Rect* hi_child) {
  const double wx = finite_width(piece.x);
  const double wy = finite_width(piece.y);
  bool split_x;
  if (wx > kPieceFloor || wy > kPieceFloor)
    split_x = wx >= wy;
  else
    split_x = !piece.x.finite();
  const XInterval& axis = split_x ? piece.x : piece.y;
  double cut;
  if (axis.finite()) {
    cut = 0.5 * (axis.lo + axis.hi);
  } else if (std::isfinite(axis.lo)) {
    cut = axis.lo + B;
  } else if (std::isfinite(axis.hi)) {
    cut = axis.hi - B;
  } else {
    cut = 0.0;
  }
  *lo_child = piece;
  *hi_child = piece;
  if (split_x) {
    lo_child->x.hi = cut;
    hi_child->x.lo = cut;
  } else {
    lo_child->y.hi = cut;
    hi_child->y.lo = cut;
  }
}

bool line_x0_covered(const std::vector<Rect>& targets, double* uncovered_y) {
  // does the union of targets contain {0} x R?
  std::vector<XInterval> spans;
  for (const Rect& t : targets)
    if (t.x.contains(0.0)) spans.push_back(t.y);
  std::sort(spans.begin(), spans.end(),
            [](const XInterval& a, const XInterval& b) { return a.lo < b.lo; });
  double reach = -kInf;
  bool started = false;
  for (const auto& s : spans) {
    if (!started) {
      if (s.lo > -kInf) {
        *uncovered_y = std::isfinite(s.lo) ? s.lo - 1.0 : 0.0;
        return false;
      }
      started = true;
      reach = s.hi;
    } else {
      if (s.lo > reach) {
        *uncovered_y = 0.5 * (reach + s.lo);
        return false;
      }
      reach = std::max(reach, s.hi);
    }
  }
  if (!started || reach < kInf) {
    *uncovered_y = started ? (std::isfinite(reach) ? reach + 1.0 : 0.0) : 0.0;
    return false;
  }
  return true;
}

InclusionCertificate certify_core(double c, const std::string& name, const Rect& source,
                                  const std::vector<std::string>& target_names,
                                  const std::vector<Rect>& targets_in, int max_depth, double B,
                                  bool backward) {
  InclusionCertificate cert;
  cert.name = name;
  cert.c = c;
  cert.backward = backward;
  cert.max_depth = max_depth;
  cert.target_names = target_names;
  cert.status = CertStatus::Certified;

  // several paper inclusions are exactly tight (the sup of f^-1(A)'s second
  // factor IS a2, attained at theta); certify modulo outward edge rounding
  std::vector<Rect> targets;
  targets.reserve(targets_in.size());
  for (const Rect& t : targets_in) targets.push_back(pad_rect(t, kEdgeSlackUlps));

  if (backward && source.contains({c, 0.0})) {
    // The full preimage then contains the line {x = 0}.
    double bad_y = 0.0;
    if (!line_x0_covered(targets, &bad_y)) {
      cert.status = CertStatus::Counterexample;
      cert.counterexample = {c, 0.0};
      cert.counterexample_image = {0.0, bad_y};
      return cert;
    }
  }

  std::deque<std::pair<Rect, int>> work;
  if (backward && source.y.lo < 0.0 && 0.0 < source.y.hi) {
    Rect below = source, above = source;
    below.y.hi = 0.0;
    above.y.lo = 0.0;
    work.emplace_back(below, 1);
    work.emplace_back(above, 1);
  } else {
    work.emplace_back(source, 0);
  }

  while (!work.empty()) {
    auto [piece, depth] = work.front();
    work.pop_front();
    Rect bbox;
    if (!bbox_of_piece(c, piece, backward, &bbox)) continue;

    int single = -1;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (bbox.subset_of(targets[i])) {
        single = static_cast<int>(i);
        break;
      }
    }
    if (single >= 0) {
      cert.leaves.push_back({piece, bbox, single});
      continue;
    }
    if (covered_by(bbox, targets)) {
      cert.leaves.push_back({piece, bbox, -1});
      continue;
    }

    const RPoint rep = piece_rep(piece, backward);
    const RPoint image = map_rep(c, rep, backward);
    const bool image_covered =
        std::any_of(targets.begin(), targets.end(), [&](const Rect& t) { return t.contains(image); });
    if (!image_covered) {
      // rep lies in the source set; its (pre)image escapes every target
      cert.status = CertStatus::Counterexample;
      cert.counterexample = rep;
      cert.counterexample_image = image;
      return cert;
    }
    const double diam = std::max(finite_width(piece.x), finite_width(piece.y));
    const bool all_finite = piece.x.finite() && piece.y.finite();
    if (all_finite && diam < kPieceFloor) {
      cert.status = CertStatus::Counterexample;
      cert.counterexample = rep;
      cert.counterexample_image = uncovered_witness(bbox, targets);
      return cert;
    }
    if (depth >= max_depth) {
      cert.status = CertStatus::DepthExceeded;
      cert.counterexample = rep;
      cert.counterexample_image = uncovered_witness(bbox, targets);
      return cert;
    }
    Rect lo_child, hi_child;
    split_piece(piece, B, &lo_child, &hi_child);
    work.emplace_back(lo_child, depth + 1);
    work.emplace_back(hi_child, depth + 1);
  }

  std::sort(cert.leaves.begin(), cert.leaves.end(), [](const CertLeaf& a, const CertLeaf& b) {
    if (a.source.x.lo != b.source.x.lo) return a.source.x.lo < b.source.x.lo;
    if (a.source.y.lo != b.source.y.lo) return a.source.y.lo < b.source.y.lo;
    if (a.source.x.hi != b.source.x.hi) return a.source.x.hi < b.source.x.hi;
    return a.source.y.hi < b.source.y.hi;
  });
  return cert;
}

std::string fmt_num(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_rect(const Rect& r) {
  return "[" + fmt_num(r.x.lo) + "," + fmt_num(r.x.hi) + "]x[" + fmt_num(r.y.lo) + "," +
         fmt_num(r.y.hi) + "]";
}

const char* status_name(CertStatus s) {
  switch (s) {
    case CertStatus::Certified: return "Certified";
    case CertStatus::Counterexample: return "Counterexample";
    case CertStatus::DepthExceeded: return "DepthExceeded";
    case CertStatus::TailUnverified: return "TailUnverified";
  }
  return "?";
}

}  // namespace

InclusionCertificate certify_inclusion(double c, const std::string& name, const Rect& source,
                                       const std::vector<std::string>& target_names,
                                       const std::vector<Rect>& targets, int max_depth, double B) {
  return certify_core(c, name, source, target_names, targets, max_depth, B, false);
}

InclusionCertificate certify_preimage_inclusion(double c, const std::string& name,
                                                const Rect& source,
                                                const std::vector<std::string>& target_names,
                                                const std::vector<Rect>& targets, int max_depth,
                                                double B) {
  return certify_core(c, name, source, target_names, targets, max_depth, B, true);
}

std::string serialize_certificate(const InclusionCertificate& cert) {
  std::string out;
  out += "# inclusion: " + cert.name + "\n";
  out += "# c=" + fmt_num(cert.c);
  out += cert.backward ? " map=f^-1" : " map=f";
  out += " max_depth=" + std::to_string(cert.max_depth);
  out += " status=";
  out += status_name(cert.status);
  out += " targets=";
  for (std::size_t i = 0; i < cert.target_names.size(); ++i) {
    if (i) out += ",";
    out += cert.target_names[i];
  }
  out += "\n";
  if (cert.status != CertStatus::Certified) {
    out += "# counterexample " + fmt_num(cert.counterexample.x) + "," +
           fmt_num(cert.counterexample.y) + " -> " + fmt_num(cert.counterexample_image.x) + "," +
           fmt_num(cert.counterexample_image.y) + "\n";
  }
  for (const auto& leaf : cert.leaves) {
    out += fmt_rect(leaf.source) + " -> " + fmt_rect(leaf.image_bbox) + " -> ";
    out += leaf.target >= 0 ? cert.target_names[static_cast<std::size_t>(leaf.target)] : "union";
    out += "\n";
  }
  return out;
}

namespace {

struct NamedInclusion {
  std::string name;
  bool backward;
  Rect source;
  std::vector<std::string> target_names;
  std::vector<Rect> targets;
};

std::vector<NamedInclusion> paper_inclusions(const RegionTable& t) {
  using RL = RegionLabel;
  auto rects = [&](std::initializer_list<RL> labels) {
    std::vector<Rect> out;
    for (RL l : labels) out.push_back(t[l]);
    return out;
  };
  auto names = [&](std::initializer_list<RL> labels) {
    std::vector<std::string> out;
    for (RL l : labels) out.emplace_back(region_name(l));
    return out;
  };
  auto fwd = [&](RL src, std::initializer_list<RL> tgt) {
    std::string n = std::string("f(") + region_name(src) + ") in ";
    bool first = true;
    for (RL l : tgt) {
      if (!first) n += ",";
      n += region_name(l);
      first = false;
    }
    return NamedInclusion{n, false, t[src], names(tgt), rects(tgt)};
  };
  auto bwd = [&](RL src, std::initializer_list<RL> tgt) {
    std::string n = std::string("f^-1(") + region_name(src) + ") in ";
    bool first = true;
    for (RL l : tgt) {
      if (!first) n += ",";
      n += region_name(l);
      first = false;
    }
    return NamedInclusion{n, true, t[src], names(tgt), rects(tgt)};
  };

  std::vector<NamedInclusion> list;
  // forward transitions
  list.push_back(fwd(RL::L, {RL::L}));
  list.push_back(fwd(RL::M, {RL::N}));
  list.push_back(fwd(RL::N, {RL::P}));
  list.push_back(fwd(RL::P, {RL::M}));
  list.push_back(fwd(RL::Q0, {RL::Q0, RL::A, RL::L}));
  list.push_back(fwd(RL::Q1, {RL::Q2, RL::Q3}));
  list.push_back(fwd(RL::Q2, {RL::Q3}));
  list.push_back(fwd(RL::Q3, {RL::Q0, RL::Q1, RL::A}));
  list.push_back(fwd(RL::A, {RL::Q0, RL::H}));
  list.push_back(fwd(RL::B, {RL::D, RL::Q2, RL::Q3}));
  list.push_back(fwd(RL::C, {RL::N, RL::E, RL::F}));
  list.push_back(fwd(RL::D, {RL::P, RL::F}));
  list.push_back(fwd(RL::E, {RL::Q3, RL::G}));
  list.push_back(fwd(RL::F, {RL::Q0, RL::Q1, RL::C}));
  list.push_back(fwd(RL::G, {RL::A, RL::B, RL::M}));
  list.push_back(fwd(RL::H, {RL::A, RL::L}));
  // backward transitions
  list.push_back(bwd(RL::Q0, {RL::Q0, RL::Q3, RL::A, RL::F}));
  list.push_back(bwd(RL::Q1, {RL::Q3, RL::F}));
  list.push_back(bwd(RL::Q2, {RL::Q1, RL::B}));
  list.push_back(bwd(RL::Q3, {RL::Q1, RL::Q2, RL::B, RL::E}));
  list.push_back(bwd(RL::A, {RL::H, RL::G, RL::Q0, RL::Q3}));
  list.push_back(bwd(RL::B, {RL::G}));
  list.push_back(bwd(RL::C, {RL::F}));
  list.push_back(bwd(RL::D, {RL::B}));
  list.push_back(bwd(RL::E, {RL::C}));
  list.push_back(bwd(RL::F, {RL::C, RL::D}));
  list.push_back(bwd(RL::G, {RL::E}));
  list.push_back(bwd(RL::H, {RL::A}));
  list.push_back(bwd(RL::L, {RL::Q0, RL::H, RL::L}));
  list.push_back(bwd(RL::M, {RL::G, RL::P}));
  list.push_back(bwd(RL::N, {RL::C, RL::M}));
  list.push_back(bwd(RL::P, {RL::D, RL::N}));
  // auxiliary strips of the non-membership lemma
  const Rect a_strip{{0.0, t.a1}, {t.a1, kInf}};
  const Rect h_strip{{t.a1, kInf}, {0.0, t.a1}};
  list.push_back(NamedInclusion{"f^-1(A'') in H'',G,Q0,Q3", true, a_strip,
                                {"H''", "G", "Q0", "Q3"},
                                {h_strip, t[RL::G], t[RL::Q0], t[RL::Q3]}});
  list.push_back(NamedInclusion{"f^-1(H'') in A''", true, h_strip, {"A''"}, {a_strip}});
  return list;
}

}  // namespace

TransitionReport verify_transition_tables(double c, int max_depth) {
  const RegionTable t = build_regions(c);
  TransitionReport rep;
  rep.c = c;
  rep.all_pass = true;
  for (const auto& inc : paper_inclusions(t)) {
    const InclusionCertificate cert =
        inc.backward
            ? certify_preimage_inclusion(c, inc.name, inc.source, inc.target_names, inc.targets,
                                         max_depth)
            : certify_inclusion(c, inc.name, inc.source, inc.target_names, inc.targets, max_depth);
    TransitionReport::Row row;
    row.name = inc.name;
    row.status = cert.status;
    row.pass = cert.status == CertStatus::Certified;
    row.leaves = cert.leaves.size();
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(std::move(row));
  }
  rep.ca_value = (1.0 + c) * t.a2;
  rep.ca_pass = rep.ca_value <= 1.0;
  rep.all_pass = rep.all_pass && rep.ca_pass;
  return rep;
}

RealDynamics make_real_dynamics(double c, bool relax_negative) {
  RealDynamics rd;
  rd.ctx = ParamContext::make(Complex(c, 0.0));
  rd.c = c;
  rd.regions = build_regions(c, relax_negative);
  rd.radii = escape_radii(Complex(c, 0.0));
  rd.alpha = {rd.regions.a1, rd.regions.a1};
  rd.theta = {rd.regions.a2, rd.regions.a2};
  rd.cycle = {RPoint{-1.0, -1.0}, RPoint{1.0 + c, -1.0}, RPoint{-1.0, 1.0 + c}};
  return rd;
}

Itinerary itinerary(const RealDynamics& rd, const RPoint& z, Direction dir, int budget) {
  Itinerary it;
  RPoint cur = z;
  for (int n = 0;; ++n) {
    if (!is_finite(cur)) {
      it.status = OrbitStatus::Escaped;
      return it;
    }
    it.steps.push_back({cur, locate(rd.regions, cur)});
    const RegionVerdict v = region_membership(dir == Direction::Forward ? rd.radii.r0 : rd.radii.r1, cur);
    if (dir == Direction::Forward ? v.in_vr : v.in_gr) {
      it.status = OrbitStatus::Escaped;
      return it;
    }
    if (n == budget) {
      it.status = OrbitStatus::Bounded;
      return it;
    }
    if (dir == Direction::Forward) {
      cur = apply_forward(rd.ctx, cur);
    } else {
      auto inv = apply_inverse(rd.ctx, cur);
      if (!inv) {
        it.status = OrbitStatus::InverseUndefined;
        return it;
      }
      cur = *inv;
    }
  }
}

namespace {

bool in_any(const RegionTable& t, std::initializer_list<RegionLabel> labels, const RPoint& z) {
  for (RegionLabel l : labels)
    if (t[l].contains(z)) return true;
  return false;
}

double min_dist_periodic(const RealDynamics& rd, const RPoint& z) {
  double d = std::min(dist(z, rd.alpha), dist(z, rd.theta));
  for (const auto& p : rd.cycle) d = std::min(d, dist(z, p));
  return d;
}

// 10-step lookahead: the orbit must stay within 2 tol of the advancing target.
bool confirm_forward(const RealDynamics& rd, RPoint z, const RPoint* targets, int period,
                     int phase, double tol) {
  for (int k = 1; k <= 10; ++k) {
    z = apply_forward(rd.ctx, z);
    const RPoint& want = targets[(phase + k) % period];
    if (!is_finite(z) || dist(z, want) > 2.0 * tol) return false;
  }
  return true;
}

bool confirm_backward(const RealDynamics& rd, RPoint z, const RPoint* targets, int period,
                      int phase, double tol) {
  for (int k = 1; k <= 10; ++k) {
    auto inv = apply_inverse(rd.ctx, z);
    if (!inv || !is_finite(*inv)) return false;
    z = *inv;
    const RPoint& want = targets[((phase - k) % period + period) % period];
    if (dist(z, want) > 2.0 * tol) return false;
  }
  return true;
}

}  // namespace

ForwardLimitResult classify_limit_real(const RealDynamics& rd, RPoint z, int budget, double tol) {
  using RL = RegionLabel;
  for (int n = 0;; ++n) {
    if (!is_finite(z)) return {ForwardLimit::Escape, -1, n};
    if (dist(z, rd.alpha) <= tol &&
        confirm_forward(rd, z, &rd.alpha, 1, 0, tol))
      return {ForwardLimit::Alpha, -1, n};
    if (dist(z, rd.theta) <= tol &&
        confirm_forward(rd, z, &rd.theta, 1, 0, tol))
      return {ForwardLimit::Theta, -1, n};
    int j = 0;
    double dj = dist(z, rd.cycle[0]);
    for (int k = 1; k < 3; ++k) {
      const double d = dist(z, rd.cycle[k]);
      if (d < dj) {
        dj = d;
        j = k;
      }
    }
    if (dj <= tol && confirm_forward(rd, z, rd.cycle.data(), 3, j, tol))
      return {ForwardLimit::Cycle3, j, n};
    if (min_mod(z) > rd.radii.r0) return {ForwardLimit::Escape, -1, n};
    if (in_any(rd.regions, {RL::L, RL::M, RL::N, RL::P}, z) &&
        min_dist_periodic(rd, z) > kEscapeBallRadius)
      return {ForwardLimit::Escape, -1, n};
    if (n == budget) return {ForwardLimit::Undecided, -1, n};
    z = apply_forward(rd.ctx, z);
  }
}

BackwardLimitResult classify_backward_limit_real(const RealDynamics& rd, RPoint z, int budget,
                                                 double tol) {
  using RL = RegionLabel;
  for (int n = 0;; ++n) {
    if (!is_finite(z)) return {BackwardLimit::BackwardEscape, -1, n};
    if (dist(z, rd.theta) <= tol &&
        confirm_backward(rd, z, &rd.theta, 1, 0, tol))
      return {BackwardLimit::Theta, -1, n};
    int j = 0;
    double dj = dist(z, rd.cycle[0]);
    for (int k = 1; k < 3; ++k) {
      const double d = dist(z, rd.cycle[k]);
      if (d < dj) {
        dj = d;
        j = k;
      }
    }
    if (dj <= tol && confirm_backward(rd, z, rd.cycle.data(), 3, j, tol))
      return {BackwardLimit::Cycle3, j, n};
    if (in_any(rd.regions,
               {RL::A, RL::B, RL::C, RL::D, RL::E, RL::F, RL::G, RL::H}, z) &&
        min_dist_periodic(rd, z) > kEscapeBallRadius)
      return {BackwardLimit::BackwardEscape, -1, n};
    if (z.y == 0.0) return {BackwardLimit::InverseUndefined, -1, n};
    if (n == budget) return {BackwardLimit::Undecided, -1, n};
    auto inv = apply_inverse(rd.ctx, z);
    z = *inv;
  }
}

}  // namespace fibmap
