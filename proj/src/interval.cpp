#include "fibmap/interval.hpp"

#include <vector>

namespace fibmap {

namespace {

// Overlap that matters for covering: positive measure, or exact touch when
// the box is degenerate on that axis (then the touching rect does cover it).
bool material_overlap(const XInterval& box, const XInterval& r) {
  const double lo = std::max(box.lo, r.lo);
  const double hi = std::min(box.hi, r.hi);
  if (lo > hi) return false;
  if (lo < hi) return true;
  return box.degenerate();
}

bool material_overlap(const Rect& box, const Rect& r) {
  return material_overlap(box.x, r.x) && material_overlap(box.y, r.y);
}

bool covered_impl(const Rect& box, std::span<const Rect> rects, RPoint* witness) {
  for (const Rect& r : rects)
    if (box.subset_of(r)) return true;
  for (const Rect& r : rects) {
    if (!material_overlap(box, r)) continue;
    // split at an edge of r strictly inside box
    const double xe[2] = {r.x.lo, r.x.hi};
    for (double e : xe) {
      if (box.x.lo < e && e < box.x.hi) {
        Rect left = box, right = box;
        left.x.hi = e;
        right.x.lo = e;
        return covered_impl(left, rects, witness) && covered_impl(right, rects, witness);
      }
    }
    const double ye[2] = {r.y.lo, r.y.hi};
    for (double e : ye) {
      if (box.y.lo < e && e < box.y.hi) {
        Rect low = box, high = box;
        low.y.hi = e;
        high.y.lo = e;
        return covered_impl(low, rects, witness) && covered_impl(high, rects, witness);
      }
    }
    // r overlaps box materially with no edge strictly inside: on each axis r
    // spans box entirely, i.e. box is a subset -- already handled above.
  }
  if (witness) *witness = rect_rep(box);
  return false;
}

}  // namespace

bool covered_by(const Rect& box, std::span<const Rect> rects) {
  return covered_impl(box, rects, nullptr);
}

RPoint uncovered_witness(const Rect& box, std::span<const Rect> rects) {
  RPoint w = rect_rep(box);
  covered_impl(box, rects, &w);
  return w;
}

}  // namespace fibmap
