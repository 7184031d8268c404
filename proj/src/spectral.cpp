#include "fibmap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fibmap/dynamics.hpp"

namespace fibmap {

namespace {

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

PointKind kind_from_moduli(double m1, double m2, bool degenerate_root) {
  if (degenerate_root) return PointKind::Degenerate;
  const bool lo1 = m1 < 1.0 - kKindTol, hi1 = m1 > 1.0 + kKindTol;
  const bool lo2 = m2 < 1.0 - kKindTol, hi2 = m2 > 1.0 + kKindTol;
  if (lo1 && lo2) return PointKind::Attracting;
  if (hi1 && hi2) return PointKind::Repelling;
  if ((lo1 && hi2) || (hi1 && lo2)) return PointKind::Saddle;
  return PointKind::Indifferent;
}

FixedPointInfo make_info(Complex a, int which, bool degenerate_root) {
  FixedPointInfo info;
  info.a = a;
  info.which = which;
  info.location = {a, a};
  // char. polynomial of [[a, a], [1, 0]] is x^2 - a x - a
  const Complex disc = std::sqrt(a * a + 4.0 * a);
  info.eigenvalues = {(a - disc) / 2.0, (a + disc) / 2.0};
  info.kind = kind_from_moduli(std::abs(info.eigenvalues[0]), std::abs(info.eigenvalues[1]),
                               degenerate_root);
  return info;
}

}  // namespace

std::array<Complex, 2> eigenvalues_2x2(const Mat2& m) {
  const Complex tr = m[0][0] + m[1][1];
  const Complex det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  return {(tr - disc) / 2.0, (tr + disc) / 2.0};
}

Mat2 forward_jacobian(const CPoint& z) {
  return Mat2{{{z.y, z.x}, {Complex(1.0), Complex(0.0)}}};
}

FixedPoints fixed_points(Complex c, bool real_mode) {
  FixedPoints out;
  const Complex disc = 1.0 - 4.0 * c;
  const bool degenerate = (disc == Complex(0.0));
  if (degenerate) out.status = FixedPointStatus::Degenerate;
  if (real_mode && c.imag() == 0.0 && c.real() > 0.25) out.status = FixedPointStatus::NonRealPair;
  const Complex root = std::sqrt(disc);
  out.a1 = make_info((1.0 - root) / 2.0, 1, degenerate);
  out.a2 = make_info((1.0 + root) / 2.0, 2, degenerate);
  return out;
}

ParameterClass classify_parameter(double c) {
  const FixedPoints fps = fixed_points(Complex(c, 0.0), true);
  ParameterClass out;
  out.status = fps.status;
  out.a1_kind = fps.a1.kind;
  out.a2_kind = fps.a2.kind;
  out.a1_eigenvalues = fps.a1.eigenvalues;
  out.a2_eigenvalues = fps.a2.eigenvalues;
  return out;
}

InverseFixedInfo inverse_fixed_classification(double c) {
  if (c >= 0.25) throw std::invalid_argument("inverse_fixed_classification: requires c < 1/4");
  const double a1 = (1.0 - std::sqrt(1.0 - 4.0 * c)) / 2.0;
  if (a1 == 0.0) throw std::domain_error("inverse_fixed_classification: a1 = 0 at c = 0");
  InverseFixedInfo info;
  info.a1 = a1;
  const Complex disc = std::sqrt(Complex(1.0 + 4.0 / a1, 0.0));
  info.eigenvalues = {(-1.0 - disc) / 2.0, (-1.0 + disc) / 2.0};
  info.product_modulus = 1.0 / std::abs(a1);
  info.attracting = std::abs(info.eigenvalues[0]) < 1.0 - kKindTol &&
                    std::abs(info.eigenvalues[1]) < 1.0 - kKindTol;
  return info;
}

CycleInfo three_cycle(Complex c) {
  CycleInfo info;
  const Complex m1(-1.0, 0.0);
  info.points = {CPoint{m1, m1}, CPoint{1.0 + c, m1}, CPoint{m1, 1.0 + c}};
  info.multiplier = mat_mul(forward_jacobian(info.points[2]),
                            mat_mul(forward_jacobian(info.points[1]),
                                    forward_jacobian(info.points[0])));
  info.multiplier_eigenvalues = eigenvalues_2x2(info.multiplier);
  return info;
}

Period2Report period2_certificate(double c, double x0, double x1, double y0, double y1,
                                  int grid_n) {
  if (grid_n < 8) throw std::invalid_argument("period2_certificate: grid_n >= 8 required");
  const ParamContext ctx = ParamContext::make(Complex(c, 0.0));
  constexpr int kMaxNewton = 50;
  constexpr double kStepTol = 1e-12;
  constexpr double kDedup = 1e-8;
  constexpr double kFixedTol = 1e-6;

  auto g = [&](const RPoint& z) {
    const RPoint w = apply_forward(ctx, apply_forward(ctx, z));
    return RPoint{w.x - z.x, w.y - z.y};
  };
  auto jac = [&](const RPoint& z) {
    // J_{f^2}(z) - I with J_f(x, y) = [[y, x], [1, 0]]
    const RPoint w = apply_forward(ctx, z);
    const double j1[2][2] = {{z.y, z.x}, {1.0, 0.0}};
    const double j2[2][2] = {{w.y, w.x}, {1.0, 0.0}};
    double m[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m[i][j] = j2[i][0] * j1[0][j] + j2[i][1] * j1[1][j];
    m[0][0] -= 1.0;
    m[1][1] -= 1.0;
    return std::array<double, 4>{m[0][0], m[0][1], m[1][0], m[1][1]};
  };

  Period2Report rep;
  rep.seeds = grid_n * grid_n;
  std::vector<RPoint> roots;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      RPoint z{x0 + (x1 - x0) * (i + 0.5) / grid_n, y0 + (y1 - y0) * (j + 0.5) / grid_n};
      bool ok = false;
      for (int it = 0; it < kMaxNewton; ++it) {
        const RPoint r = g(z);
        const auto m = jac(z);
        const double det = m[0] * m[3] - m[1] * m[2];
        if (std::abs(det) < 1e-14) break;
        const double dx = (r.x * m[3] - r.y * m[1]) / det;
        const double dy = (m[0] * r.y - m[2] * r.x) / det;
        z = {z.x - dx, z.y - dy};
        if (!is_finite(z)) break;
        if (std::max(std::abs(dx), std::abs(dy)) < kStepTol) {
          ok = true;
          break;
        }
      }
      if (!ok) continue;
      const RPoint r = g(z);
      if (std::max(std::abs(r.x), std::abs(r.y)) > 1e-9) continue;
      roots.push_back(z);
    }
  }
  rep.converged = static_cast<int>(roots.size());

  std::sort(roots.begin(), roots.end(), [](const RPoint& a, const RPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  std::vector<RPoint> unique;
  for (const auto& z : roots) {
    bool dup = false;
    for (const auto& u : unique)
      if (dist(u, z) < kDedup) dup = true;
    if (!dup) unique.push_back(z);
  }

  const FixedPoints fps = fixed_points(Complex(c, 0.0), true);
  const RPoint alpha{fps.a1.a.real(), fps.a1.a.real()};
  const RPoint theta{fps.a2.a.real(), fps.a2.a.real()};
  for (const auto& z : unique) {
    if (dist(z, alpha) < kFixedTol || dist(z, theta) < kFixedTol)
      rep.fixed.push_back(z);
    else
      rep.nonfixed.push_back(z);
  }
  return rep;
}

}  // namespace fibmap
