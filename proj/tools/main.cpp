// fibmap: escape classification, transition certification, manifold tracing,
// measure estimation and rendering for the family f_c(x, y) = (xy + c, x).
//
// Exit codes: 0 success / all checks pass, 1 a verification failed,
// 2 usage error.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibmap/dynamics.hpp"
#include "fibmap/escape.hpp"
#include "fibmap/manifolds.hpp"
#include "fibmap/measure.hpp"
#include "fibmap/partition.hpp"
#include "fibmap/render.hpp"
#include "fibmap/spectral.hpp"

namespace {

using fibmap::Complex;

Complex parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return Complex(std::stod(s), 0.0);
  return Complex(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

struct Window {
  double x0, x1, y0, y1;
};

Window parse_window(const std::string& s) {
  Window w{};
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf", &w.x0, &w.x1, &w.y0, &w.y1) != 4)
    throw CLI::ValidationError("--window expects x0,x1,y0,y1");
  return w;
}

nlohmann::json complex_json(const Complex& z) { return {z.real(), z.imag()}; }

const char* kind_name(fibmap::PointKind k) {
  switch (k) {
    case fibmap::PointKind::Attracting: return "attracting";
    case fibmap::PointKind::Repelling: return "repelling";
    case fibmap::PointKind::Saddle: return "saddle";
    case fibmap::PointKind::Indifferent: return "indifferent";
    case fibmap::PointKind::Degenerate: return "degenerate";
  }
  return "?";
}

int cmd_render(const std::string& mode, const std::string& c_str, const std::string& window_str,
               const std::string& size_str, int budget, const std::string& y0_str,
               std::uint64_t seed, const std::string& out_path, const std::string& format) {
  fibmap::RasterSpec spec;
  spec.c = parse_complex(c_str);
  spec.budget = budget;
  spec.seed = seed;
  const Window w = parse_window(window_str);
  spec.x0 = w.x0;
  spec.x1 = w.x1;
  spec.y0 = w.y0;
  spec.y1 = w.y1;
  if (std::sscanf(size_str.c_str(), "%dx%d", &spec.width, &spec.height) != 2)
    throw CLI::ValidationError("--size expects WxH");

  if (mode == "kplus-real") {
    spec.mode = fibmap::RasterMode::KplusReal;
  } else if (mode == "kminus-real") {
    spec.mode = fibmap::RasterMode::KminusReal;
  } else if (mode == "kplus-complex-slice") {
    spec.mode = fibmap::RasterMode::KplusComplexSlice;
    spec.y0_slice = parse_complex(y0_str.empty() ? "0" : y0_str);
  } else if (mode == "limit-classes") {
    spec.mode = fibmap::RasterMode::LimitClasses;
  } else if (mode.rfind("nested", 0) == 0) {
    spec.mode = fibmap::RasterMode::Nested;
    const auto colon = mode.find(':');
    spec.nested_n = colon == std::string::npos ? 0 : std::stoi(mode.substr(colon + 1));
  } else {
    throw CLI::ValidationError("unknown --mode " + mode);
  }

  const fibmap::Raster raster = fibmap::rasterize(spec);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open " << out_path << "\n";
    return 1;
  }
  if (format == "ppm") {
    const auto bytes = fibmap::encode_ppm(raster, fibmap::Palette::default_for(spec.mode));
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
  } else if (format == "csv") {
    out << fibmap::encode_csv(raster);
  } else {
    throw CLI::ValidationError("unknown --format " + format);
  }
  return 0;
}

int cmd_fixed_points(const std::string& c_str) {
  const Complex c = parse_complex(c_str);
  const fibmap::FixedPoints fps = fibmap::fixed_points(c, c.imag() == 0.0);
  const fibmap::CycleInfo cyc = fibmap::three_cycle(c);
  nlohmann::json j;
  j["c"] = complex_json(c);
  j["status"] = fps.status == fibmap::FixedPointStatus::Ok          ? "ok"
                : fps.status == fibmap::FixedPointStatus::Degenerate ? "degenerate"
                                                                     : "non-real-pair";
  for (const auto* info : {&fps.a1, &fps.a2}) {
    nlohmann::json p;
    p["a"] = complex_json(info->a);
    p["location"] = {complex_json(info->location.x), complex_json(info->location.y)};
    p["eigenvalues"] = {complex_json(info->eigenvalues[0]), complex_json(info->eigenvalues[1])};
    p["kind"] = kind_name(info->kind);
    j[info->which == 1 ? "a1" : "a2"] = p;
  }
  nlohmann::json cj;
  cj["points"] = nlohmann::json::array();
  for (const auto& p : cyc.points) cj["points"].push_back({complex_json(p.x), complex_json(p.y)});
  cj["multiplier"] = {{complex_json(cyc.multiplier[0][0]), complex_json(cyc.multiplier[0][1])},
                      {complex_json(cyc.multiplier[1][0]), complex_json(cyc.multiplier[1][1])}};
  cj["eigenvalues"] = {complex_json(cyc.multiplier_eigenvalues[0]),
                       complex_json(cyc.multiplier_eigenvalues[1])};
  j["three_cycle"] = cj;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_verify_transitions(double c) {
  const fibmap::TransitionReport rep = fibmap::verify_transition_tables(c);
  std::printf("transition certification at c=%g\n", c);
  for (const auto& row : rep.rows)
    std::printf("  %-28s %s (%zu leaves)\n", row.name.c_str(),
                row.pass ? "Certified" : "FAILED", row.leaves);
  std::printf("  %-28s %s ((1+c)a2 = %.12g)\n", "(1+c)a2 <= 1",
              rep.ca_pass ? "Certified" : "FAILED", rep.ca_value);
  std::printf("%s\n", rep.all_pass ? "PASS" : "FAIL");
  return rep.all_pass ? 0 : 1;
}

int cmd_verify_decomposition(double c, int budget) {
  const fibmap::RealDynamics rd = fibmap::make_real_dynamics(c);
  const fibmap::KplusDecompReport kp =
      fibmap::verify_kplus_decomposition(rd, 256, -2.0, 2.0, -2.0, 2.0, budget, 1e-4, 100, 2026);
  std::printf("K+ decomposition at c=%g (grid %dx%d, budget %d)\n", c, kp.grid_n, kp.grid_n,
              budget);
  std::printf("  classes: alpha=%lld theta=%lld cycle=%lld escape=%lld undecided=%lld\n",
              kp.alpha_points, kp.theta_points, kp.cycle_points, kp.escape_points,
              kp.undecided_points);
  std::printf("  interior probes ok: %lld / %lld\n", kp.interior_ok, kp.interior_total);
  std::printf(
      "  boundary bisections: %d used, %d approach theta/cycle (%d confirmed x3), %d undecided\n",
      kp.segments_used, kp.boundary_approach, kp.boundary_success, kp.boundary_undecided);
  const bool kp_pass =
      kp.segments_used > 0 && kp.boundary_approach >= static_cast<int>(0.95 * kp.segments_used);

  const fibmap::KminusDecompReport km = fibmap::verify_kminus_decomposition(rd, 128, budget, 1e-4, 2026);
  std::printf("K- decomposition at c=%g (grid %dx%d)\n", c, km.grid_n, km.grid_n);
  std::printf("  backward-bounded grid points: %lld of %lld", km.backward_bounded, km.grid_points);
  if (km.backward_bounded == 0)
    std::printf(" (expected: K- has empty interior, off-curve points escape backward)");
  std::printf("\n  of those: theta/cycle %lld, near traced curve %lld, unexplained %lld\n",
              km.theta_or_cycle, km.near_curve, km.unexplained);
  std::printf("  manifold-resident seeds ok: %lld / %lld\n", km.seeded_ok, km.seeded_total);
  const bool km_pass = km.unexplained == 0 && km.seeded_ok == km.seeded_total;

  std::printf("%s\n", kp_pass && km_pass ? "PASS" : "FAIL");
  return kp_pass && km_pass ? 0 : 1;
}

int cmd_verify_escape(double c) {
  const fibmap::ParamContext ctx = fibmap::ParamContext::make(Complex(c, 0.0));
  const fibmap::EscapeRadii radii = fibmap::escape_radii(ctx.c);
  const double R = (1.0 + radii.margin) * radii.r2;
  const auto fwd = fibmap::nested_forward_probe(ctx, R, 20, 10000, 2026);
  const auto bwd = fibmap::nested_backward_probe(ctx, R, 20, 10000, 2026);
  const auto comp = fibmap::compactness_probe(ctx, 1000, 10000, 2026);
  std::printf("escape verification at c=%g (R0=%g R1=%g R2=%g)\n", c, radii.r0, radii.r1,
              radii.r2);
  std::printf("  forward nesting violations:  %lld / %lld samples\n", fwd.violations, fwd.samples);
  std::printf("  backward nesting violations: %lld / %lld samples\n", bwd.violations, bwd.samples);
  std::printf("  compactness: %lld K-points, max |x|=%g |y|=%g, bound R^3=%g -> %s\n",
              comp.k_points, comp.max_abs_x, comp.max_abs_y, comp.r_cubed,
              comp.within_bound ? "inside" : "OUTSIDE");
  const bool pass = fwd.violations == 0 && bwd.violations == 0 && comp.within_bound;
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

int cmd_measure(const std::string& c_str, const std::string& set_str, const std::string& box_str,
                long long samples, std::uint64_t seed, int budget) {
  const Complex c = parse_complex(c_str);
  const fibmap::ParamContext ctx = fibmap::ParamContext::make(c);
  fibmap::SetSelector sel;
  if (set_str == "kplus")
    sel = fibmap::SetSelector::Kplus;
  else if (set_str == "kminus")
    sel = fibmap::SetSelector::Kminus;
  else if (set_str == "k")
    sel = fibmap::SetSelector::K;
  else
    throw CLI::ValidationError("--set expects kplus|kminus|k");
  fibmap::BoxSpec box;
  if (box_str.rfind("polydisk:", 0) == 0) {
    box = fibmap::BoxSpec::bidisk(std::stod(box_str.substr(9)));
  } else {
    const Window w = parse_window(box_str);
    box = fibmap::BoxSpec::real_box(w.x0, w.x1, w.y0, w.y1);
  }
  const fibmap::MeasureEstimate est = fibmap::mc_measure(ctx, sel, box, samples, seed, budget);
  std::cout << fibmap::measure_csv_header() << fibmap::measure_csv_row(est);
  return 0;
}

int cmd_trace(double c, const std::string& base_str, const std::string& side,
              const std::string& out_path) {
  const fibmap::RealDynamics rd = fibmap::make_real_dynamics(c);
  fibmap::BaseSelector base;
  if (base_str == "theta")
    base = fibmap::BaseSelector::Theta;
  else if (base_str == "p1")
    base = fibmap::BaseSelector::P1;
  else if (base_str == "p2")
    base = fibmap::BaseSelector::P2;
  else if (base_str == "p3")
    base = fibmap::BaseSelector::P3;
  else
    throw CLI::ValidationError("--base expects theta|p1|p2|p3");
  if (side != "stable" && side != "unstable")
    throw CLI::ValidationError("--side expects stable|unstable");
  const fibmap::SaddleFrame frame = fibmap::saddle_frame(rd, base);
  const double eps0 = fibmap::default_eps0(frame);
  std::vector<fibmap::ManifoldCurve> curves;
  for (int branch : {+1, -1}) {
    curves.push_back(side == "stable"
                         ? fibmap::trace_stable(rd, frame, 150, eps0, 1e-3, 100.0, branch)
                         : fibmap::trace_unstable(rd, frame, 150, eps0, 1e-3, 100.0, branch));
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open " << out_path << "\n";
    return 1;
  }
  out << fibmap::curves_to_csv(rd, curves);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamics of the plane endomorphism family f_c(x,y) = (xy+c, x)"};
  app.require_subcommand(1);

  // render
  auto* render = app.add_subcommand("render", "rasterize invariant-set classifications");
  std::string r_mode, r_c, r_window = "-2,2,-2,2", r_size = "256x256", r_y0, r_out,
              r_format = "ppm";
  int r_budget = 1000;
  std::uint64_t r_seed = 0;
  render->add_option("--mode", r_mode, "kplus-real|kminus-real|kplus-complex-slice|nested:N|limit-classes")->required();
  render->add_option("--c", r_c, "parameter, re[,im]")->required();
  render->add_option("--window", r_window, "x0,x1,y0,y1");
  render->add_option("--size", r_size, "WxH");
  render->add_option("--budget", r_budget, "iteration cap");
  render->add_option("--y0", r_y0, "slice height for kplus-complex-slice, re[,im]");
  render->add_option("--seed", r_seed, "PRNG seed where sampling applies");
  render->add_option("--out", r_out, "output file")->required();
  render->add_option("--format", r_format, "ppm|csv");

  // fixed-points
  auto* fixed = app.add_subcommand("fixed-points", "fixed points, eigenvalues and the 3-cycle as JSON");
  std::string f_c;
  fixed->add_option("--c", f_c, "parameter, re[,im]")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->require_subcommand(1);
  auto* vt = verify->add_subcommand("transitions", "certify the rectangle transition tables");
  double vt_c = 0.2;
  vt->add_option("--c", vt_c, "real parameter in (0, 1/4)")->required();
  auto* vd = verify->add_subcommand("decomposition", "stable/unstable decomposition checks");
  double vd_c = 0.2;
  int vd_budget = 1000;
  vd->add_option("--c", vd_c, "real parameter in (0, 1/4)")->required();
  vd->add_option("--budget", vd_budget, "iteration cap");
  auto* ve = verify->add_subcommand("escape", "nested probes and compactness probe");
  double ve_c = 0.2;
  ve->add_option("--c", ve_c, "real parameter")->required();

  // measure
  auto* measure = app.add_subcommand("measure", "Monte Carlo measure estimate (CSV row)");
  std::string m_c, m_set, m_box;
  long long m_samples = 10000;
  std::uint64_t m_seed = 0;
  int m_budget = 1000;
  measure->add_option("--c", m_c, "parameter, re[,im]")->required();
  measure->add_option("--set", m_set, "kplus|kminus|k")->required();
  measure->add_option("--box", m_box, "x0,x1,y0,y1 (real box) or polydisk:R")->required();
  measure->add_option("--samples", m_samples, "sample count");
  measure->add_option("--seed", m_seed, "PRNG seed");
  measure->add_option("--budget", m_budget, "iteration cap");

  // trace
  auto* trace = app.add_subcommand("trace", "trace a stable/unstable manifold branch to CSV");
  double t_c = 0.2;
  std::string t_base, t_side, t_out;
  trace->add_option("--c", t_c, "real parameter in (0, 1/4)")->required();
  trace->add_option("--base", t_base, "theta|p1|p2|p3")->required();
  trace->add_option("--side", t_side, "stable|unstable")->required();
  trace->add_option("--out", t_out, "output CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (render->parsed())
      return cmd_render(r_mode, r_c, r_window, r_size, r_budget, r_y0, r_seed, r_out, r_format);
    if (fixed->parsed()) return cmd_fixed_points(f_c);
    if (verify->parsed()) {
      if (vt->parsed()) return cmd_verify_transitions(vt_c);
      if (vd->parsed()) return cmd_verify_decomposition(vd_c, vd_budget);
      if (ve->parsed()) return cmd_verify_escape(ve_c);
    }
    if (measure->parsed()) return cmd_measure(m_c, m_set, m_box, m_samples, m_seed, m_budget);
    if (trace->parsed()) return cmd_trace(t_c, t_base, t_side, t_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}
