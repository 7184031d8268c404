// Python bindings for the main operations: map evaluation, escape
// classification, fixed-point/cycle analysis, transition certification,
// limit classifiers, manifold tracing, measure estimation and rendering.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fibmap/dynamics.hpp"
#include "fibmap/escape.hpp"
#include "fibmap/manifolds.hpp"
#include "fibmap/measure.hpp"
#include "fibmap/partition.hpp"
#include "fibmap/render.hpp"
#include "fibmap/spectral.hpp"

namespace py = pybind11;
using namespace fibmap;

namespace {

const char* escape_name(EscapeClass c) {
  switch (c) {
    case EscapeClass::Bounded: return "bounded";
    case EscapeClass::Escaped: return "escaped";
    case EscapeClass::InverseUndefined: return "inverse-undefined";
  }
  return "?";
}

const char* verdict_name(SetVerdict v) {
  switch (v) {
    case SetVerdict::Inside: return "inside";
    case SetVerdict::Outside: return "outside";
    case SetVerdict::BoundaryBand: return "boundary-band";
    case SetVerdict::OriginExcluded: return "origin-excluded";
  }
  return "?";
}

const char* kind_name(PointKind k) {
  switch (k) {
    case PointKind::Attracting: return "attracting";
    case PointKind::Repelling: return "repelling";
    case PointKind::Saddle: return "saddle";
    case PointKind::Indifferent: return "indifferent";
    case PointKind::Degenerate: return "degenerate";
  }
  return "?";
}

const char* forward_limit_name(ForwardLimit c) {
  switch (c) {
    case ForwardLimit::Alpha: return "alpha";
    case ForwardLimit::Theta: return "theta";
    case ForwardLimit::Cycle3: return "cycle3";
    case ForwardLimit::Escape: return "escape";
    case ForwardLimit::Undecided: return "undecided";
  }
  return "?";
}

const char* backward_limit_name(BackwardLimit c) {
  switch (c) {
    case BackwardLimit::Theta: return "theta";
    case BackwardLimit::Cycle3: return "cycle3";
    case BackwardLimit::BackwardEscape: return "backward-escape";
    case BackwardLimit::InverseUndefined: return "inverse-undefined";
    case BackwardLimit::Undecided: return "undecided";
  }
  return "?";
}

py::dict fixed_point_dict(const FixedPointInfo& info) {
  py::dict d;
  d["a"] = info.a;
  d["location"] = py::make_tuple(info.location.x, info.location.y);
  d["eigenvalues"] = py::make_tuple(info.eigenvalues[0], info.eigenvalues[1]);
  d["kind"] = kind_name(info.kind);
  return d;
}

BaseSelector parse_base(const std::string& s) {
  if (s == "theta") return BaseSelector::Theta;
  if (s == "p1") return BaseSelector::P1;
  if (s == "p2") return BaseSelector::P2;
  if (s == "p3") return BaseSelector::P3;
  throw py::value_error("base must be theta|p1|p2|p3");
}

SetSelector parse_set(const std::string& s) {
  if (s == "kplus") return SetSelector::Kplus;
  if (s == "kminus") return SetSelector::Kminus;
  if (s == "k") return SetSelector::K;
  throw py::value_error("set must be kplus|kminus|k");
}

RasterMode parse_mode(const std::string& s) {
  if (s == "kplus-real") return RasterMode::KplusReal;
  if (s == "kminus-real") return RasterMode::KminusReal;
  if (s == "kplus-complex-slice") return RasterMode::KplusComplexSlice;
  if (s == "nested") return RasterMode::Nested;
  if (s == "limit-classes") return RasterMode::LimitClasses;
  throw py::value_error("unknown raster mode " + s);
}

}  // namespace

PYBIND11_MODULE(_fibmap, m) {
  m.doc() = "dynamics of the plane endomorphism family f_c(x, y) = (x y + c, x)";

  m.def(
      "apply_forward",
      [](Complex c, Complex x, Complex y) {
        const CPoint w = apply_forward(ParamContext::make(c), CPoint{x, y});
        return py::make_tuple(w.x, w.y);
      },
      py::arg("c"), py::arg("x"), py::arg("y"));

  m.def(
      "apply_inverse",
      [](Complex c, Complex x, Complex y) -> py::object {
        const auto w = apply_inverse(ParamContext::make(c), CPoint{x, y});
        if (!w) return py::none();
        return py::make_tuple(w->x, w->y);
      },
      py::arg("c"), py::arg("x"), py::arg("y"));

  m.def(
      "orbit",
      [](Complex c, Complex x, Complex y, bool forward, int budget) {
        const auto trace = iterate_orbit<Complex>(ParamContext::make(c), {x, y},
                                                  forward ? Direction::Forward : Direction::Backward,
                                                  budget, nullptr);
        py::list pts;
        for (const auto& p : trace.points) pts.append(py::make_tuple(p.x, p.y));
        py::dict d;
        d["points"] = pts;
        d["status"] = trace.status == OrbitStatus::Bounded ? "bounded"
                      : trace.status == OrbitStatus::Escaped ? "escaped"
                                                             : "inverse-undefined";
        d["exit_index"] = trace.exit_index;
        return d;
      },
      py::arg("c"), py::arg("x"), py::arg("y"), py::arg("forward") = true,
      py::arg("budget") = 100);

  m.def(
      "monomial_forward_c0",
      [](Complex x, Complex y, int n) -> py::object {
        static const ParamContext ctx = ParamContext::make(Complex(0.0, 0.0));
        const auto w = monomial_forward_c0(ctx, CPoint{x, y}, n);
        if (!w) return py::none();
        return py::make_tuple(w->x, w->y);
      },
      py::arg("x"), py::arg("y"), py::arg("n"));

  m.def(
      "monomial_backward_c0",
      [](Complex x, Complex y, int n) -> py::object {
        static const ParamContext ctx = ParamContext::make(Complex(0.0, 0.0));
        const auto w = monomial_backward_c0(ctx, CPoint{x, y}, n);
        if (!w) return py::none();
        return py::make_tuple(w->x, w->y);
      },
      py::arg("x"), py::arg("y"), py::arg("n"));

  m.def(
      "kplus_oracle_c0",
      [](Complex x, Complex y, double eps) {
        static const ParamContext ctx = ParamContext::make(Complex(0.0, 0.0));
        return verdict_name(c0_kplus_oracle(ctx, {x, y}, eps));
      },
      py::arg("x"), py::arg("y"), py::arg("eps") = 1e-6);

  m.def(
      "kminus_oracle_c0",
      [](Complex x, Complex y, double eps) {
        static const ParamContext ctx = ParamContext::make(Complex(0.0, 0.0));
        return verdict_name(c0_kminus_oracle(ctx, {x, y}, eps));
      },
      py::arg("x"), py::arg("y"), py::arg("eps") = 1e-6);

  m.def(
      "semiconjugacy_residual",
      [](Complex x, Complex y) { return semiconjugacy_residual({x, y}); }, py::arg("x"),
      py::arg("y"));

  m.def(
      "escape_radii",
      [](Complex c) {
        const EscapeRadii r = escape_radii(c);
        py::dict d;
        d["r0"] = r.r0;
        d["d_back"] = r.d_back;
        d["r1"] = r.r1;
        d["d_trap"] = r.d_trap;
        d["r2"] = r.r2;
        d["margin"] = r.margin;
        return d;
      },
      py::arg("c"));

  m.def(
      "classify_forward",
      [](Complex c, Complex x, Complex y, py::object R, int budget) {
        const ParamContext ctx = ParamContext::make(c);
        const double radius = R.is_none() ? escape_radii(c).r0 : R.cast<double>();
        const Classification r = classify_forward(ctx, CPoint{x, y}, radius, budget);
        return py::make_tuple(escape_name(r.cls), r.index);
      },
      py::arg("c"), py::arg("x"), py::arg("y"), py::arg("R") = py::none(),
      py::arg("budget") = 1000);

  m.def(
      "classify_backward",
      [](Complex c, Complex x, Complex y, int budget) {
        const ParamContext ctx = ParamContext::make(c);
        const Classification r = classify_backward(ctx, CPoint{x, y}, escape_radii(c), budget);
        return py::make_tuple(escape_name(r.cls), r.index);
      },
      py::arg("c"), py::arg("x"), py::arg("y"), py::arg("budget") = 1000);

  m.def(
      "nested_probe",
      [](Complex c, bool forward, int n_max, long long samples, std::uint64_t seed) {
        const ParamContext ctx = ParamContext::make(c);
        const EscapeRadii radii = escape_radii(c);
        const double R = (1.0 + radii.margin) * radii.r2;
        const ProbeReport rep = forward ? nested_forward_probe(ctx, R, n_max, samples, seed)
                                        : nested_backward_probe(ctx, R, n_max, samples, seed);
        py::dict d;
        d["samples"] = rep.samples;
        d["n_max"] = rep.n_max;
        d["radius"] = rep.radius;
        d["violations"] = rep.violations;
        return d;
      },
      py::arg("c"), py::arg("forward") = true, py::arg("n_max") = 20,
      py::arg("samples") = 10000, py::arg("seed") = 1);

  m.def(
      "compactness_probe",
      [](Complex c, int budget, long long samples, std::uint64_t seed) {
        const CompactnessReport rep = compactness_probe(ParamContext::make(c), budget, samples, seed);
        py::dict d;
        d["k_points"] = rep.k_points;
        d["max_abs_x"] = rep.max_abs_x;
        d["max_abs_y"] = rep.max_abs_y;
        d["r_cubed"] = rep.r_cubed;
        d["within_bound"] = rep.within_bound;
        return d;
      },
      py::arg("c"), py::arg("budget") = 1000, py::arg("samples") = 10000, py::arg("seed") = 1);

  m.def(
      "fixed_points",
      [](Complex c) {
        const FixedPoints fp = fixed_points(c, c.imag() == 0.0);
        py::dict d;
        d["status"] = fp.status == FixedPointStatus::Ok          ? "ok"
                      : fp.status == FixedPointStatus::Degenerate ? "degenerate"
                                                                  : "non-real-pair";
        d["a1"] = fixed_point_dict(fp.a1);
        d["a2"] = fixed_point_dict(fp.a2);
        return d;
      },
      py::arg("c"));

  m.def(
      "classify_parameter",
      [](double c) {
        const ParameterClass pc = classify_parameter(c);
        py::dict d;
        d["a1_kind"] = kind_name(pc.a1_kind);
        d["a2_kind"] = kind_name(pc.a2_kind);
        d["a1_eigenvalues"] = py::make_tuple(pc.a1_eigenvalues[0], pc.a1_eigenvalues[1]);
        d["a2_eigenvalues"] = py::make_tuple(pc.a2_eigenvalues[0], pc.a2_eigenvalues[1]);
        return d;
      },
      py::arg("c"));

  m.def(
      "inverse_fixed_classification",
      [](double c) {
        const InverseFixedInfo info = inverse_fixed_classification(c);
        py::dict d;
        d["a1"] = info.a1;
        d["eigenvalues"] = py::make_tuple(info.eigenvalues[0], info.eigenvalues[1]);
        d["product_modulus"] = info.product_modulus;
        d["attracting"] = info.attracting;
        return d;
      },
      py::arg("c"));

  m.def(
      "three_cycle",
      [](Complex c) {
        const CycleInfo cyc = three_cycle(c);
        py::dict d;
        py::list pts;
        for (const auto& p : cyc.points) pts.append(py::make_tuple(p.x, p.y));
        d["points"] = pts;
        d["multiplier"] = py::make_tuple(
            py::make_tuple(cyc.multiplier[0][0], cyc.multiplier[0][1]),
            py::make_tuple(cyc.multiplier[1][0], cyc.multiplier[1][1]));
        d["eigenvalues"] =
            py::make_tuple(cyc.multiplier_eigenvalues[0], cyc.multiplier_eigenvalues[1]);
        return d;
      },
      py::arg("c"));

  m.def(
      "period2_certificate",
      [](double c, double x0, double x1, double y0, double y1, int grid_n) {
        const Period2Report rep = period2_certificate(c, x0, x1, y0, y1, grid_n);
        py::dict d;
        d["seeds"] = rep.seeds;
        d["converged"] = rep.converged;
        py::list fixed, nonfixed;
        for (const auto& z : rep.fixed) fixed.append(py::make_tuple(z.x, z.y));
        for (const auto& z : rep.nonfixed) nonfixed.append(py::make_tuple(z.x, z.y));
        d["fixed"] = fixed;
        d["nonfixed"] = nonfixed;
        return d;
      },
      py::arg("c"), py::arg("x0") = -3.0, py::arg("x1") = 3.0, py::arg("y0") = -3.0,
      py::arg("y1") = 3.0, py::arg("grid_n") = 32);

  m.def(
      "build_regions",
      [](double c) {
        const RegionTable t = build_regions(c);
        py::dict d;
        for (const auto& lr : t.regions)
          d[region_name(lr.label)] = py::make_tuple(py::make_tuple(lr.rect.x.lo, lr.rect.x.hi),
                                                    py::make_tuple(lr.rect.y.lo, lr.rect.y.hi));
        return d;
      },
      py::arg("c"));

  m.def(
      "locate",
      [](double c, double x, double y) {
        const RegionTable t = build_regions(c);
        py::list out;
        for (RegionLabel l : locate(t, {x, y})) out.append(region_name(l));
        return out;
      },
      py::arg("c"), py::arg("x"), py::arg("y"));

  m.def(
      "verify_transitions",
      [](double c) {
        const TransitionReport rep = verify_transition_tables(c);
        py::list rows;
        for (const auto& row : rep.rows) rows.append(py::make_tuple(row.name, row.pass));
        py::dict d;
        d["rows"] = rows;
        d["ca_value"] = rep.ca_value;
        d["ca_pass"] = rep.ca_pass;
        d["all_pass"] = rep.all_pass;
        return d;
      },
      py::arg("c"));

  m.def(
      "classify_limit",
      [](double c, double x, double y, int budget, double tol) {
        const RealDynamics rd = make_real_dynamics(c);
        const ForwardLimitResult r = classify_limit_real(rd, {x, y}, budget, tol);
        return py::make_tuple(forward_limit_name(r.cls), r.phase, r.index);
      },
      py::arg("c"), py::arg("x"), py::arg("y"), py::arg("budget") = 10000,
      py::arg("tol") = 1e-8);

  m.def(
      "classify_backward_limit",
      [](double c, double x, double y, int budget, double tol) {
        const RealDynamics rd = make_real_dynamics(c);
        const BackwardLimitResult r = classify_backward_limit_real(rd, {x, y}, budget, tol);
        return py::make_tuple(backward_limit_name(r.cls), r.phase, r.index);
      },
      py::arg("c"), py::arg("x"), py::arg("y"), py::arg("budget") = 10000,
      py::arg("tol") = 1e-8);

  m.def(
      "itinerary",
      [](double c, double x, double y, bool forward, int budget) {
        const RealDynamics rd = make_real_dynamics(c);
        const Itinerary it =
            itinerary(rd, {x, y}, forward ? Direction::Forward : Direction::Backward, budget);
        py::list steps;
        for (const auto& step : it.steps) {
          py::list labels;
          for (RegionLabel l : step.labels) labels.append(region_name(l));
          steps.append(py::make_tuple(py::make_tuple(step.z.x, step.z.y), labels));
        }
        return steps;
      },
      py::arg("c"), py::arg("x"), py::arg("y"), py::arg("forward") = true,
      py::arg("budget") = 100);

  m.def(
      "saddle_frame",
      [](double c, const std::string& base) {
        const RealDynamics rd = make_real_dynamics(c);
        const SaddleFrame fr = saddle_frame(rd, parse_base(base));
        py::dict d;
        d["base"] = py::make_tuple(fr.base.x, fr.base.y);
        d["period"] = fr.period;
        d["stable_dir"] = py::make_tuple(fr.stable_dir.x, fr.stable_dir.y);
        d["unstable_dir"] = py::make_tuple(fr.unstable_dir.x, fr.unstable_dir.y);
        d["stable_mult"] = fr.stable_mult;
        d["unstable_mult"] = fr.unstable_mult;
        return d;
      },
      py::arg("c"), py::arg("base") = "theta");

  m.def(
      "trace_manifold",
      [](double c, const std::string& base, const std::string& side, int branch, int steps,
         double arc_tol, double max_arclen) {
        const RealDynamics rd = make_real_dynamics(c);
        const SaddleFrame fr = saddle_frame(rd, parse_base(base));
        const double eps0 = default_eps0(fr);
        const ManifoldCurve curve =
            side == "stable" ? trace_stable(rd, fr, steps, eps0, arc_tol, max_arclen, branch)
                             : trace_unstable(rd, fr, steps, eps0, arc_tol, max_arclen, branch);
        py::list vertices;
        for (const auto& v : curve.vertices) vertices.append(py::make_tuple(v.x, v.y));
        py::dict d;
        d["vertices"] = vertices;
        d["truncated_at_singular_line"] = curve.truncated_at_singular_line;
        d["branch"] = curve.branch;
        d["side"] = side;
        return d;
      },
      py::arg("c"), py::arg("base") = "theta", py::arg("side") = "unstable",
      py::arg("branch") = 1, py::arg("steps") = 150, py::arg("arc_tol") = 1e-3,
      py::arg("max_arclen") = 100.0);

  m.def(
      "verify_kplus_decomposition",
      [](double c, int grid_n, int budget, double tol, int segments, std::uint64_t seed) {
        const RealDynamics rd = make_real_dynamics(c);
        const KplusDecompReport rep =
            verify_kplus_decomposition(rd, grid_n, -2.0, 2.0, -2.0, 2.0, budget, tol, segments, seed);
        py::dict d;
        d["alpha_points"] = rep.alpha_points;
        d["escape_points"] = rep.escape_points;
        d["undecided_points"] = rep.undecided_points;
        d["interior_ok"] = rep.interior_ok;
        d["interior_total"] = rep.interior_total;
        d["segments_used"] = rep.segments_used;
        d["boundary_approach"] = rep.boundary_approach;
        d["boundary_success"] = rep.boundary_success;
        return d;
      },
      py::arg("c"), py::arg("grid_n") = 128, py::arg("budget") = 10000, py::arg("tol") = 1e-4,
      py::arg("segments") = 100, py::arg("seed") = 1);

  m.def(
      "verify_kminus_decomposition",
      [](double c, int grid_n, int budget, double tol, std::uint64_t seed) {
        const RealDynamics rd = make_real_dynamics(c);
        const KminusDecompReport rep = verify_kminus_decomposition(rd, grid_n, budget, tol, seed);
        py::dict d;
        d["grid_points"] = rep.grid_points;
        d["backward_bounded"] = rep.backward_bounded;
        d["theta_or_cycle"] = rep.theta_or_cycle;
        d["near_curve"] = rep.near_curve;
        d["unexplained"] = rep.unexplained;
        d["seeded_total"] = rep.seeded_total;
        d["seeded_ok"] = rep.seeded_ok;
        return d;
      },
      py::arg("c"), py::arg("grid_n") = 128, py::arg("budget") = 1000, py::arg("tol") = 1e-4,
      py::arg("seed") = 1);

  m.def(
      "mc_measure",
      [](Complex c, const std::string& selector, py::object box, long long samples,
         std::uint64_t seed, int budget) {
        BoxSpec spec;
        if (py::isinstance<py::float_>(box) || py::isinstance<py::int_>(box)) {
          spec = BoxSpec::bidisk(box.cast<double>());
        } else {
          const auto t = box.cast<std::tuple<double, double, double, double>>();
          spec = BoxSpec::real_box(std::get<0>(t), std::get<1>(t), std::get<2>(t), std::get<3>(t));
        }
        const MeasureEstimate est =
            mc_measure(ParamContext::make(c), parse_set(selector), spec, samples, seed, budget);
        py::dict d;
        d["value"] = est.value;
        d["stderr"] = est.stderr_;
        d["hits"] = est.hits;
        d["samples"] = est.samples;
        d["volume"] = est.box.volume();
        d["csv"] = measure_csv_row(est);
        return d;
      },
      py::arg("c"), py::arg("selector") = "kplus", py::arg("box") = 1.0,
      py::arg("samples") = 10000, py::arg("seed") = 1, py::arg("budget") = 1000);

  m.def(
      "conjecture_explorer",
      [](const std::vector<Complex>& c_list, double bidisk_radius, long long samples,
         std::uint64_t seed, int budget) {
        return explorer_csv(conjecture_explorer(c_list, BoxSpec::bidisk(bidisk_radius), samples,
                                                seed, budget));
      },
      py::arg("c_list"), py::arg("bidisk_radius") = 2.0, py::arg("samples") = 10000,
      py::arg("seed") = 1, py::arg("budget") = 1000);

  m.def(
      "interior_polydisk",
      [](Complex c) -> py::object {
        const auto info = interior_polydisk(c);
        if (!info) return py::none();
        return py::make_tuple(info->a, info->margin);
      },
      py::arg("c"));

  m.def(
      "kminus_positivity_check",
      [](double c, long long samples, std::uint64_t seed, int budget) {
        const PositivityReport rep = kminus_positivity_check(c, samples, seed, budget);
        py::dict d;
        d["product_modulus"] = rep.inverse.product_modulus;
        d["attracting"] = rep.inverse.attracting;
        d["fraction"] = rep.fraction;
        d["converged"] = rep.converged;
        d["samples"] = rep.samples;
        return d;
      },
      py::arg("c"), py::arg("samples") = 10000, py::arg("seed") = 1, py::arg("budget") = 1000);

  m.def(
      "rasterize",
      [](const std::string& mode, Complex c, std::tuple<double, double, double, double> window,
         int width, int height, int budget, Complex y0, int nested_n, std::uint64_t seed) {
        RasterSpec spec;
        spec.mode = parse_mode(mode);
        spec.c = c;
        spec.x0 = std::get<0>(window);
        spec.x1 = std::get<1>(window);
        spec.y0 = std::get<2>(window);
        spec.y1 = std::get<3>(window);
        spec.width = width;
        spec.height = height;
        spec.budget = budget;
        spec.y0_slice = y0;
        spec.nested_n = nested_n;
        spec.seed = seed;
        const Raster r = rasterize(spec);
        return py::make_tuple(r.width, r.height,
                              py::bytes(reinterpret_cast<const char*>(r.codes.data()),
                                        r.codes.size()));
      },
      py::arg("mode"), py::arg("c"), py::arg("window") = std::make_tuple(-2.0, 2.0, -2.0, 2.0),
      py::arg("width") = 128, py::arg("height") = 128, py::arg("budget") = 1000,
      py::arg("y0") = Complex(0.0, 0.0), py::arg("nested_n") = 0, py::arg("seed") = 0);

  m.def(
      "render_ppm",
      [](const std::string& mode, Complex c, std::tuple<double, double, double, double> window,
         int width, int height, int budget, Complex y0, int nested_n) {
        RasterSpec spec;
        spec.mode = parse_mode(mode);
        spec.c = c;
        spec.x0 = std::get<0>(window);
        spec.x1 = std::get<1>(window);
        spec.y0 = std::get<2>(window);
        spec.y1 = std::get<3>(window);
        spec.width = width;
        spec.height = height;
        spec.budget = budget;
        spec.y0_slice = y0;
        spec.nested_n = nested_n;
        const auto bytes = encode_ppm(rasterize(spec), Palette::default_for(spec.mode));
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      },
      py::arg("mode"), py::arg("c"), py::arg("window") = std::make_tuple(-2.0, 2.0, -2.0, 2.0),
      py::arg("width") = 128, py::arg("height") = 128, py::arg("budget") = 1000,
      py::arg("y0") = Complex(0.0, 0.0), py::arg("nested_n") = 0);
}
