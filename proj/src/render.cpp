#include "fibmap/render.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fibmap/dynamics.hpp"
#include "fibmap/escape.hpp"
#include "fibmap/parallel.hpp"

#include <json.hpp>

namespace fibmap {

namespace {

std::uint8_t escape_bucket(int n) {
  const int b = 1 + static_cast<int>(std::floor(std::log2(static_cast<double>(n) + 1.0)));
  return static_cast<std::uint8_t>(std::min(b, 255));
}

bool survives_nested(const ParamContext& ctx, RPoint z, double R, int n) {
  for (int k = 0; k <= n; ++k) {
    if (!is_finite(z) || max_norm(z) > R) return false;
    z = apply_forward(ctx, z);
  }
  return true;
}

}  // namespace

std::string raster_mode_name(RasterMode mode) {
  switch (mode) {
    case RasterMode::KplusReal: return "kplus-real";
    case RasterMode::KminusReal: return "kminus-real";
    case RasterMode::KplusComplexSlice: return "kplus-complex-slice";
    case RasterMode::Nested: return "nested";
    case RasterMode::LimitClasses: return "limit-classes";
  }
  return "?";
}

Raster rasterize(const RasterSpec& spec, int workers) {
  if (spec.width < 1 || spec.height < 1)
    throw std::invalid_argument("InvalidSpec: width and height must be >= 1");
  if (!(spec.x1 > spec.x0) || !(spec.y1 > spec.y0))
    throw std::invalid_argument("InvalidSpec: window is empty");

  const ParamContext ctx = ParamContext::make(spec.c);
  const EscapeRadii radii = escape_radii(spec.c);
  const bool needs_real = spec.mode == RasterMode::LimitClasses;
  RealDynamics rd;
  if (needs_real) rd = make_real_dynamics(spec.c.real());

  Raster out;
  out.width = spec.width;
  out.height = spec.height;
  out.codes.assign(static_cast<std::size_t>(spec.width) * spec.height, 0);

  const double dx = (spec.x1 - spec.x0) / spec.width;
  const double dy = (spec.y1 - spec.y0) / spec.height;
  const double nested_R = (1.0 + radii.margin) * radii.r2;

  auto pixel = [&](int row, int col) -> std::uint8_t {
    const double px = spec.x0 + (col + 0.5) * dx;
    const double py = spec.y1 - (row + 0.5) * dy;
    switch (spec.mode) {
      case RasterMode::KplusReal: {
        const Classification r = classify_forward(ctx, RPoint{px, py}, radii.r0, spec.budget);
        return r.cls == EscapeClass::Bounded ? 0 : escape_bucket(r.index);
      }
      case RasterMode::KminusReal: {
        const Classification r = classify_backward(ctx, RPoint{px, py}, radii, spec.budget);
        return r.cls == EscapeClass::Bounded ? 0 : escape_bucket(r.index);
      }
      case RasterMode::KplusComplexSlice: {
        const CPoint z{Complex(px, py), spec.y0_slice};
        const Classification r = classify_forward(ctx, z, radii.r0, spec.budget);
        return r.cls == EscapeClass::Bounded ? 0 : escape_bucket(r.index);
      }
      case RasterMode::Nested:
        return survives_nested(ctx, RPoint{px, py}, nested_R, spec.nested_n) ? 1 : 0;
      case RasterMode::LimitClasses: {
        const ForwardLimitResult r = classify_limit_real(rd, RPoint{px, py}, spec.budget, 1e-8);
        switch (r.cls) {
          case ForwardLimit::Undecided: return 0;
          case ForwardLimit::Alpha: return 1;
          case ForwardLimit::Theta: return 2;
          case ForwardLimit::Cycle3: return 3;
          case ForwardLimit::Escape: return 4;
        }
        return 0;
      }
    }
    return 0;
  };

  parallel_for(static_cast<long long>(spec.height), workers, [&](long long rb, long long re) {
    for (long long row = rb; row < re; ++row)
      for (int col = 0; col < spec.width; ++col)
        out.codes[static_cast<std::size_t>(row) * spec.width + col] =
            pixel(static_cast<int>(row), col);
  });
  return out;
}

Palette Palette::default_for(RasterMode mode) {
  Palette p;
  if (mode == RasterMode::LimitClasses) {
    p.rgb[0] = {255, 255, 255};  // Undecided
    p.rgb[1] = {60, 120, 216};   // Alpha basin
    p.rgb[2] = {220, 40, 40};    // Theta
    p.rgb[3] = {240, 180, 30};   // Cycle3
    p.rgb[4] = {0, 0, 0};        // Escape
    return p;
  }
  if (mode == RasterMode::Nested) {
    p.rgb[0] = {255, 255, 255};
    p.rgb[1] = {30, 30, 120};
    return p;
  }
  // escape-time modes: bounded black, buckets on a warm ramp
  p.rgb[0] = {0, 0, 0};
  for (int b = 1; b < 256; ++b) {
    const double t = std::min(1.0, (b - 1) / 16.0);
    p.rgb[b] = {static_cast<std::uint8_t>(40 + 215 * t),
                static_cast<std::uint8_t>(30 + 160 * (1.0 - std::abs(2.0 * t - 1.0))),
                static_cast<std::uint8_t>(200 * (1.0 - t))};
  }
  return p;
}

std::vector<std::uint8_t> encode_ppm(const Raster& raster, const Palette& palette) {
  if (raster.codes.empty()) throw std::invalid_argument("encode_ppm: empty grid");
  char header[64];
  const int n = std::snprintf(header, sizeof(header), "P6\n%d %d\n255\n", raster.width, raster.height);
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(n) + raster.codes.size() * 3);
  out.insert(out.end(), header, header + n);
  for (std::uint8_t code : raster.codes) {
    const auto& rgb = palette.rgb[code];
    out.insert(out.end(), rgb.begin(), rgb.end());
  }
  return out;
}

std::string encode_csv(const Raster& raster) {
  if (raster.codes.empty()) throw std::invalid_argument("encode_csv: empty grid");
  std::string out = "row,col,code\n";
  char buf[48];
  for (int r = 0; r < raster.height; ++r)
    for (int c = 0; c < raster.width; ++c) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%d\n", r, c, raster.at(r, c));
      out += buf;
    }
  return out;
}

std::string encode_json_meta(const RasterSpec& spec, const Raster& raster) {
  nlohmann::json j;
  j["mode"] = raster_mode_name(spec.mode);
  j["c"] = {spec.c.real(), spec.c.imag()};
  j["window"] = {spec.x0, spec.x1, spec.y0, spec.y1};
  j["width"] = spec.width;
  j["height"] = spec.height;
  j["budget"] = spec.budget;
  j["seed"] = spec.seed;
  if (spec.mode == RasterMode::KplusComplexSlice)
    j["y0"] = {spec.y0_slice.real(), spec.y0_slice.imag()};
  if (spec.mode == RasterMode::Nested) j["nested_n"] = spec.nested_n;
  j["bucket_rule"] =
      "escape modes: code 0 bounded, else 1+floor(log2(exit_index+1)); "
      "limit-classes: 0 undecided, 1 alpha, 2 theta, 3 cycle3, 4 escape";
  std::array<long long, 256> hist{};
  for (std::uint8_t code : raster.codes) ++hist[code];
  nlohmann::json h = nlohmann::json::object();
  for (int i = 0; i < 256; ++i)
    if (hist[i] > 0) h[std::to_string(i)] = hist[i];
  j["histogram"] = h;
  return j.dump(2);
}

}  // namespace fibmap
