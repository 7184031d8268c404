#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fibmap/partition.hpp"
#include "fibmap/point.hpp"

namespace fibmap {

enum class RasterMode { KplusReal, KminusReal, KplusComplexSlice, Nested, LimitClasses };

/// Pixel-center sampling over window [x0,x1]x[y0,y1], rows top to bottom
/// (row 0 has the largest y). For the complex slice the window spans
/// re(x) x im(x) and y is pinned to y0_slice.
struct RasterSpec {
  RasterMode mode = RasterMode::KplusReal;
  Complex c;
  double x0 = -2.0, x1 = 2.0, y0 = -2.0, y1 = 2.0;
  int width = 0, height = 0;
  int budget = 1000;
  std::uint64_t seed = 0;
  Complex y0_slice;   // KplusComplexSlice only
  int nested_n = 0;   // Nested only
};

/// Class codes:
///   escape modes: 0 = Bounded, 1 + floor(log2(n+1)) for exit index n
///                 (log-spaced buckets; a dead inverse branch buckets at
///                 its index too)
///   nested:       1 inside D ∩ f^{-k}(D) for all k <= n, else 0
///   limit-classes: 0 Undecided, 1 Alpha, 2 Theta, 3 Cycle3, 4 Escape
struct Raster {
  int width = 0, height = 0;
  std::vector<std::uint8_t> codes;  // row-major, top to bottom

  std::uint8_t at(int row, int col) const { return codes[static_cast<std::size_t>(row) * width + col]; }
};

Raster rasterize(const RasterSpec& spec, int workers = 0);

struct Palette {
  std::array<std::array<std::uint8_t, 3>, 256> rgb{};

  static Palette default_for(RasterMode mode);
};

/// Binary P6, max value 255, header "P6\n<w> <h>\n255\n"; bit-exact for a
/// given grid and palette.
std::vector<std::uint8_t> encode_ppm(const Raster& raster, const Palette& palette);

/// Lines `row,col,code` after a header line.
std::string encode_csv(const Raster& raster);

/// The spec plus a class-code histogram and the bucket rule.
std::string encode_json_meta(const RasterSpec& spec, const Raster& raster);

std::string raster_mode_name(RasterMode mode);

}  // namespace fibmap
