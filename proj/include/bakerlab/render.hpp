#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "bakerlab/oracle.hpp"

namespace bakerlab {

enum class PixelClass : std::uint8_t { baker_right_escape, bounded_unknown, generic_escape };

std::string_view to_string(PixelClass c) noexcept;

struct Window {
  double x_min;
  double x_max;
  double y_min;
  double y_max;
};

struct RenderSpec {
  EntireMap map = EntireMap::fatou(1.0);
  Window window{-2.0, 12.0, -6.0, 6.0};
  int width = 400;
  int height = 400;
  /// Right-escape thresholds and iteration budget; escape_radius drives generic escape.
  EscapeRule rule{50.0, -50.0, 200, 10, 1e6, 1e-12, 5};
};

struct RenderResult {
  int width = 0;
  int height = 0;
  std::vector<PixelClass> classes;  // row-major, row 0 at y_max
  std::vector<std::uint16_t> iterations;

  std::array<std::size_t, 3> counts() const;
};

/// Pixel centre of column i, row j.
Complex pixel_point(const RenderSpec& spec, int i, int j) noexcept;

PixelClass pixel_class(OrbitFate fate) noexcept;

/// Rows distributed over OpenMP threads; output is independent of thread count.
RenderResult render(const RenderSpec& spec);

/// Single-threaded reference for render().
RenderResult render_serial(const RenderSpec& spec);

/// Grey level: 0 for bounded/unknown, 1..127 for generic escape and
/// 128..255 for baker-right-escape, brighter for faster escape.
std::uint8_t pixel_intensity(PixelClass c, int iterations, int budget) noexcept;

/// Binary greymap: "P5\n<width> <height>\n255\n" followed by one byte per pixel.
std::vector<std::uint8_t> encode_pgm(const RenderResult& result, int budget);

/// Throws std::runtime_error when the file cannot be written.
void write_pgm(const std::filesystem::path& path, const RenderResult& result, int budget);

}  // namespace bakerlab
