#include "bakerlab/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "bakerlab/error.hpp"

namespace bakerlab {

std::string_view to_string(PixelClass c) noexcept {
  switch (c) {
    case PixelClass::baker_right_escape: return "baker-right-escape";
    case PixelClass::bounded_unknown: return "bounded/unknown";
    case PixelClass::generic_escape: return "generic-escape";
  }
  return "bounded/unknown";
}

std::array<std::size_t, 3> RenderResult::counts() const {
  std::array<std::size_t, 3> out{};
  for (PixelClass c : classes) ++out[static_cast<std::size_t>(c)];
  return out;
}

Complex pixel_point(const RenderSpec& spec, int i, int j) noexcept {
  const Window& w = spec.window;
  const double x = w.x_min + (i + 0.5) * (w.x_max - w.x_min) / spec.width;
  const double y = w.y_max - (j + 0.5) * (w.y_max - w.y_min) / spec.height;
  return {x, y};
}

PixelClass pixel_class(OrbitFate fate) noexcept {
  switch (fate) {
    case OrbitFate::right_escape:
      return PixelClass::baker_right_escape;
    case OrbitFate::left_escape:
    case OrbitFate::generic_escape:
    case OrbitFate::overflow:
      return PixelClass::generic_escape;
    default:
      return PixelClass::bounded_unknown;
  }
}

namespace {

void validate(const RenderSpec& spec) {
  const Window& w = spec.window;
  if (spec.width < 1 || spec.height < 1)
    throw Error(Errc::invalid_argument, "pixel counts must be at least 1");
  if (!(w.x_max >= w.x_min) || !(w.y_max >= w.y_min) || !std::isfinite(w.x_max - w.x_min) ||
      !std::isfinite(w.y_max - w.y_min))
    throw Error(Errc::invalid_argument, "window bounds must be finite and ordered");
  if (spec.rule.budget < 1 || spec.rule.budget > 65535)
    throw Error(Errc::invalid_argument, "iteration budget must be in [1, 65535]");
}

RenderResult allocate(const RenderSpec& spec) {
  RenderResult out;
  out.width = spec.width;
  out.height = spec.height;
  const auto n = static_cast<std::size_t>(spec.width) * static_cast<std::size_t>(spec.height);
  out.classes.resize(n);
  out.iterations.resize(n);
  return out;
}

inline void shade_row(const RenderSpec& spec, RenderResult& out, int j) {
  for (int i = 0; i < spec.width; ++i) {
    const auto c = classify_orbit(spec.map, pixel_point(spec, i, j), spec.rule);
    const auto idx = static_cast<std::size_t>(j) * spec.width + i;
    out.classes[idx] = pixel_class(c.fate);
    out.iterations[idx] = static_cast<std::uint16_t>(c.iterations);
  }
}

}  // namespace

RenderResult render(const RenderSpec& spec) {
  validate(spec);
  RenderResult out = allocate(spec);
#pragma omp parallel for schedule(dynamic, 1)
  for (int j = 0; j < spec.height; ++j) shade_row(spec, out, j);
  return out;
}

RenderResult render_serial(const RenderSpec& spec) {
  validate(spec);
  RenderResult out = allocate(spec);
  for (int j = 0; j < spec.height; ++j) shade_row(spec, out, j);
  return out;
}

std::uint8_t pixel_intensity(PixelClass c, int iterations, int budget) noexcept {
  const double speed = 1.0 - static_cast<double>(std::min(iterations, budget)) / budget;
  switch (c) {
    case PixelClass::baker_right_escape:
      return static_cast<std::uint8_t>(128 + static_cast<int>(127.0 * speed));
    case PixelClass::generic_escape:
      return static_cast<std::uint8_t>(1 + static_cast<int>(126.0 * speed));
    case PixelClass::bounded_unknown:
      return 0;
  }
  return 0;
}

std::vector<std::uint8_t> encode_pgm(const RenderResult& result, int budget) {
  const std::string header =
      "P5\n" + std::to_string(result.width) + " " + std::to_string(result.height) + "\n255\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  bytes.reserve(header.size() + result.classes.size());
  for (std::size_t k = 0; k < result.classes.size(); ++k)
    bytes.push_back(pixel_intensity(result.classes[k], result.iterations[k], budget));
  return bytes;
}

void write_pgm(const std::filesystem::path& path, const RenderResult& result, int budget) {
  const auto bytes = encode_pgm(result, budget);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace bakerlab
