#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "bakerlab/function_model.hpp"

namespace testing {

inline constexpr std::uint64_t kSeed = 20240611;

inline bool close(bakerlab::Complex a, bakerlab::Complex b, double tol) {
  return std::abs(a - b) <= tol;
}

// Central difference with a step scaled to |z|; independent of derivative().
inline bakerlab::Complex numeric_derivative(const bakerlab::EntireMap& f, bakerlab::Complex z) {
  const double h = 1e-5 * (1.0 + std::abs(z));
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

// Composite Simpson on [a, b] with an even panel count.
template <class F>
double simpson(F&& g, double a, double b, int panels = 2000) {
  const double h = (b - a) / panels;
  double sum = g(a) + g(b);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
  return sum * h / 3.0;
}

}  // namespace testing
