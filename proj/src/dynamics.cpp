#include <cmath>
#include <string>

#include "bakerlab/dynamics.hpp"
#include "bakerlab/error.hpp"

namespace bakerlab {

std::string_view to_string(Stability s) noexcept {
  switch (s) {
    case Stability::attracting: return "attracting";
    case Stability::repelling: return "repelling";
    case Stability::indifferent: return "indifferent";
  }
  return "indifferent";
}

Stability classify_multiplier(Complex multiplier) noexcept {
  const double m = std::abs(multiplier);
  if (m < 1.0 - kClassTol) return Stability::attracting;
  if (m > 1.0 + kClassTol) return Stability::repelling;
  return Stability::indifferent;
}

OrbitTrace iterate(const EntireMap& map, Complex z0, int n, double escape_radius) {
  if (n < 1) throw Error(Errc::invalid_argument, "need at least one iteration");
  if (!(escape_radius > 0.0)) throw Error(Errc::invalid_argument, "escape radius must be positive");

  OrbitTrace trace;
  trace.points.reserve(static_cast<std::size_t>(n) + 1);
  trace.points.push_back(z0);
  if (std::abs(z0) > escape_radius) {
    trace.escaped = true;
    trace.escape_index = 0;
    return trace;
  }
  Complex z = z0;
  for (int i = 0; i < n; ++i) {
    const auto next = map.try_eval(z);
    if (!next) {
      trace.escaped = true;
      trace.overflow = true;
      return trace;
    }
    z = *next;
    trace.points.push_back(z);
    if (std::abs(z) > escape_radius) {
      trace.escaped = true;
      trace.escape_index = trace.points.size() - 1;
      return trace;
    }
  }
  return trace;
}

FixedPointRecord make_fixed_point_record(const EntireMap& map, Complex location) {
  const Complex multiplier = map.derivative(location);
  return {location, multiplier, classify_multiplier(multiplier), std::abs(map(location) - location),
          0};
}

FixedPointRecord find_fixed_point(const EntireMap& map, Complex guess, double tol, int max_iter) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");

  auto residual_at = [&](Complex z) -> std::optional<Complex> {
    if (auto fz = map.try_eval(z)) return *fz - z;
    return std::nullopt;
  };

  Complex z = guess;
  auto F = residual_at(z);
  if (!F) throw Error(Errc::no_fixed_point_found, "overflow at the initial guess");

  int degenerate = 0;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(*F) <= tol * (1.0 + std::abs(z))) {
      // Polish: keep taking Newton steps while they still reduce the residual.
      for (int extra = 0; extra < 3; ++extra) {
        const auto d = map.try_derivative(z);
        if (!d || *d == 1.0) break;
        const Complex cand = z - *F / (*d - 1.0);
        const auto Fc = residual_at(cand);
        if (!Fc || !(std::abs(*Fc) < std::abs(*F))) break;
        z = cand;
        F = Fc;
      }
      FixedPointRecord rec = make_fixed_point_record(map, z);
      rec.iterations = it;
      return rec;
    }

    const auto fprime = map.try_derivative(z);
    if (!fprime) throw Error(Errc::no_fixed_point_found, "derivative overflow during Newton");
    const Complex d = *fprime - 1.0;

    Complex step;
    if (std::abs(d) < 1e-14 * (1.0 + std::abs(*fprime))) {
      if (++degenerate >= 3)
        throw Error(Errc::degenerate_newton_step, "f'(z) - 1 vanishes near " + map.describe());
      // Nudge off the critical point of f(z) - z and retry.
      step = Complex(1e-6, 1e-6) * (1.0 + std::abs(z));
    } else {
      degenerate = 0;
      step = -*F / d;
    }

    // Halve the step until the residual decreases; fall back to the full step.
    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 20; ++halving, lambda *= 0.5) {
      const Complex cand = z + lambda * step;
      const auto Fc = residual_at(cand);
      if (Fc && std::abs(*Fc) < std::abs(*F)) {
        z = cand;
        F = Fc;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      const Complex cand = z + step;
      const auto Fc = residual_at(cand);
      if (!Fc) throw Error(Errc::no_fixed_point_found, "Newton iterate overflowed");
      z = cand;
      F = Fc;
    }
  }
  throw Error(Errc::no_fixed_point_found,
              "no convergence within " + std::to_string(max_iter) + " iterations");
}

Complex cycle_multiplier(const EntireMap& map, std::span<const Complex> orbit, double tol) {
  if (orbit.empty()) throw Error(Errc::invalid_argument, "empty cycle");
  Complex product = 1.0;
  const std::size_t p = orbit.size();
  for (std::size_t i = 0; i < p; ++i) {
    const Complex next = orbit[(i + 1) % p];
    if (std::abs(map(orbit[i]) - next) > tol * (1.0 + std::abs(next)))
      throw Error(Errc::not_a_cycle, "point " + std::to_string(i) + " does not map to its successor");
    product *= map.derivative(orbit[i]);
  }
  return product;
}

std::vector<double> derivative_along_curve(const EntireMap& map, const RayCurve& gamma,
                                           std::span<const double> s_values) {
  std::vector<double> out;
  out.reserve(s_values.size());
  for (double s : s_values) out.push_back(std::abs(map.derivative(gamma(s))));
  return out;
}

}  // namespace bakerlab
