#include <cmath>
#include <limits>

#include "bakerlab/dynamics.hpp"
#include "bakerlab/error.hpp"

namespace bakerlab {

std::string_view to_string(StabilizeBranch b) noexcept {
  switch (b) {
    case StabilizeBranch::direct: return "direct";
    case StabilizeBranch::secondary: return "secondary";
    case StabilizeBranch::damped: return "damped";
  }
  return "direct";
}

namespace {

// |h(gamma(x))| - |gamma(x)|; overflow counts as +infinity.
double radial_gap(const EntireMap& h, const RayCurve& gamma, double x) {
  const Complex z = gamma(x);
  const auto hz = h.try_eval(z);
  if (!hz) return std::numeric_limits<double>::infinity();
  return std::abs(*hz) - std::abs(z);
}

// First x > s where the gap turns from positive to non-positive, refined by bisection.
double secondary_crossing(const EntireMap& h, const RayCurve& gamma, double s) {
  constexpr double kRatio = 1.01;
  const double x_max = 1e4 * s;
  double lo = s * (1.0 + 1e-3);
  double gap_lo = radial_gap(h, gamma, lo);
  double hi = lo;
  bool bracketed = false;
  while (hi < x_max) {
    const double next = hi * kRatio;
    const double gap = radial_gap(h, gamma, next);
    if (gap_lo > 0.0 && gap <= 0.0) {
      lo = hi;
      hi = next;
      bracketed = true;
      break;
    }
    hi = next;
    gap_lo = gap;
  }
  if (!bracketed)
    throw Error(Errc::no_secondary_fixed_point,
                "no sign change of |h(gamma(x))| - |gamma(x)| in [s, 1e4 s]");

  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (radial_gap(h, gamma, mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return std::abs(radial_gap(h, gamma, lo)) < std::abs(radial_gap(h, gamma, hi)) ? lo : hi;
}

StabilizedMap damp_at(const EntireMap& h, Complex w, double s, double ray_parameter) {
  if (!(s > 1.0))
    throw Error(Errc::invalid_argument, "damping with eps = s^-2 needs s > 1");
  const EntireMap damped = damp(h, w, 1.0 / (s * s));
  return {damped, make_fixed_point_record(damped, w), StabilizeBranch::damped, ray_parameter};
}

}  // namespace

StabilizedMap stabilize_along_curve(const EntireMap& base, const RayCurve& gamma, double s) {
  const EntireMap h = rescale_to_fix(base, gamma, s);
  const Complex anchor = gamma(s);
  const FixedPointRecord rec = make_fixed_point_record(h, anchor);

  switch (rec.stability) {
    case Stability::attracting:
      return {h, rec, StabilizeBranch::direct, s};
    case Stability::indifferent:
      return damp_at(h, anchor, s, s);
    case Stability::repelling:
      break;
  }

  const double x = secondary_crossing(h, gamma, s);
  const Complex w = gamma(x);
  const EntireMap renormalized = renormalize_at(h, w);
  const FixedPointRecord secondary = make_fixed_point_record(renormalized, w);
  switch (secondary.stability) {
    case Stability::attracting:
      return {renormalized, secondary, StabilizeBranch::secondary, x};
    case Stability::indifferent:
      return damp_at(renormalized, w, s, x);
    case Stability::repelling:
      break;
  }
  throw Error(Errc::secondary_not_attracting,
              "|multiplier| = " + std::to_string(std::abs(secondary.multiplier)) + " at x = " +
                  std::to_string(x));
}

}  // namespace bakerlab
