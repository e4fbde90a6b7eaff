#include "bakerlab/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "bakerlab/error.hpp"

namespace bakerlab {

double disc_density(Complex z) {
  const double r2 = std::norm(z);
  if (!(r2 < 1.0)) throw Error(Errc::outside_unit_disc, "density needs |z| < 1");
  return 2.0 / (1.0 - r2);
}

double disc_distance(Complex z, Complex w) {
  if (!(std::norm(z) < 1.0) || !(std::norm(w) < 1.0))
    throw Error(Errc::outside_unit_disc, "distance needs both points in the disc");
  const double ratio = std::abs(z - w) / std::abs(1.0 - std::conj(w) * z);
  return 2.0 * std::atanh(ratio);
}

DensityBand density_band(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw Error(Errc::invalid_boundary_distance, "delta must be positive and finite");
  return {0.5 / delta, 2.0 / delta};
}

namespace {

bool exits(const DomainOracle& oracle, Complex p) {
  return oracle.classify(p) != Membership::inside;
}

// First exit along z + r dir within (lo, hi], given lo inside and hi outside.
double bisect_exit(const DomainOracle& oracle, Complex z, Complex dir, double lo, double hi,
                   double tol) {
  // Radii below the spacing of doubles near z do not move the probe point.
  tol = std::max(tol, 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(z) + hi));
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (exits(oracle, z + mid * dir))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double boundary_distance(const DomainOracle& oracle, Complex z, const BoundaryProbe& probe) {
  if (probe.rays < 8) throw Error(Errc::invalid_argument, "need at least 8 rays");
  if (!(probe.tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  if (probe.scan_points < 2) throw Error(Errc::invalid_argument, "need at least 2 scan points");

  switch (oracle.classify(z)) {
    case Membership::outside:
      throw Error(Errc::query_outside_domain, "boundary distance queried outside the domain");
    case Membership::unknown:
      throw Error(Errc::oracle_inconclusive, "oracle cannot decide the query point");
    case Membership::inside:
      break;
  }
  if (auto hit = oracle.cached_distance(z, probe.rays, probe.tol)) return *hit;

  const double cap = probe.max_radius_factor * (1.0 + std::abs(z));
  double best = std::numeric_limits<double>::infinity();

  for (int k = 0; k < probe.rays; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / probe.rays;
    const Complex dir = std::polar(1.0, theta);

    double limit = best;
    if (!std::isfinite(limit)) {
      // No exit seen yet: grow geometrically to bracket one.
      double r = probe.tol;
      while (r <= cap && !exits(oracle, z + r * dir)) r *= 2.0;
      if (r > cap) continue;
      limit = r;
    }

    // Scan (0, limit) so thin excursions closer than the bracket are not skipped.
    double prev = 0.0;
    for (int j = 1; j <= probe.scan_points; ++j) {
      const double r = limit * j / probe.scan_points;
      if (exits(oracle, z + r * dir)) {
        best = std::min(best, bisect_exit(oracle, z, dir, prev, r, probe.tol));
        break;
      }
      prev = r;
    }
  }

  if (!std::isfinite(best)) best = cap;
  oracle.store_distance(z, probe.rays, probe.tol, best);
  return best;
}

double boundary_distance(const DomainOracle& oracle, Complex z, int rays, double tol) {
  BoundaryProbe probe;
  probe.rays = rays;
  probe.tol = tol;
  return boundary_distance(oracle, z, probe);
}

SegmentBounds segment_distance_bounds(const DomainOracle& oracle, Complex z, Complex w,
                                      int steps, const BoundaryProbe& probe) {
  if (steps < 1) throw Error(Errc::invalid_argument, "need at least one quadrature step");
  if (z == w) return {0.0, 0.0};

  std::vector<Complex> samples(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    samples[i] = z + (w - z) * (static_cast<double>(i) / steps);
    if (oracle.classify(samples[i]) != Membership::inside)
      throw Error(Errc::segment_exits_domain, "sample " + std::to_string(i) + " not inside");
  }

  double upper = 0.0;
  double lower = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double weight = (i == 0 || i == steps) ? 0.5 : 1.0;
    const double delta = boundary_distance(oracle, samples[i], probe);
    upper += weight * 2.0 / delta;
    lower += weight * 0.5 / delta;
  }
  const double h = std::abs(w - z) / steps;
  return {upper * h, lower * h};
}

}  // namespace bakerlab
