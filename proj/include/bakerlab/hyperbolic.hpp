#pragma once

// Hyperbolic metric of the unit disc (curvature -1, density 2 / (1 - |z|^2))
// and Koebe-type estimates for simply connected plane domains, where the
// density rho satisfies 1 / (2 delta) <= rho <= 2 / delta with delta the
// Euclidean distance to the boundary.

#include "bakerlab/oracle.hpp"

namespace bakerlab {

/// 2 / (1 - |z|^2). Throws outside_unit_disc for |z| >= 1.
double disc_density(Complex z);

/// Hyperbolic distance in the unit disc, 2 artanh |(z - w) / (1 - conj(w) z)|.
double disc_distance(Complex z, Complex w);

struct DensityBand {
  double lower;
  double upper;

  bool contains(double density) const noexcept { return lower <= density && density <= upper; }
};

/// (1 / (2 delta), 2 / delta). Throws invalid_boundary_distance for delta <= 0.
DensityBand density_band(double delta);

/// Knobs for ray-casting boundary distance estimates.
struct BoundaryProbe {
  int rays = 64;
  double tol = 1e-9;
  /// Linear scan resolution inside the current best radius.
  int scan_points = 32;
  /// Give up on a ray past max_radius_factor * (1 + |z|).
  double max_radius_factor = 1e6;
};

/// Minimum over equally spaced rays of the first exit distance, each exit
/// resolved by bisection to `tol`. Oracle "unknown" counts as an exit.
///
/// The result overestimates the true distance by at most the angular
/// sampling gap. Throws query_outside_domain when z is outside and
/// oracle_inconclusive when the oracle cannot decide z.
double boundary_distance(const DomainOracle& oracle, Complex z, const BoundaryProbe& probe = {});
double boundary_distance(const DomainOracle& oracle, Complex z, int rays, double tol);

/// Upper bound and lower proxy for the hyperbolic distance along a segment.
struct SegmentBounds {
  /// Trapezoidal quadrature of 2 / delta: an upper bound for d_U(z, w).
  double upper;
  /// Trapezoidal quadrature of 1 / (2 delta) along the same segment.
  double lower_proxy;
};

/// Throws segment_exits_domain if any of the steps + 1 samples is not inside.
SegmentBounds segment_distance_bounds(const DomainOracle& oracle, Complex z, Complex w,
                                      int steps = 64, const BoundaryProbe& probe = {});

inline double segment_distance_upper(const DomainOracle& oracle, Complex z, Complex w,
                                     int steps = 64, const BoundaryProbe& probe = {}) {
  return segment_distance_bounds(oracle, z, w, steps, probe).upper;
}

}  // namespace bakerlab
