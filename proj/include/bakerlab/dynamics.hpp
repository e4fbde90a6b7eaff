#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bakerlab/hyperbolic.hpp"

namespace bakerlab {

// ---------------------------------------------------------------------------
// Orbits and fixed points

struct OrbitTrace {
  std::vector<Complex> points;
  bool escaped = false;
  /// Index of the first point with |z| > R. Empty when not escaped, or when
  /// the orbit ended by overflow (the overflowing value is not stored).
  std::optional<std::size_t> escape_index;
  bool overflow = false;
};

/// z0, f(z0), ..., f^n(z0), truncated at the first point beyond R or at overflow.
OrbitTrace iterate(const EntireMap& map, Complex z0, int n, double escape_radius);

enum class Stability { attracting, repelling, indifferent };

std::string_view to_string(Stability s) noexcept;

/// Tolerance around |multiplier| = 1 for the indifferent class.
inline constexpr double kClassTol = 1e-9;

Stability classify_multiplier(Complex multiplier) noexcept;

struct FixedPointRecord {
  Complex location;
  Complex multiplier;
  Stability stability;
  double residual;  // |f(z) - z|
  int iterations;
};

/// Record for a point already known to be fixed (no solving).
FixedPointRecord make_fixed_point_record(const EntireMap& map, Complex location);

/// Damped Newton on f(z) - z. Success means |f(z) - z| <= tol * (1 + |z|).
FixedPointRecord find_fixed_point(const EntireMap& map, Complex guess, double tol = 1e-12,
                                  int max_iter = 100);

/// Product of f' over a p-cycle. Throws not_a_cycle when
/// |f(orbit[i]) - orbit[i+1 mod p]| > tol * (1 + |orbit[i+1 mod p]|) for some i.
Complex cycle_multiplier(const EntireMap& map, std::span<const Complex> orbit, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Linearizing coordinates

struct KoenigsOptions {
  int initial_n = 50;
  int max_n = 6400;
  double rel_tol = 1e-8;
  /// Basin check: the orbit must be within this of the fixed point after N steps.
  double basin_tol = 1e-8;
};

/// phi(z) ~ rho^{-N} (f^N(z) - z*), doubling N until successive estimates agree.
/// The orbit is followed as a displacement from z* so the subtraction is exact.
Complex koenigs(const EntireMap& map, const FixedPointRecord& fp, Complex z,
                const KoenigsOptions& options = {});

struct KoenigsValue {
  Complex value;
  Complex derivative;
};

/// phi_N and phi_N' at a fixed N (no adaptivity, no basin check).
KoenigsValue koenigs_fixed_depth(const EntireMap& map, const FixedPointRecord& fp, Complex z,
                                 int n);

/// Points on phi^{-1}([phi(seed), 0]) on a geometric grid of the segment
/// parameter, from seed (first) to the fixed point (last). Throws a
/// PartialResultError<std::vector<Complex>> with curve_tracing_stalled if
/// Newton fails at a grid point.
std::vector<Complex> invariant_curve(const EntireMap& map, const FixedPointRecord& fp,
                                     Complex seed, int samples = 64);

/// Euclidean distance from p to the polyline through `curve`.
double distance_to_polyline(std::span<const Complex> curve, Complex p);

// ---------------------------------------------------------------------------
// Baker-domain step distances

enum class BakerVerdict { doubly_parabolic_evidence, not_doubly_parabolic_evidence, inconclusive };

std::string_view to_string(BakerVerdict v) noexcept;

struct StepDistanceSequence {
  /// Upper bound on d_U(f^{k+1}(z0), f^k(z0)); empty when no estimate was possible.
  std::vector<std::optional<double>> upper;
  /// Quadrature of 1 / (2 delta) along the same path.
  std::vector<std::optional<double>> lower_proxy;
  std::vector<Complex> orbit;
  BakerVerdict verdict = BakerVerdict::inconclusive;
};

struct StepDistanceOptions {
  int quadrature_steps = 16;
  BoundaryProbe probe{32, 1e-6, 32, 1e6};
  double tail_threshold = 0.2;
  double decrease_factor = 2.0;
  double lower_threshold = 0.05;
};

/// Step-distance sequence for n orbit steps of z0, estimated in parallel
/// over the steps.
StepDistanceSequence step_distance_sequence(const EntireMap& map, Complex z0,
                                            const DomainOracle& oracle, int n,
                                            const StepDistanceOptions& options = {});

/// Same contract, one step at a time. Reference for the parallel kernel.
StepDistanceSequence step_distance_sequence_serial(const EntireMap& map, Complex z0,
                                                   const DomainOracle& oracle, int n,
                                                   const StepDistanceOptions& options = {});

/// Verdict rule applied to upper bounds and lower proxies (entries may be empty).
BakerVerdict step_distance_verdict(std::span<const std::optional<double>> upper,
                                   std::span<const std::optional<double>> lower_proxy,
                                   const StepDistanceOptions& options = {});

// ---------------------------------------------------------------------------
// Fixed points manufactured along a ray

/// |f'(gamma(s))| for each s.
std::vector<double> derivative_along_curve(const EntireMap& map, const RayCurve& gamma,
                                           std::span<const double> s_values);

enum class StabilizeBranch { direct, secondary, damped };

std::string_view to_string(StabilizeBranch b) noexcept;

struct StabilizedMap {
  EntireMap map;
  FixedPointRecord fixed_point;
  StabilizeBranch branch;
  /// Ray parameter of the returned fixed point.
  double ray_parameter;
};

/// Rescale `base` so gamma(s) is fixed. If that fixed point repels, look for
/// x > s with |h(gamma(x))| = |gamma(x)|, rescale there, and damp with
/// eps = s^-2 when the resulting multiplier sits on the unit circle.
StabilizedMap stabilize_along_curve(const EntireMap& base, const RayCurve& gamma, double s);

}  // namespace bakerlab
