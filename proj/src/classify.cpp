#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "bakerlab/dynamics.hpp"
#include "bakerlab/error.hpp"

namespace bakerlab {

std::string_view to_string(BakerVerdict v) noexcept {
  switch (v) {
    case BakerVerdict::doubly_parabolic_evidence: return "doubly-parabolic-evidence";
    case BakerVerdict::not_doubly_parabolic_evidence: return "not-doubly-parabolic-evidence";
    case BakerVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

std::vector<double> present(std::span<const std::optional<double>> xs) {
  std::vector<double> out;
  for (const auto& x : xs)
    if (x) out.push_back(*x);
  return out;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// Bounds along [a, b], or along a two-leg detour through a waypoint to
// either side when the straight segment leaves the domain.
std::optional<SegmentBounds> step_bounds(const DomainOracle& oracle, Complex a, Complex b,
                                         const StepDistanceOptions& options) {
  try {
    return segment_distance_bounds(oracle, a, b, options.quadrature_steps, options.probe);
  } catch (const Error& e) {
    if (e.code() != Errc::segment_exits_domain) return std::nullopt;
  }
  const Complex mid = 0.5 * (a + b);
  const Complex normal = (b - a) * Complex(0.0, 1.0);
  for (double t : std::array{0.5, -0.5, 1.0, -1.0}) {
    const Complex via = mid + t * normal;
    try {
      const auto first = segment_distance_bounds(oracle, a, via, options.quadrature_steps, options.probe);
      const auto second = segment_distance_bounds(oracle, via, b, options.quadrature_steps, options.probe);
      return SegmentBounds{first.upper + second.upper, first.lower_proxy + second.lower_proxy};
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

std::vector<Complex> checked_orbit(const EntireMap& map, Complex z0, const DomainOracle& oracle,
                                   int n) {
  if (n < 10) throw Error(Errc::invalid_argument, "need at least 10 orbit steps");
  switch (oracle.classify(z0)) {
    case Membership::outside:
      throw Error(Errc::query_outside_domain, "orbit seed is outside the domain");
    case Membership::unknown:
      throw Error(Errc::oracle_inconclusive, "oracle cannot decide the orbit seed");
    case Membership::inside:
      break;
  }
  return iterate(map, z0, n, std::numeric_limits<double>::infinity()).points;
}

StepDistanceSequence finish(std::vector<Complex> orbit, std::vector<std::optional<SegmentBounds>> bounds,
                            const StepDistanceOptions& options) {
  StepDistanceSequence out;
  out.orbit = std::move(orbit);
  for (const auto& b : bounds) {
    out.upper.push_back(b ? std::optional(b->upper) : std::nullopt);
    out.lower_proxy.push_back(b ? std::optional(b->lower_proxy) : std::nullopt);
  }
  out.verdict = step_distance_verdict(out.upper, out.lower_proxy, options);
  return out;
}

}  // namespace

BakerVerdict step_distance_verdict(std::span<const std::optional<double>> upper,
                                   std::span<const std::optional<double>> lower_proxy,
                                   const StepDistanceOptions& options) {
  const std::size_t m = upper.size();
  if (m < 4 || lower_proxy.size() != m) return BakerVerdict::inconclusive;
  const std::size_t q = m / 4;

  const auto head = present(upper.first(q));
  const auto tail = present(upper.last(q));
  const auto tail_lower = present(lower_proxy.last(q));
  // Any missing tail entry leaves the tail unverified.
  if (head.empty() || tail.size() != q) return BakerVerdict::inconclusive;

  const double tail_max = *std::max_element(tail.begin(), tail.end());
  if (tail_max < options.tail_threshold &&
      options.decrease_factor * median(tail) <= median(head))
    return BakerVerdict::doubly_parabolic_evidence;

  if (tail_lower.size() == q &&
      *std::min_element(tail_lower.begin(), tail_lower.end()) > options.lower_threshold)
    return BakerVerdict::not_doubly_parabolic_evidence;

  return BakerVerdict::inconclusive;
}

StepDistanceSequence step_distance_sequence_serial(const EntireMap& map, Complex z0,
                                                   const DomainOracle& oracle, int n,
                                                   const StepDistanceOptions& options) {
  auto orbit = checked_orbit(map, z0, oracle, n);
  std::vector<std::optional<SegmentBounds>> bounds;
  for (std::size_t k = 0; k + 1 < orbit.size(); ++k)
    bounds.push_back(step_bounds(oracle, orbit[k], orbit[k + 1], options));
  return finish(std::move(orbit), std::move(bounds), options);
}

StepDistanceSequence step_distance_sequence(const EntireMap& map, Complex z0,
                                            const DomainOracle& oracle, int n,
                                            const StepDistanceOptions& options) {
  auto orbit = checked_orbit(map, z0, oracle, n);
  const auto steps = static_cast<long>(orbit.size()) - 1;
  std::vector<std::optional<SegmentBounds>> bounds(static_cast<std::size_t>(std::max(0L, steps)));

  // step_bounds catches every library error, so nothing escapes the region.
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < steps; ++k) bounds[k] = step_bounds(oracle, orbit[k], orbit[k + 1], options);

  return finish(std::move(orbit), std::move(bounds), options);
}

}  // namespace bakerlab
