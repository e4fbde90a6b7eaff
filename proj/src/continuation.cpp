#include "bakerlab/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bakerlab/error.hpp"

namespace bakerlab {

Complex ParamFamily::partial(Complex lambda, Complex z) const {
  if (param_partial) return param_partial(lambda, z);
  const double h = 1e-6 * (1.0 + std::abs(lambda));
  return (builder(lambda + h)(z) - builder(lambda - h)(z)) / (2.0 * h);
}

ParamFamily fatou_family() {
  return {[](Complex lambda) { return EntireMap::fatou(lambda); },
          [](Complex, Complex) { return Complex(1.0, 0.0); }, "fatou"};
}

ParamFamily scaled_family() {
  const EntireMap f1 = EntireMap::fatou(1.0);
  return {[f1](Complex alpha) { return EntireMap::scaled(f1, alpha); },
          [f1](Complex, Complex z) { return f1(z); }, "scaled"};
}

ParamFamily constant_family(EntireMap map) {
  return {[map](Complex) { return map; }, [](Complex, Complex) { return Complex(0.0, 0.0); },
          "constant"};
}

std::vector<Complex> linear_grid(double first, double last, int count) {
  if (count < 1) throw Error(Errc::invalid_argument, "grid needs at least one point");
  std::vector<Complex> grid;
  grid.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    grid.emplace_back(first, 0.0);
    return grid;
  }
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    grid.emplace_back(i == count - 1 ? last : first + t * (last - first), 0.0);
  }
  return grid;
}

double horocyclic_statistic(Complex rho) {
  if (rho == Complex(1.0, 0.0)) throw Error(Errc::statistic_undefined, "rho == 1");
  return (1.0 / (1.0 - rho)).real();
}

std::string_view to_string(HorocyclicDiagnostic d) noexcept {
  switch (d) {
    case HorocyclicDiagnostic::horocyclic_evidence: return "horocyclic-evidence";
    case HorocyclicDiagnostic::tangential_evidence: return "tangential-evidence";
    case HorocyclicDiagnostic::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

enum class StepFailure { none, newton, fold };

struct StepResult {
  std::optional<FixedPointRecord> record;
  StepFailure failure = StepFailure::none;
};

bool near_fold(const FixedPointRecord& rec) { return std::abs(rec.multiplier - 1.0) < kClassTol; }

StepResult correct(const ParamFamily& family, Complex lambda, Complex predicted,
                   const TrackOptions& options) {
  try {
    auto rec = find_fixed_point(family(lambda), predicted, options.newton_tol, options.newton_max_iter);
    if (near_fold(rec)) return {rec, StepFailure::fold};
    return {rec, StepFailure::none};
  } catch (const Error&) {
    return {std::nullopt, StepFailure::newton};
  }
}

// Walks from (from_lambda, from_location) to to_lambda, subdividing on failure.
StepResult walk(const ParamFamily& family, Complex from_lambda, Complex from_location,
                Complex to_lambda, Complex predicted, int level, const TrackOptions& options) {
  StepResult direct = correct(family, to_lambda, predicted, options);
  if (direct.failure == StepFailure::none || level >= options.refine_levels) return direct;

  Complex lambda = from_lambda;
  Complex location = from_location;
  StepResult last;
  for (int k = 1; k <= options.refine_factor; ++k) {
    const Complex next = from_lambda + (to_lambda - from_lambda) * (static_cast<double>(k) / options.refine_factor);
    last = walk(family, lambda, location, next, location, level + 1, options);
    if (last.failure != StepFailure::none) return last;
    lambda = next;
    location = last.record->location;
  }
  return last;
}

}  // namespace

PathTrace track_fixed_point(const ParamFamily& family, std::span<const Complex> grid, Complex guess,
                            const TrackOptions& options) {
  if (grid.empty()) throw Error(Errc::invalid_argument, "empty parameter grid");

  PathTrace trace;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex lambda = grid[i];
    StepResult step;
    if (i == 0) {
      step = correct(family, lambda, guess, options);
    } else {
      Complex predicted = trace.locations.back();
      if (i >= 2) {
        const Complex dl = trace.params[i - 1] - trace.params[i - 2];
        if (dl != 0.0)
          predicted += (trace.locations[i - 1] - trace.locations[i - 2]) * ((lambda - trace.params[i - 1]) / dl);
      }
      step = walk(family, trace.params.back(), trace.locations.back(), lambda, predicted, 0, options);
    }

    if (step.failure == StepFailure::newton)
      throw PartialResultError<PathTrace>(Errc::branch_lost,
                                          "Newton failed at grid index " + std::to_string(i), trace);
    if (step.failure == StepFailure::fold)
      throw PartialResultError<PathTrace>(Errc::fold_suspected,
                                          "multiplier reached 1 at grid index " + std::to_string(i), trace);

    const FixedPointRecord& rec = *step.record;
    trace.params.push_back(lambda);
    trace.locations.push_back(rec.location);
    trace.multipliers.push_back(rec.multiplier);
    trace.horocyclic_stats.push_back(rec.multiplier == 1.0 ? std::numeric_limits<double>::quiet_NaN()
                                                           : horocyclic_statistic(rec.multiplier));
    if (std::abs(rec.location) > options.escape_radius) {
      trace.escaped_at = i;
      break;
    }
  }
  return trace;
}

HorocyclicDiagnostic is_horocyclic(const PathTrace& trace, double threshold) {
  const std::size_t n = trace.size();
  if (n == 0) return HorocyclicDiagnostic::inconclusive;
  const std::size_t q = std::max<std::size_t>(1, n / 4);
  const std::size_t start = n - q;

  bool increasing = true;
  bool bounded = true;
  bool approaching = true;
  for (std::size_t i = start; i < n; ++i) {
    const double stat = trace.horocyclic_stats[i];
    const double gap = std::abs(1.0 - std::abs(trace.multipliers[i]));
    bounded = bounded && std::abs(stat) <= threshold;
    if (i > start) {
      increasing = increasing && stat > trace.horocyclic_stats[i - 1];
      approaching = approaching && gap <= std::abs(1.0 - std::abs(trace.multipliers[i - 1])) + 1e-12;
    }
  }
  approaching = approaching && std::abs(1.0 - std::abs(trace.multipliers[n - 1])) < 0.05;

  if (increasing && trace.horocyclic_stats[n - 1] > threshold) return HorocyclicDiagnostic::horocyclic_evidence;
  if (bounded && approaching) return HorocyclicDiagnostic::tangential_evidence;
  return HorocyclicDiagnostic::inconclusive;
}

double multiplier_identity_residual(const ParamFamily& family, Complex lambda,
                                    const FixedPointRecord& fp, double h) {
  if (!(h > 0.0)) throw Error(Errc::invalid_argument, "finite-difference step must be positive");
  if (!(std::abs(fp.multiplier - 1.0) > 10.0 * h))
    throw Error(Errc::identity_check_infeasible, "multiplier too close to 1 for this step");

  Complex plus;
  Complex minus;
  try {
    plus = find_fixed_point(family(lambda + h), fp.location).location;
    minus = find_fixed_point(family(lambda - h), fp.location).location;
  } catch (const Error& e) {
    throw Error(Errc::identity_check_infeasible, e.what());
  }
  const Complex lhs = (plus - minus) / (2.0 * h);
  const Complex rhs = family.partial(lambda, fp.location) / (1.0 - fp.multiplier);
  return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

double bounded_partial_check(const ParamFamily& family, std::span<const Complex> sample_z,
                             std::span<const Complex> sample_lambda) {
  if (sample_z.empty() || sample_lambda.empty())
    throw Error(Errc::invalid_argument, "partial check needs samples");
  double worst = 0.0;
  for (const Complex lambda : sample_lambda)
    for (const Complex z : sample_z) worst = std::max(worst, std::abs(family.partial(lambda, z)));
  return worst;
}

}  // namespace bakerlab
