#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bakerlab/dynamics.hpp"

namespace bakerlab {

/// A one-parameter family lambda -> f_lambda of entire maps.
struct ParamFamily {
  std::function<EntireMap(Complex)> builder;
  /// Closed-form d f_lambda / d lambda at z, when known.
  std::function<Complex(Complex lambda, Complex z)> param_partial;
  std::string label;

  EntireMap operator()(Complex lambda) const { return builder(lambda); }

  /// d f_lambda / d lambda at z: closed form if available, else a central
  /// difference in lambda with step 1e-6 (1 + |lambda|).
  Complex partial(Complex lambda, Complex z) const;
};

/// lambda -> fatou(lambda). The parameter partial is identically 1.
ParamFamily fatou_family();
/// alpha -> scaled(fatou(1), alpha). The parameter partial is fatou(1)(z).
ParamFamily scaled_family();
/// lambda -> map for every lambda.
ParamFamily constant_family(EntireMap map);

struct PathTrace {
  std::vector<Complex> params;
  std::vector<Complex> locations;
  std::vector<Complex> multipliers;
  /// Re(1 / (1 - rho)); NaN where rho == 1.
  std::vector<double> horocyclic_stats;
  std::optional<std::size_t> escaped_at;

  std::size_t size() const noexcept { return params.size(); }
};

struct TrackOptions {
  double escape_radius = 100.0;
  double newton_tol = 1e-12;
  int newton_max_iter = 100;
  int refine_levels = 3;
  int refine_factor = 4;
};

/// Predictor-corrector continuation of a fixed point along `grid`.
///
/// Newton corrects from the previous location (secant predictor after two
/// points). A failed correction or a multiplier within kClassTol of 1 is
/// retried through refine_factor substeps, up to refine_levels deep. Stops
/// after the first location beyond the escape radius and marks escaped_at.
/// Throws PartialResultError<PathTrace> with branch_lost or fold_suspected.
PathTrace track_fixed_point(const ParamFamily& family, std::span<const Complex> grid, Complex guess,
                            const TrackOptions& options = {});

/// Re(1 / (1 - rho)). Throws statistic_undefined at rho == 1.
double horocyclic_statistic(Complex rho);

enum class HorocyclicDiagnostic { horocyclic_evidence, tangential_evidence, inconclusive };

std::string_view to_string(HorocyclicDiagnostic d) noexcept;

/// Horocyclic evidence when the statistic increases over the last quartile
/// and ends above `threshold`; tangential evidence when |rho| closes in on 1
/// over that quartile while the statistic stays at or below `threshold`.
HorocyclicDiagnostic is_horocyclic(const PathTrace& trace, double threshold);

/// |dz/dlambda - partial / (1 - rho)| / (1 + |partial / (1 - rho)|), with the
/// left side from central differences of re-solved fixed points at lambda +- h.
double multiplier_identity_residual(const ParamFamily& family, Complex lambda,
                                    const FixedPointRecord& fp, double h);

/// Default finite-difference step, 1e-5 (1 + |lambda|).
inline double identity_step(Complex lambda) { return 1e-5 * (1.0 + std::abs(lambda)); }

/// max |d f_lambda / d lambda| over the product grid of samples.
double bounded_partial_check(const ParamFamily& family, std::span<const Complex> sample_z,
                             std::span<const Complex> sample_lambda);

/// `count` evenly spaced real parameters from first to last inclusive.
std::vector<Complex> linear_grid(double first, double last, int count);

}  // namespace bakerlab
