#pragma once

// Entire maps used throughout the toolkit: the Fatou family
// z -> e^{-z} + z + c, complex rescalings of it, and the two operations
// used to manufacture attracting fixed points far out in a Baker domain
// (rescaling so a chosen point becomes fixed, and affine damping about a
// fixed point).

#include <complex>
#include <memory>
#include <optional>
#include <string>

namespace bakerlab {

using Complex = std::complex<double>;

/// Any evaluation whose modulus exceeds this is reported as overflow.
inline constexpr double kOverflowThreshold = 1e300;

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Complex e^u - 1 without cancellation for small |u|.
Complex expm1(Complex u) noexcept;

/// Immutable value handle to an entire map. Copies share structure.
class EntireMap {
 public:
  enum class Kind { fatou, scaled, affine_damped, scalar_multiple };

  /// z -> e^{-z} + z + c
  static EntireMap fatou(Complex c);
  /// z -> alpha * base(z)
  static EntireMap scaled(EntireMap base, Complex alpha);
  /// z -> (1 - eps) * (base(z) - w) + w
  static EntireMap affine_damped(EntireMap base, Complex w, double eps);
  /// z -> coeff * base(z)
  static EntireMap scalar_multiple(EntireMap base, Complex coeff);

  Kind kind() const noexcept;

  /// c for fatou, alpha for scaled, coeff for scalar_multiple, (1 - eps) for affine_damped.
  Complex coefficient() const noexcept;
  /// Inner map; nullptr for the fatou kind.
  const EntireMap* base() const noexcept;
  /// Damping centre (affine_damped only; zero otherwise).
  Complex anchor() const noexcept;
  /// Damping strength (affine_damped only; zero otherwise).
  double eps() const noexcept;

  /// f(z); throws Error(numeric_overflow) past kOverflowThreshold.
  Complex operator()(Complex z) const;
  /// f'(z) by the analytic chain rule; same overflow policy.
  Complex derivative(Complex z) const;

  /// f(z), or nullopt on overflow. For hot loops that treat overflow as escape.
  std::optional<Complex> try_eval(Complex z) const noexcept;
  std::optional<Complex> try_derivative(Complex z) const noexcept;

  /// f(z + u) - f(z), computed without cancellation when |u| is small.
  Complex increment(Complex z, Complex u) const noexcept;

  std::string describe() const;

 private:
  struct Node;
  explicit EntireMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  Complex eval_unchecked(Complex z) const noexcept;
  Complex deriv_unchecked(Complex z) const noexcept;

  std::shared_ptr<const Node> node_;
};

inline Complex eval(const EntireMap& map, Complex z) { return map(z); }
inline Complex deriv(const EntireMap& map, Complex z) { return map.derivative(z); }

/// gamma(s) = anchor + s * direction, s >= 0, with |direction| = 1.
class RayCurve {
 public:
  /// Normalizes `direction`; throws invalid_argument when it is zero or not finite.
  RayCurve(Complex anchor, Complex direction);

  static RayCurve positive_real_axis() { return RayCurve({0.0, 0.0}, {1.0, 0.0}); }

  Complex anchor() const noexcept { return anchor_; }
  Complex direction() const noexcept { return direction_; }
  Complex operator()(double s) const noexcept { return anchor_ + s * direction_; }

 private:
  Complex anchor_;
  Complex direction_;
};

/// Rescales `base` by gamma(s) / base(gamma(s)) so that gamma(s) becomes a fixed point.
EntireMap rescale_to_fix(const EntireMap& base, const RayCurve& gamma, double s);

/// Rescales `h` by w / h(w), so that w becomes a fixed point (|h~(w)| = |w|).
/// A scalar_multiple input is flattened: the factor folds into its coefficient.
EntireMap renormalize_at(const EntireMap& h, Complex w);

/// (1 - eps)(h(z) - w) + w. Requires 0 < eps < 1 and w fixed by h.
EntireMap damp(const EntireMap& h, Complex w, double eps);

/// Residual tolerance damp() accepts for its anchor: 1e-9 * (1 + |w|).
inline constexpr double kDampAnchorTol = 1e-9;

}  // namespace bakerlab
