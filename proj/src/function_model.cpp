#include "bakerlab/function_model.hpp"

#include <cmath>
#include <sstream>

#include "bakerlab/error.hpp"

namespace bakerlab {

struct EntireMap::Node {
  Kind kind;
  Complex coeff;  // c, alpha, coeff, or (1 - eps)
  std::optional<EntireMap> base;
  Complex w{};
  double eps = 0.0;
};

Complex expm1(Complex u) noexcept {
  const double x = u.real();
  const double y = u.imag();
  const double half_sin = std::sin(0.5 * y);
  // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
  const double re = std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

EntireMap EntireMap::fatou(Complex c) {
  if (!is_finite(c)) throw Error(Errc::invalid_argument, "fatou parameter must be finite");
  return EntireMap(std::make_shared<const Node>(Node{Kind::fatou, c, std::nullopt}));
}

EntireMap EntireMap::scaled(EntireMap base, Complex alpha) {
  if (!is_finite(alpha)) throw Error(Errc::invalid_argument, "scale factor must be finite");
  return EntireMap(std::make_shared<const Node>(Node{Kind::scaled, alpha, std::move(base)}));
}

EntireMap EntireMap::affine_damped(EntireMap base, Complex w, double eps) {
  if (!is_finite(w) || !std::isfinite(eps))
    throw Error(Errc::invalid_argument, "damping anchor and strength must be finite");
  return EntireMap(std::make_shared<const Node>(
      Node{Kind::affine_damped, Complex(1.0 - eps, 0.0), std::move(base), w, eps}));
}

EntireMap EntireMap::scalar_multiple(EntireMap base, Complex coeff) {
  if (!is_finite(coeff)) throw Error(Errc::invalid_argument, "coefficient must be finite");
  return EntireMap(
      std::make_shared<const Node>(Node{Kind::scalar_multiple, coeff, std::move(base)}));
}

EntireMap::Kind EntireMap::kind() const noexcept { return node_->kind; }
Complex EntireMap::coefficient() const noexcept { return node_->coeff; }
const EntireMap* EntireMap::base() const noexcept {
  return node_->base ? &*node_->base : nullptr;
}
Complex EntireMap::anchor() const noexcept { return node_->w; }
double EntireMap::eps() const noexcept { return node_->eps; }

Complex EntireMap::eval_unchecked(Complex z) const noexcept {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::fatou:
      return std::exp(-z) + z + n.coeff;
    case Kind::scaled:
    case Kind::scalar_multiple:
      return n.coeff * n.base->eval_unchecked(z);
    case Kind::affine_damped:
      return n.coeff * (n.base->eval_unchecked(z) - n.w) + n.w;
  }
  return {};
}

Complex EntireMap::deriv_unchecked(Complex z) const noexcept {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::fatou:
      return 1.0 - std::exp(-z);
    case Kind::scaled:
    case Kind::scalar_multiple:
    case Kind::affine_damped:
      return n.coeff * n.base->deriv_unchecked(z);
  }
  return {};
}

namespace {

bool overflowed(Complex v) noexcept {
  return !is_finite(v) || std::abs(v) > kOverflowThreshold;
}

}  // namespace

std::optional<Complex> EntireMap::try_eval(Complex z) const noexcept {
  const Complex v = eval_unchecked(z);
  if (overflowed(v)) return std::nullopt;
  return v;
}

std::optional<Complex> EntireMap::try_derivative(Complex z) const noexcept {
  const Complex v = deriv_unchecked(z);
  if (overflowed(v)) return std::nullopt;
  return v;
}

Complex EntireMap::operator()(Complex z) const {
  if (auto v = try_eval(z)) return *v;
  throw Error(Errc::numeric_overflow, "evaluating " + describe());
}

Complex EntireMap::derivative(Complex z) const {
  if (auto v = try_derivative(z)) return *v;
  throw Error(Errc::numeric_overflow, "differentiating " + describe());
}

Complex EntireMap::increment(Complex z, Complex u) const noexcept {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::fatou:
      return std::exp(-z) * expm1(-u) + u;
    case Kind::scaled:
    case Kind::scalar_multiple:
    case Kind::affine_damped:
      return n.coeff * n.base->increment(z, u);
  }
  return {};
}

std::string EntireMap::describe() const {
  std::ostringstream os;
  os.precision(17);
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::fatou:
      os << "fatou(c=" << n.coeff << ")";
      break;
    case Kind::scaled:
      os << "scaled(alpha=" << n.coeff << ", " << n.base->describe() << ")";
      break;
    case Kind::scalar_multiple:
      os << "scalar_multiple(coeff=" << n.coeff << ", " << n.base->describe() << ")";
      break;
    case Kind::affine_damped:
      os << "affine_damped(w=" << n.w << ", eps=" << n.eps << ", " << n.base->describe() << ")";
      break;
  }
  return os.str();
}

RayCurve::RayCurve(Complex anchor, Complex direction) : anchor_(anchor) {
  const double len = std::abs(direction);
  if (!is_finite(anchor) || !std::isfinite(len) || len == 0.0)
    throw Error(Errc::invalid_argument, "ray needs a finite anchor and nonzero direction");
  direction_ = direction / len;
}

EntireMap rescale_to_fix(const EntireMap& base, const RayCurve& gamma, double s) {
  if (!(s > 0.0)) throw Error(Errc::invalid_argument, "ray parameter must be positive");
  const Complex z = gamma(s);
  const Complex fz = base(z);
  if (fz == Complex(0.0, 0.0))
    throw Error(Errc::division_by_zero_at_anchor, "base vanishes at gamma(s)");
  return EntireMap::scalar_multiple(base, z / fz);
}

EntireMap renormalize_at(const EntireMap& h, Complex w) {
  const Complex hw = h(w);
  if (hw == Complex(0.0, 0.0))
    throw Error(Errc::division_by_zero_at_anchor, "map vanishes at the renormalization point");
  const Complex factor = w / hw;
  if (h.kind() == EntireMap::Kind::scalar_multiple)
    return EntireMap::scalar_multiple(*h.base(), h.coefficient() * factor);
  return EntireMap::scalar_multiple(h, factor);
}

EntireMap damp(const EntireMap& h, Complex w, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw Error(Errc::invalid_argument, "damping strength must lie in (0, 1)");
  const double residual = std::abs(h(w) - w);
  if (!(residual < kDampAnchorTol * (1.0 + std::abs(w))))
    throw Error(Errc::anchor_not_fixed, "residual " + std::to_string(residual));
  return EntireMap::affine_damped(h, w, eps);
}

}  // namespace bakerlab
