#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "bakerlab/dynamics.hpp"
#include "bakerlab/error.hpp"

namespace bakerlab {

namespace {

void require_attracting(const FixedPointRecord& fp) {
  const double m = std::abs(fp.multiplier);
  if (!(m > 0.0 && m < 1.0))
    throw Error(Errc::koenigs_requires_attracting,
                "|multiplier| = " + std::to_string(m) + " is not in (0, 1)");
}

// Orbit of z followed as a displacement u_k = f^k(z) - z*, with
// rho^{-k} u_k and rho^{-k} (f^k)'(z) accumulated alongside.
struct KoenigsState {
  Complex u;
  Complex inv_rho_pow = 1.0;
  Complex deriv = 1.0;
  int depth = 0;

  Complex value() const { return u * inv_rho_pow; }
  Complex derivative() const { return deriv * inv_rho_pow; }
};

void advance(const EntireMap& map, const FixedPointRecord& fp, KoenigsState& st, int target,
             bool track_derivative) {
  const Complex inv_rho = 1.0 / fp.multiplier;
  while (st.depth < target) {
    if (track_derivative) st.deriv *= map.derivative(fp.location + st.u);
    st.u = map.increment(fp.location, st.u);
    st.inv_rho_pow *= inv_rho;
    ++st.depth;
    if (!is_finite(st.u) || std::abs(st.u) > 1e6 * (1.0 + std::abs(fp.location)))
      throw Error(Errc::not_in_linearizable_basin, "orbit leaves the neighbourhood of z*");
  }
}

// Largest depth before rho^N drops into the subnormal range.
int depth_cap(const FixedPointRecord& fp, int max_n) {
  const double log_rho = std::log(std::abs(fp.multiplier));
  const double allowed = -600.0 / log_rho;
  return static_cast<int>(std::min<double>(max_n, allowed));
}

}  // namespace

KoenigsValue koenigs_fixed_depth(const EntireMap& map, const FixedPointRecord& fp, Complex z,
                                 int n) {
  require_attracting(fp);
  KoenigsState st{z - fp.location};
  advance(map, fp, st, n, true);
  return {st.value(), st.derivative()};
}

Complex koenigs(const EntireMap& map, const FixedPointRecord& fp, Complex z,
                const KoenigsOptions& options) {
  require_attracting(fp);
  if (z == fp.location) return 0.0;

  const int cap = depth_cap(fp, options.max_n);
  KoenigsState st{z - fp.location};
  int n = std::min(options.initial_n, cap);
  advance(map, fp, st, n, false);
  Complex prev = st.value();

  while (2 * n <= cap) {
    n *= 2;
    advance(map, fp, st, n, false);
    const Complex cur = st.value();
    if (std::abs(cur - prev) <= options.rel_tol * std::abs(cur)) {
      if (std::abs(st.u) > options.basin_tol * (1.0 + std::abs(fp.location)))
        throw Error(Errc::not_in_linearizable_basin, "orbit has not settled on the fixed point");
      return cur;
    }
    prev = cur;
  }
  throw Error(Errc::not_in_linearizable_basin,
              "Koenigs estimates did not stabilize by depth " + std::to_string(n));
}

double distance_to_polyline(std::span<const Complex> curve, Complex p) {
  if (curve.empty()) return std::numeric_limits<double>::infinity();
  double best = std::abs(p - curve[0]);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const Complex a = curve[i - 1];
    const Complex ab = curve[i] - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? ((p - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::abs(p - (a + t * ab)));
  }
  return best;
}

std::vector<Complex> invariant_curve(const EntireMap& map, const FixedPointRecord& fp,
                                     Complex seed, int samples) {
  if (samples < 16) throw Error(Errc::invalid_argument, "need at least 16 curve samples");
  require_attracting(fp);

  std::vector<Complex> curve{seed};
  if (seed == fp.location) {
    curve.resize(static_cast<std::size_t>(samples), fp.location);
    return curve;
  }

  // Depth at which phi(seed) has converged; reused for every Newton solve.
  const int cap = depth_cap(fp, KoenigsOptions{}.max_n);
  int depth = KoenigsOptions{}.initial_n;
  Complex phi_seed = koenigs_fixed_depth(map, fp, seed, depth).value;
  for (;;) {
    if (2 * depth > cap)
      throw PartialResultError<std::vector<Complex>>(
          Errc::curve_tracing_stalled, "Koenigs value at the seed did not converge", curve);
    const Complex next = koenigs_fixed_depth(map, fp, seed, 2 * depth).value;
    depth *= 2;
    const bool settled = std::abs(next - phi_seed) <= 1e-10 * std::abs(next);
    phi_seed = next;
    if (settled) break;
  }

  // Geometric grid s_j = q^j, j = 1..samples-2, ending at 1e-8; then s = 0.
  const int interior = samples - 2;
  const double q = std::pow(1e-8, 1.0 / interior);
  double s = 1.0;
  for (int j = 1; j <= interior; ++j) {
    s *= q;
    const Complex target = s * phi_seed;
    Complex z = curve.back();
    auto eval_at = [&](Complex p) -> std::optional<KoenigsValue> {
      try {
        return koenigs_fixed_depth(map, fp, p, depth);
      } catch (const Error&) {
        return std::nullopt;
      }
    };
    auto kv = eval_at(z);
    double miss = kv ? std::abs(kv->value - target) : std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int it = 0; it < 60 && kv; ++it) {
      if (miss <= 1e-12 * (1.0 + std::abs(target))) {
        converged = true;
        break;
      }
      if (kv->derivative == 0.0) break;
      const Complex step = (target - kv->value) / kv->derivative;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) {
        converged = true;
        break;
      }
      // Halve the step until the miss shrinks.
      bool accepted = false;
      double lambda = 1.0;
      for (int h = 0; h <= 10 && !accepted; ++h, lambda *= 0.5) {
        const Complex cand = z + lambda * step;
        if (auto kc = eval_at(cand)) {
          const double mc = std::abs(kc->value - target);
          if (mc < miss) {
            z = cand;
            kv = kc;
            miss = mc;
            accepted = true;
          }
        }
      }
      if (!accepted) {
        // Rounding floor: accept a miss that is already negligible.
        converged = miss <= 1e-9 * (1.0 + std::abs(target));
        break;
      }
    }
    if (!converged)
      throw PartialResultError<std::vector<Complex>>(
          Errc::curve_tracing_stalled,
          "Newton failed at grid point " + std::to_string(j) + " (miss " + std::to_string(miss) + ")",
          curve);
    curve.push_back(z);
  }
  curve.push_back(fp.location);
  return curve;
}

}  // namespace bakerlab
