#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "bakerlab/function_model.hpp"

namespace bakerlab {

enum class Membership { inside, outside, unknown };

std::string_view to_string(Membership m) noexcept;

/// Membership predicate for a plane domain, plus a boundary-distance cache.
///
/// Copies share the cache. Lookups take a shared lock and insertions an
/// exclusive one, so a single oracle may be queried from OpenMP workers.
/// The predicate itself must be pure.
class DomainOracle {
 public:
  using Predicate = std::function<Membership(Complex)>;

  explicit DomainOracle(Predicate predicate, std::string label = {});

  Membership classify(Complex z) const { return predicate_(z); }
  const std::string& label() const noexcept { return label_; }

  std::optional<double> cached_distance(Complex z, int rays, double tol) const;
  void store_distance(Complex z, int rays, double tol, double delta) const;

  void set_cache_enabled(bool enabled) noexcept { cache_enabled_ = enabled; }
  bool cache_enabled() const noexcept { return cache_enabled_; }
  std::size_t cache_size() const;

 private:
  struct Cache;

  Predicate predicate_;
  std::string label_;
  std::shared_ptr<Cache> cache_;
  bool cache_enabled_ = true;
};

DomainOracle unit_disc_oracle();
DomainOracle right_half_plane_oracle();
/// Open disc |z - centre| < radius.
DomainOracle disc_oracle(Complex centre, double radius);

/// Thresholds deciding where an orbit is heading.
///
/// Right escape: the orbit reaches Re > re_inside and its real part rose on
/// each of the last `window` steps. Left escape: Re drops below re_outside.
struct EscapeRule {
  double re_inside = 50.0;
  double re_outside = -50.0;
  int budget = 200;
  int window = 10;
  /// Generic escape radius; infinite disables the check.
  double escape_radius = std::numeric_limits<double>::infinity();
  /// |f(z) - z| below stationary_tol * (1 + |z|) marks a (numerically) fixed point.
  double stationary_tol = 1e-12;
  /// At budget exhaustion, this many real-part decreases within the last
  /// 2 * window steps count as oscillation.
  int oscillation_count = 5;
};

enum class OrbitFate {
  right_escape,
  left_escape,
  generic_escape,  // |z| > escape_radius
  overflow,
  stationary,
  oscillating,
  undecided,
};

struct OrbitClass {
  OrbitFate fate;
  int iterations;  // steps taken when the fate was decided
};

/// Follows the orbit of z0 until the rule decides its fate or the budget runs out.
OrbitClass classify_orbit(const EntireMap& map, Complex z0, const EscapeRule& rule) noexcept;

/// Maps fates to membership in the right-escaping Baker domain:
/// right escape is inside, undecided is unknown, everything else is outside.
Membership membership_from_fate(OrbitFate fate) noexcept;

/// Membership oracle for the invariant domain that absorbs orbits to the right.
DomainOracle escape_oracle(EntireMap map, EscapeRule rule = {});

}  // namespace bakerlab
