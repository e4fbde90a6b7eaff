#include "bakerlab/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace bakerlab {

std::string_view to_string(Membership m) noexcept {
  switch (m) {
    case Membership::inside: return "inside";
    case Membership::outside: return "outside";
    case Membership::unknown: return "unknown";
  }
  return "unknown";
}

struct DomainOracle::Cache {
  using Key = std::tuple<double, double, int, double>;
  mutable std::shared_mutex mutex;
  std::map<Key, double> entries;
};

DomainOracle::DomainOracle(Predicate predicate, std::string label)
    : predicate_(std::move(predicate)),
      label_(std::move(label)),
      cache_(std::make_shared<Cache>()) {}

std::optional<double> DomainOracle::cached_distance(Complex z, int rays, double tol) const {
  if (!cache_enabled_) return std::nullopt;
  std::shared_lock lock(cache_->mutex);
  auto it = cache_->entries.find({z.real(), z.imag(), rays, tol});
  if (it == cache_->entries.end()) return std::nullopt;
  return it->second;
}

void DomainOracle::store_distance(Complex z, int rays, double tol, double delta) const {
  if (!cache_enabled_) return;
  std::unique_lock lock(cache_->mutex);
  cache_->entries.emplace(Cache::Key{z.real(), z.imag(), rays, tol}, delta);
}

std::size_t DomainOracle::cache_size() const {
  std::shared_lock lock(cache_->mutex);
  return cache_->entries.size();
}

DomainOracle unit_disc_oracle() { return disc_oracle({0.0, 0.0}, 1.0); }

DomainOracle disc_oracle(Complex centre, double radius) {
  return DomainOracle(
      [centre, radius](Complex z) {
        return std::abs(z - centre) < radius ? Membership::inside : Membership::outside;
      },
      "disc");
}

DomainOracle right_half_plane_oracle() {
  return DomainOracle(
      [](Complex z) { return z.real() > 0.0 ? Membership::inside : Membership::outside; },
      "right-half-plane");
}

OrbitClass classify_orbit(const EntireMap& map, Complex z0, const EscapeRule& rule) noexcept {
  // Ring of recent "real part decreased" flags for the oscillation test.
  constexpr int kMaxHistory = 64;
  std::array<bool, kMaxHistory> fell{};
  const int history = std::min(kMaxHistory, 2 * rule.window);

  Complex z = z0;
  int rising = 0;
  for (int n = 1; n <= rule.budget; ++n) {
    const auto next = map.try_eval(z);
    if (!next) return {OrbitFate::overflow, n};
    if (std::abs(*next - z) <= rule.stationary_tol * (1.0 + std::abs(z)))
      return {OrbitFate::stationary, n};

    const bool up = next->real() > z.real();
    rising = up ? rising + 1 : 0;
    fell[n % history] = next->real() < z.real();
    z = *next;

    if (z.real() > rule.re_inside && rising >= rule.window) return {OrbitFate::right_escape, n};
    if (z.real() < rule.re_outside) return {OrbitFate::left_escape, n};
    if (std::abs(z) > rule.escape_radius) return {OrbitFate::generic_escape, n};
  }

  int decreases = 0;
  for (int i = 0; i < std::min(history, rule.budget); ++i) decreases += fell[i] ? 1 : 0;
  if (decreases >= rule.oscillation_count) return {OrbitFate::oscillating, rule.budget};
  return {OrbitFate::undecided, rule.budget};
}

Membership membership_from_fate(OrbitFate fate) noexcept {
  switch (fate) {
    case OrbitFate::right_escape: return Membership::inside;
    case OrbitFate::undecided: return Membership::unknown;
    default: return Membership::outside;
  }
}

DomainOracle escape_oracle(EntireMap map, EscapeRule rule) {
  return DomainOracle(
      [map = std::move(map), rule](Complex z) {
        return membership_from_fate(classify_orbit(map, z, rule).fate);
      },
      "escape");
}

}  // namespace bakerlab
