#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "bakerlab/oracle.hpp"

using namespace bakerlab;

TEST_SUITE("oracle") {

TEST_CASE("simple domains") {
  CHECK(unit_disc_oracle().classify(0.5) == Membership::inside);
  CHECK(unit_disc_oracle().classify(1.0) == Membership::outside);
  CHECK(right_half_plane_oracle().classify(Complex(1e-9, 5.0)) == Membership::inside);
  CHECK(right_half_plane_oracle().classify(Complex(0.0, 5.0)) == Membership::outside);
  const DomainOracle d = disc_oracle(Complex(2.0, 1.0), 0.5);
  CHECK(d.classify(Complex(2.4, 1.0)) == Membership::inside);
  CHECK(d.classify(Complex(2.6, 1.0)) == Membership::outside);
}

TEST_CASE("fatou orbits escape to the right") {
  const EntireMap f = EntireMap::fatou(1.0);
  const OrbitClass c = classify_orbit(f, 1.0, {});
  CHECK(c.fate == OrbitFate::right_escape);
  // x_k grows by about 1 per step: Re > 50 after roughly 50 steps
  CHECK(c.iterations >= 48);
  CHECK(c.iterations <= 60);
  CHECK(escape_oracle(f).classify(Complex(2.0, 1.0)) == Membership::inside);
}

TEST_CASE("left escape, overflow and stationary fates") {
  const EntireMap f = EntireMap::fatou(1.0);
  EscapeRule rule;
  CHECK(classify_orbit(f, -800.0, rule).fate == OrbitFate::overflow);
  // z = i pi is a repelling fixed point of Fatou(1): e^{-i pi} + i pi + 1 = i pi
  CHECK(classify_orbit(f, Complex(0.0, std::numbers::pi), rule).fate == OrbitFate::stationary);
  // on Im z = pi the exponential term is real and negative: -3 -> -22 -> about -3.6e9
  CHECK(classify_orbit(f, Complex(-3.0, std::numbers::pi), rule).fate == OrbitFate::left_escape);
  CHECK(membership_from_fate(OrbitFate::left_escape) == Membership::outside);
  CHECK(membership_from_fate(OrbitFate::right_escape) == Membership::inside);
  CHECK(membership_from_fate(OrbitFate::undecided) == Membership::unknown);
  CHECK(membership_from_fate(OrbitFate::oscillating) == Membership::outside);
}

TEST_CASE("attracting fixed point is stationary, not inside") {
  const EntireMap g = EntireMap::scaled(EntireMap::fatou(1.0), 0.5);
  const OrbitClass c = classify_orbit(g, 1.0, {});
  CHECK(c.fate == OrbitFate::stationary);
  CHECK(escape_oracle(g).classify(1.0) == Membership::outside);
}

TEST_CASE("budget exhaustion is undecided") {
  EscapeRule rule;
  rule.budget = 5;
  CHECK(classify_orbit(EntireMap::fatou(1.0), 1.0, rule).fate == OrbitFate::undecided);
}

TEST_CASE("distance cache is shared between copies and thread safe") {
  const DomainOracle a = unit_disc_oracle();
  const DomainOracle b = a;
  a.store_distance(0.25, 64, 1e-9, 0.75);
  REQUIRE(b.cached_distance(0.25, 64, 1e-9).has_value());
  CHECK(*b.cached_distance(0.25, 64, 1e-9) == 0.75);
  CHECK_FALSE(b.cached_distance(0.25, 32, 1e-9).has_value());

  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t)
    workers.emplace_back([&a, t] {
      for (int i = 0; i < 250; ++i) a.store_distance(Complex(t, i) * 1e-3, 8, 1e-6, 1.0);
    });
  for (auto& w : workers) w.join();
  CHECK(a.cache_size() == 1001);

  DomainOracle c = unit_disc_oracle();
  c.set_cache_enabled(false);
  c.store_distance(0.1, 64, 1e-9, 0.9);
  CHECK_FALSE(c.cached_distance(0.1, 64, 1e-9).has_value());
}

}
