#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bakerlab/error.hpp"
#include "bakerlab/hyperbolic.hpp"
#include "test_support.hpp"

using namespace bakerlab;

namespace {

Complex random_disc_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(0.999 * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

}  // namespace

TEST_SUITE("hyperbolic") {

TEST_CASE("disc density and distance closed forms") {
  CHECK(disc_density(0.0) == 2.0);
  CHECK(std::abs(disc_density(0.5) - 8.0 / 3.0) < 1e-15);
  CHECK(std::abs(disc_distance(0.0, 0.5) - std::log(3.0)) < 1e-15);
  CHECK(disc_distance(0.3, 0.3) == 0.0);
  CHECK_THROWS_AS(disc_density(1.0), Error);
  CHECK_THROWS_AS(disc_distance(0.0, Complex(0.6, 0.8)), Error);
}

TEST_CASE("distance equals the integral of the density along a diameter") {
  for (double r : {0.1, 0.5, 0.9, 0.99}) {
    const double quad = testing::simpson([](double x) { return disc_density(x); }, 0.0, r, 20000);
    CHECK(std::abs(disc_distance(0.0, r) - quad) < 1e-9 * (1.0 + quad));
  }
}

TEST_CASE("distance is a Mobius invariant metric") {
  std::mt19937_64 rng(testing::kSeed);
  for (int i = 0; i < 500; ++i) {
    const Complex a = random_disc_point(rng);
    const Complex z = random_disc_point(rng);
    const Complex w = random_disc_point(rng);
    const Complex v = random_disc_point(rng);
    const double d = disc_distance(z, w);
    CHECK(std::abs(d - disc_distance(w, z)) <= 1e-12 * (1.0 + d));
    CHECK(disc_distance(z, v) <= disc_distance(z, w) + disc_distance(w, v) + 1e-9);
    // automorphism z -> (z - a) / (1 - conj(a) z)
    auto m = [a](Complex p) { return (p - a) / (1.0 - std::conj(a) * p); };
    const Complex mz = m(z);
    const Complex mw = m(w);
    if (std::abs(mz) < 0.999 && std::abs(mw) < 0.999)
      CHECK(std::abs(disc_distance(mz, mw) - d) <= 1e-7 * (1.0 + d));
  }
}

TEST_CASE("harnack inequality on the disc") {
  std::mt19937_64 rng(testing::kSeed + 1);
  for (int i = 0; i < 1000; ++i) {
    const Complex z = random_disc_point(rng);
    const Complex w = random_disc_point(rng);
    const double d = disc_distance(z, w);
    const double ratio = disc_density(z) / disc_density(w);
    CHECK(ratio <= std::exp(2.0 * d) * (1.0 + 1e-12));
    CHECK(ratio >= std::exp(-2.0 * d) * (1.0 - 1e-12));
  }
}

TEST_CASE("euclidean distance bounded by hyperbolic distance and boundary distance") {
  std::mt19937_64 rng(testing::kSeed + 2);
  for (int i = 0; i < 1000; ++i) {
    const Complex z = random_disc_point(rng);
    const Complex w = random_disc_point(rng);
    const double d = disc_distance(z, w);
    CHECK(std::abs(z - w) <= 2.0 * d * std::exp(2.0 * d) * (1.0 - std::abs(z)) * (1.0 + 1e-12));
  }
}

TEST_CASE("koebe band on the disc") {
  std::mt19937_64 rng(testing::kSeed + 3);
  for (int i = 0; i < 1000; ++i) {
    const Complex z = random_disc_point(rng);
    const double delta = 1.0 - std::abs(z);
    const DensityBand band = density_band(delta);
    CHECK(band.contains(disc_density(z)));
    CHECK(band.lower == doctest::Approx(0.5 / delta));
    CHECK(band.upper == doctest::Approx(2.0 / delta));
  }
  CHECK_THROWS_AS(density_band(0.0), Error);
  CHECK_THROWS_AS(density_band(-1.0), Error);
}

TEST_CASE("ray-cast boundary distance on simple domains") {
  const DomainOracle disc = unit_disc_oracle();
  CHECK(std::abs(boundary_distance(disc, 0.0, 64, 1e-9) - 1.0) < 1e-8);
  CHECK(std::abs(boundary_distance(disc, 0.5, 64, 1e-9) - 0.5) < 1e-8);
  // with 64 rays the nearest direction is within pi/64 of the true normal
  const Complex z = std::polar(0.7, 0.3);
  const double est = boundary_distance(disc, z, 64, 1e-9);
  CHECK(est >= 0.3 - 1e-8);
  CHECK(est <= 0.3 / std::cos(std::numbers::pi / 64) + 1e-3);

  const DomainOracle half = right_half_plane_oracle();
  CHECK(std::abs(boundary_distance(half, Complex(3.0, 7.0), 64, 1e-9) - 3.0) < 1e-8);
}

TEST_CASE("boundary distance errors") {
  const DomainOracle disc = unit_disc_oracle();
  try {
    boundary_distance(disc, 2.0, 64, 1e-9);
    FAIL("expected query_outside_domain");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::query_outside_domain);
  }
  const DomainOracle undecided([](Complex) { return Membership::unknown; }, "undecided");
  try {
    boundary_distance(undecided, 0.0, 64, 1e-9);
    FAIL("expected oracle_inconclusive");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::oracle_inconclusive);
  }
  CHECK_THROWS_AS(boundary_distance(disc, 0.0, 4, 1e-9), Error);
  CHECK_THROWS_AS(boundary_distance(disc, 0.0, 64, 0.0), Error);
}

TEST_CASE("boundary distance terminates far from the origin") {
  // bisection must stop once radii fall below the spacing of doubles near z
  const DomainOracle half = right_half_plane_oracle();
  const double d = boundary_distance(half, Complex(1e12, 0.0), 32, 1e-6);
  CHECK(std::abs(d - 1e12) < 1e-3 * 1e12);
}

TEST_CASE("segment bounds bracket the exact disc distance") {
  const DomainOracle disc = unit_disc_oracle();
  BoundaryProbe probe;
  probe.rays = 128;
  for (const auto& [z, w] : {std::pair<Complex, Complex>{0.0, 0.5}, {Complex(-0.3, 0.2), Complex(0.1, -0.4)},
                             {0.6, 0.8}}) {
    const SegmentBounds b = segment_distance_bounds(disc, z, w, 256, probe);
    const double exact = disc_distance(z, w);
    CHECK(b.upper >= exact * (1.0 - 1e-6));
    CHECK(b.lower_proxy <= exact);
    CHECK(b.upper == doctest::Approx(4.0 * b.lower_proxy));
  }
  CHECK(segment_distance_bounds(disc, 0.2, 0.2).upper == 0.0);

  const double half = segment_distance_upper(right_half_plane_oracle(), 1.0, 2.0, 512, probe);
  CHECK(std::abs(half - 2.0 * std::log(2.0)) < 1e-5);
}

TEST_CASE("segment leaving the domain") {
  const DomainOracle annulus([](Complex z) {
    const double r = std::abs(z);
    return (r > 0.5 && r < 2.0) ? Membership::inside : Membership::outside;
  });
  try {
    segment_distance_upper(annulus, -1.0, 1.0, 64, {});
    FAIL("expected segment_exits_domain");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::segment_exits_domain);
  }
}

}
