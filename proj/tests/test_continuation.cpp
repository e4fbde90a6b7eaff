#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bakerlab/continuation.hpp"
#include "bakerlab/error.hpp"

using namespace bakerlab;

namespace {

PathTrace synthetic(const std::vector<Complex>& rhos) {
  PathTrace t;
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    t.params.emplace_back(static_cast<double>(i), 0.0);
    t.locations.emplace_back(0.0, 0.0);
    t.multipliers.push_back(rhos[i]);
    t.horocyclic_stats.push_back(horocyclic_statistic(rhos[i]));
  }
  return t;
}

}  // namespace

TEST_SUITE("continuation") {

TEST_CASE("linear grid") {
  const auto g = linear_grid(0.5, 0.01, 50);
  REQUIRE(g.size() == 50);
  CHECK(g.front() == Complex(0.5, 0.0));
  CHECK(g.back() == Complex(0.01, 0.0));
  CHECK(linear_grid(2.0, 3.0, 1).size() == 1);
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0), Error);
}

TEST_CASE("scaled family to 0.9") {
  const auto grid = linear_grid(0.5, 0.9, 41);
  const PathTrace t = track_fixed_point(scaled_family(), grid, 1.0);
  REQUIRE(t.size() == 41);
  CHECK_FALSE(t.escaped_at.has_value());
  CHECK(std::abs(t.locations.back() - 9.0011094566596361013) < 1e-10);
  CHECK(std::abs(t.multipliers.back() - 0.89988905433403638987) < 1e-10);
  for (const Complex rho : t.multipliers) CHECK(std::abs(rho) < 1.0);
}

TEST_CASE("scaled family escapes near 0.99") {
  const auto grid = linear_grid(0.5, 0.999, 100);
  const PathTrace t = track_fixed_point(scaled_family(), grid, 1.0);
  REQUIRE(t.escaped_at.has_value());
  const double alpha = t.params[*t.escaped_at].real();
  CHECK(alpha > 0.985);
  CHECK(alpha < 0.999);
  CHECK(std::abs(t.locations.back()) > 100.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double a = t.params[i].real();
    if (a >= 0.9) CHECK(std::abs(t.locations[i] - a / (1.0 - a)) <= 1.0);
  }
  CHECK(is_horocyclic(t, 10.0) == HorocyclicDiagnostic::horocyclic_evidence);
}

TEST_CASE("fatou family follows the closed form") {
  const auto grid = linear_grid(0.5, 0.01, 50);
  const Complex guess = -std::log(0.5) - Complex(0.0, std::numbers::pi);
  const PathTrace t = track_fixed_point(fatou_family(), grid, guess);
  REQUIRE(t.size() == 50);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double lambda = t.params[i].real();
    CHECK(std::abs(t.locations[i] - (-std::log(lambda) - Complex(0.0, std::numbers::pi))) < 1e-9);
    CHECK(std::abs(std::abs(t.multipliers[i] - 1.0) - lambda) < 1e-9);
  }
}

TEST_CASE("branch loss carries the partial trace") {
  // a guess far from any fixed point of Fatou(1) at the first grid point
  const auto grid = linear_grid(1.0, 2.0, 5);
  ParamFamily family = fatou_family();
  try {
    track_fixed_point(family, grid, Complex(5.0, 0.0), {100.0, 1e-12, 8, 3, 4});
    FAIL("expected branch_lost");
  } catch (const PartialResultError<PathTrace>& e) {
    CHECK(e.code() == Errc::branch_lost);
    CHECK(e.partial().size() == 0);
  }
}

TEST_CASE("fold is reported") {
  // Rescaled at w = -1 - W0(1/e), Fatou(1) fixes w with multiplier 1; damping
  // by eps = lambda gives multiplier 1 - lambda, which reaches 1 at lambda = 0.
  const double w = -1.2784645427610737951;
  const EntireMap h = rescale_to_fix(EntireMap::fatou(1.0), RayCurve(w - 1.0, 1.0), 1.0);
  ParamFamily family{[h, w](Complex lambda) {
                       return lambda.real() > 0.0 ? damp(h, w, lambda.real()) : h;
                     },
                     nullptr, "damped"};
  const std::vector<Complex> grid{0.2, 0.1, 0.0};
  try {
    track_fixed_point(family, grid, w);
    FAIL("expected fold_suspected");
  } catch (const PartialResultError<PathTrace>& e) {
    CHECK(e.code() == Errc::fold_suspected);
    REQUIRE(e.partial().size() == 2);
    CHECK(std::abs(e.partial().multipliers[1] - 0.9) < 1e-8);
  }
}

TEST_CASE("horocyclic statistic and diagnostic") {
  CHECK(horocyclic_statistic(0.5) == 2.0);
  CHECK(horocyclic_statistic(std::polar(1.0, 0.4)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(horocyclic_statistic(1.0), Error);

  std::vector<Complex> radial;
  for (int i = 1; i <= 40; ++i) radial.emplace_back(1.0 - 1.0 / (i + 1.0), 0.0);
  CHECK(is_horocyclic(synthetic(radial), 10.0) == HorocyclicDiagnostic::horocyclic_evidence);

  std::vector<Complex> constant(20, Complex(0.5, 0.0));
  CHECK(is_horocyclic(synthetic(constant), 10.0) == HorocyclicDiagnostic::inconclusive);

  std::vector<Complex> tangential;
  for (int i = 1; i <= 40; ++i) tangential.push_back(std::polar(1.0, 1.0 / i));
  CHECK(is_horocyclic(synthetic(tangential), 10.0) == HorocyclicDiagnostic::tangential_evidence);

  CHECK(is_horocyclic(PathTrace{}, 10.0) == HorocyclicDiagnostic::inconclusive);
}

TEST_CASE("multiplier identity on the fatou family") {
  const ParamFamily family = fatou_family();
  for (double lambda : {0.1, 0.05, 0.01}) {
    const Complex closed = -std::log(lambda) - Complex(0.0, std::numbers::pi);
    const FixedPointRecord fp = find_fixed_point(family(lambda), closed);
    // dz/dlambda = -1 / lambda, partial / (1 - rho) = 1 / (-lambda)
    CHECK(std::abs(family.partial(lambda, fp.location) / (1.0 - fp.multiplier) + 1.0 / lambda) < 1e-9 / lambda);
    CHECK(multiplier_identity_residual(family, lambda, fp, 1e-5) < (lambda < 0.05 ? 1e-5 : 1e-6));
  }
}

TEST_CASE("multiplier identity on the scaled family") {
  const ParamFamily family = scaled_family();
  const FixedPointRecord fp = find_fixed_point(family(0.8), 4.0);
  CHECK(multiplier_identity_residual(family, 0.8, fp, identity_step(0.8)) < 1e-6);
  // difference-quotient partial agrees with the closed form
  ParamFamily numeric = family;
  numeric.param_partial = nullptr;
  CHECK(std::abs(numeric.partial(0.8, fp.location) - family.partial(0.8, fp.location)) < 1e-8);
}

TEST_CASE("identity check infeasible near multiplier 1") {
  const ParamFamily family = fatou_family();
  FixedPointRecord fp = find_fixed_point(family(0.1), 2.3 - Complex(0.0, std::numbers::pi));
  fp.multiplier = 1.0 + 1e-7;
  try {
    multiplier_identity_residual(family, 0.1, fp, 1e-5);
    FAIL("expected identity_check_infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::identity_check_infeasible);
  }
}

TEST_CASE("bounded partial") {
  const auto lambdas = linear_grid(0.5, 0.01, 10);
  const std::vector<Complex> zs{0.0, Complex(1.0, 2.0), Complex(-3.0, 0.5)};
  CHECK(bounded_partial_check(fatou_family(), zs, lambdas) == 1.0);
  CHECK(bounded_partial_check(constant_family(EntireMap::fatou(1.0)), zs, lambdas) == 0.0);
  CHECK_THROWS_AS(bounded_partial_check(fatou_family(), {}, lambdas), Error);

  // the scaled family's partial is f(z), which grows with the sample box
  const std::vector<Complex> small{1.0, 2.0};
  const std::vector<Complex> large{1.0, 2.0, 50.0};
  CHECK(bounded_partial_check(scaled_family(), large, lambdas) > bounded_partial_check(scaled_family(), small, lambdas));
  CHECK(bounded_partial_check(scaled_family(), large, lambdas) > 50.0);
}

}
