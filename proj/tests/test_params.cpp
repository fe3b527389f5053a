#include <doctest.h>

#include <cmath>
#include <random>

#include "nlsv/errors.hpp"
#include "nlsv/params.hpp"

using nlsv::ProblemParams;

TEST_CASE("make_params: reference values") {
  const ProblemParams cubic3d = nlsv::make_params(3, 3.0);
  CHECK(cubic3d.s_c == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cubic3d.omega1 == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(cubic3d.omega2 == doctest::Approx(2.0).epsilon(1e-15));

  const ProblemParams septic1d = nlsv::make_params(1, 7.0);
  CHECK(septic1d.s_c == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(septic1d.omega1 == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(septic1d.omega2 == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("make_params: rejects the critical endpoints") {
  CHECK_THROWS_AS(nlsv::make_params(2, 3.0), nlsv::OutOfRange);  // p = 1 + 4/N exactly
  CHECK_THROWS_AS(nlsv::make_params(3, 5.0), nlsv::OutOfRange);  // energy-critical endpoint
  CHECK_THROWS_AS(nlsv::make_params(3, 2.0), nlsv::OutOfRange);
  CHECK_THROWS_AS(nlsv::make_params(0, 3.0), nlsv::OutOfRange);
  CHECK_THROWS_AS(nlsv::make_params(4, 3.0), nlsv::OutOfRange);
  CHECK_NOTHROW(nlsv::make_params(1, 100.0));  // N = 1, 2 have no upper endpoint
}

TEST_CASE("omega identity and s_c window across admissible samples") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    const double lower = 1.0 + 4.0 / dim;
    const double upper = (dim == 3) ? 1.0 + 4.0 / (dim - 2) : lower + 8.0;
    std::uniform_real_distribution<double> pick(lower + 1e-3, upper - 1e-3);
    const ProblemParams params = nlsv::make_params(dim, pick(rng));

    CHECK(std::abs(params.omega1 - params.omega2 - 1.0) <=
          8.0 * std::numeric_limits<double>::epsilon() * (std::abs(params.omega1) + 1.0));
    CHECK(params.s_c > 0.0);
    CHECK(params.s_c < 1.0);
    CHECK(params.omega1 / params.omega2 > 1.0);
  }
}

TEST_CASE("dichotomy polynomial peaks at lambda = 1 with value 1") {
  for (const auto& [dim, power] : {std::pair{1, 7.0}, {2, 5.0}, {3, 3.0}, {1, 5.5}, {3, 4.0}}) {
    const ProblemParams params = nlsv::make_params(dim, power);
    CHECK(nlsv::dichotomy_poly(1.0, params) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(nlsv::dichotomy_poly(1.0 - 1e-6, params) < 1.0);
    CHECK(nlsv::dichotomy_poly(1.0 + 1e-6, params) < 1.0);
  }
}

TEST_CASE("lambda_roots: closed-form cases at N(p-1) = 6") {
  const ProblemParams params = nlsv::make_params(1, 7.0);  // omega = (3, 2)

  SUBCASE("ratio 0 gives (0, 3/2)") {
    const auto [lo, hi] = nlsv::lambda_roots(0.0, params);
    CHECK(lo == 0.0);
    CHECK(hi == doctest::Approx(1.5).epsilon(1e-12));
  }

  SUBCASE("ratio 1/2 factors as (2l - 1)(2l^2 - 2l - 1)") {
    const auto [lo, hi] = nlsv::lambda_roots(0.5, params);
    CHECK(std::abs(lo - 0.5) < 1e-10);
    CHECK(std::abs(hi - 0.5 * (1.0 + std::sqrt(3.0))) < 1e-10);
    CHECK(std::abs(nlsv::dichotomy_poly(lo, params) - 0.5) < 1e-12);
    CHECK(std::abs(nlsv::dichotomy_poly(hi, params) - 0.5) < 1e-12);
  }

  SUBCASE("degenerate double root rejected") {
    CHECK_THROWS_AS(nlsv::lambda_roots(1.0, params), nlsv::RatioOutOfRange);
    CHECK_THROWS_AS(nlsv::lambda_roots(-0.1, params), nlsv::RatioOutOfRange);
  }
}

TEST_CASE("lambda root residuals across the admissible family") {
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    const double lower = 1.0 + 4.0 / dim;
    const double upper = (dim == 3) ? 5.0 : lower + 8.0;
    std::uniform_real_distribution<double> pick(lower + 0.05, upper - 0.05);
    const ProblemParams params = nlsv::make_params(dim, pick(rng));
    for (const double ratio : {0.0, 0.1, 0.5, 0.9, 0.999}) {
      const auto [lo, hi] = nlsv::lambda_roots(ratio, params);
      CHECK(lo >= 0.0);
      CHECK(lo < 1.0);
      CHECK(hi > 1.0);
      CHECK(std::abs(nlsv::dichotomy_poly(lo, params) - ratio) <= 1e-12);
      CHECK(std::abs(nlsv::dichotomy_poly(hi, params) - ratio) <= 1e-12);
    }
    // negative-energy branch: only the upper root exists
    const double plus = nlsv::lambda_plus_root(-3.0, params);
    CHECK(plus > 1.0);
    CHECK(std::abs(nlsv::dichotomy_poly(plus, params) + 3.0) <= 1e-11);
  }
}
