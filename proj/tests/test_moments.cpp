#include "rarewalk/moments.hpp"

#include <cmath>

#include "doctest.h"
#include "rarewalk/enumerate.hpp"

using namespace rarewalk;

TEST_CASE("one-sided moment values at tiny n") {
  CHECK(expected_alpha_k_plus_exact(3, 2) == Rational(3, 8));
  CHECK(expected_alpha_k_plus_exact(3, 1) == Rational(5, 8));
  CHECK(expected_alpha_k_plus_exact(2, 3) == Rational(0));
}

TEST_CASE("full moments at tiny n") {
  CHECK(expected_alpha_k_exact(3, 2) == Rational(3, 4));
  CHECK(expected_alpha_k_exact(3, 1) == Rational(5, 4));
  CHECK(expected_alpha_k_exact(1, 1) == Rational(1));
}

TEST_CASE("convolution formula equals the exhaustive oracle") {
  for (int n = 1; n <= 12; ++n) {
    const EventTable table = build_event_table(n);
    for (int k = 1; k <= 4; ++k) {
      CHECK(expected_alpha_k_exact(n, k, &table) ==
            enum_moment_alpha_k(n, k));
      CHECK(expected_alpha_k_plus_exact(n, k, &table) ==
            enum_moment_alpha_plus_k(n, k));
    }
  }
}

TEST_CASE("k = 1 consistency with the recursion route") {
  for (int n = 1; n <= 64; ++n) {
    Rational doubled = expected_alpha_k_plus_exact(n, 1);
    mpq_mul_2exp(doubled.get_mpq_t(), doubled.get_mpq_t(), 1);
    CHECK(doubled == expectation_alpha_recursion(n));
  }
}

TEST_CASE("moments vanish for k > n and stay nonnegative") {
  CHECK(expected_alpha_k_exact(4, 5) == Rational(0));
  CHECK(expected_alpha_k_exact(7, 9) == Rational(0));
  for (int n = 2; n <= 10; n += 2)
    for (int k = 1; k <= n; ++k)
      CHECK(expected_alpha_k_exact(n, k) >= 0);
}

TEST_CASE("weight factor depends only on the gap structure") {
  const EventTable table = build_event_table(64, /*include_c2=*/false);
  for (std::int64_t r : {1, 3, 7})
    for (std::int64_t n : {10, 20, 41}) {
      CHECK(moment_weight(r, n, table) == moment_weight(r + 5, n + 5, table));
      CHECK(moment_weight(r, n, table) == moment_weight(r + 12, n + 12, table));
    }
}

TEST_CASE("floating route tracks the exact route") {
  for (std::int64_t n : {8, 24, 60}) {
    for (std::int64_t k : {1, 2, 3}) {
      const double exact = to_double(expected_alpha_k_exact(n, k));
      CHECK(expected_alpha_k_approx(n, k) ==
            doctest::Approx(exact).epsilon(1e-9));
    }
  }
}

TEST_CASE("exact mode refuses beyond the horizon") {
  CHECK_THROWS_AS(expected_alpha_k_exact(kMomentExactHorizon + 1, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(expected_alpha_k_exact(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(expected_alpha_k_exact(4, 0), std::invalid_argument);
}

TEST_CASE("growth report shape") {
  const GrowthReport report =
      growth_band_report({64, 256, 1024}, 0.5, 0.1);
  CHECK(report.band_low == doctest::Approx(0.4));
  CHECK(report.band_high == doctest::Approx(0.6));
  REQUIRE(report.rows.size() == 3);
  for (const auto& row : report.rows) {
    CHECK(row.k == std::llround(0.5 * std::log(double(row.n))));
    CHECK(row.e_alpha_k > 0);
    CHECK(row.lower_bound < row.upper_bound);
    CHECK(row.normalized_ratio ==
          doctest::Approx(std::pow(row.e_alpha_k, 1.0 / double(row.k)) /
                          std::log(double(row.n))));
  }
  // The small-n ratio sits above the band and drifts toward it as n grows.
  CHECK(report.rows.front().normalized_ratio >
        report.rows.back().normalized_ratio);
  CHECK_THROWS_AS(growth_band_report({10}, -1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(growth_band_report({10}, 0.5, 0.7), std::invalid_argument);
}
