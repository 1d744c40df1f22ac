#include "rarewalk/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rarewalk {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Row of Pascal's triangle: C(s, 0..s).
std::vector<BigInt> pascal_row(std::int64_t s) {
  std::vector<BigInt> row(static_cast<std::size_t>(s) + 1);
  row[0] = 1;
  for (std::int64_t k = 1; k <= s; ++k) {
    row[k] = row[k - 1];
    row[k] *= static_cast<unsigned long>(s - k + 1);
    mpz_divexact_ui(row[k].get_mpz_t(), row[k].get_mpz_t(),
                    static_cast<unsigned long>(k));
  }
  return row;
}

// C(s, (s+d)/2) from a precomputed row, 0 when out of range or odd parity.
const BigInt kZero = 0;
const BigInt& image_term(const std::vector<BigInt>& row, std::int64_t s,
                         std::int64_t d) {
  if (d > s || d < -s || ((s + d) & 1)) return kZero;
  return row[static_cast<std::size_t>((s + d) / 2)];
}

// Strip count for one endpoint: paths of length t-1 from 1 to m confined to
// [1, m], via reflection images in the barriers 0 and m+1.
BigInt strip_count_from_row(const std::vector<BigInt>& row, std::int64_t t,
                            std::int64_t m) {
  const std::int64_t s = t - 1;
  const std::int64_t h = m + 1;
  const std::int64_t d_direct = m - 1;  // b - a with a = 1, b = m
  const std::int64_t d_mirror = m + 1;  // b + a
  BigInt total = 0;
  const std::int64_t k_max = (s + std::max(d_direct, d_mirror)) / (2 * h) + 1;
  for (std::int64_t k = -k_max; k <= k_max; ++k) {
    total += image_term(row, s, d_direct + 2 * k * h);
    total -= image_term(row, s, d_mirror + 2 * k * h);
  }
  return total;
}

double log_binomial(std::int64_t n, std::int64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// C(s, (s+d)/2) / 2^s in doubles, 0 when out of range or odd parity.
double image_term_approx(std::int64_t s, std::int64_t d) {
  if (d > s || d < -s || ((s + d) & 1)) return 0.0;
  return std::exp(log_binomial(s, (s + d) / 2) -
                  static_cast<double>(s) * std::numbers::ln2);
}

}  // namespace

BigInt double_factorial(std::int64_t k) {
  require(k >= -1, "double_factorial requires k >= -1");
  BigInt result = 1;
  for (std::int64_t v = k; v > 1; v -= 2)
    result *= static_cast<unsigned long>(v);
  return result;
}

Rational prob_return_zero(std::int64_t n) {
  require(n >= 0, "prob_return_zero requires n >= 0");
  if (n % 2 != 0) return Rational(0);
  return dyadic(binomial(n, n / 2), static_cast<std::uint64_t>(n));
}

Rational prob_D1(std::int64_t t) {
  require(t >= 0, "prob_D1 requires t >= 0");
  return prob_return_zero(2 * ((t + 1) / 2));
}

Rational prob_D2(std::int64_t gap) {
  require(gap >= 1, "prob_D2 requires gap >= 1");
  const std::int64_t m = gap / 2;
  return dyadic(binomial(2 * m, m), static_cast<std::uint64_t>(2 * m + 1));
}

BigInt c2_strip_count_dp(std::int64_t t, std::int64_t m) {
  require(t >= 1 && m >= 1, "strip count requires t >= 1 and m >= 1");
  // First step is forced to 1; then walk inside [1, m].
  std::vector<BigInt> cur(static_cast<std::size_t>(m) + 2);
  cur[1] = 1;
  for (std::int64_t step = 2; step <= t; ++step) {
    std::vector<BigInt> next(cur.size());
    for (std::int64_t p = 1; p <= m; ++p) {
      if (p - 1 >= 1) next[p] += cur[p - 1];
      if (p + 1 <= m) next[p] += cur[p + 1];
    }
    cur.swap(next);
  }
  return cur[static_cast<std::size_t>(m)];
}

BigInt c2_strip_count_reflection(std::int64_t t, std::int64_t m) {
  require(t >= 1 && m >= 1, "strip count requires t >= 1 and m >= 1");
  return strip_count_from_row(pascal_row(t - 1), t, m);
}

Rational prob_C2(std::int64_t t) {
  require(t >= 1, "prob_C2 requires t >= 1");
  const auto row = pascal_row(t - 1);
  BigInt total = 0;
  for (std::int64_t m = 1; m <= t; ++m)
    total += strip_count_from_row(row, t, m);
  return dyadic(total, static_cast<std::uint64_t>(t));
}

Rational prob_C1(std::int64_t t) {
  require(t >= 1, "prob_C1 requires t >= 1");
  if (t == 1) return Rational(1);
  Rational half_c2 = prob_C2(t - 1);
  mpq_div_2exp(half_c2.get_mpq_t(), half_c2.get_mpq_t(), 1);
  return half_c2;
}

AlphaExpectationSeries::AlphaExpectationSeries() = default;

void AlphaExpectationSeries::advance() {
  const std::int64_t m = n_;
  if (m % 2 == 0) {
    // Bring C(m, m/2) forward from the previous even index.
    while (central_m_ < m) {
      central_m_ += 2;
      const unsigned long mm = static_cast<unsigned long>(central_m_);
      central_ *= (mm - 1) * mm;
      mpz_divexact_ui(central_.get_mpz_t(), central_.get_mpz_t(), mm / 2);
      mpz_divexact_ui(central_.get_mpz_t(), central_.get_mpz_t(), mm / 2);
    }
    // Increment 2 (m-1)!!/(m+2)!! in reduced form:
    // [C(m, m/2) - C(m, m/2 + 1)] / 2^m.
    BigInt above = central_;
    above *= static_cast<unsigned long>(m / 2);
    mpz_divexact_ui(above.get_mpz_t(), above.get_mpz_t(),
                    static_cast<unsigned long>(m / 2 + 1));
    BigInt diff = central_ - above;
    mpz_mul_2exp(num_.get_mpz_t(), num_.get_mpz_t(),
                 static_cast<mp_bitcnt_t>(m - exp2_));
    num_ += diff;
    exp2_ = m;
  }
  ++n_;
}

bool AlphaExpectationSeries::below_two() const {
  // num / 2^exp2 < 2  <=>  num < 2^(exp2+1)  <=>  bitlen(num) <= exp2 + 1.
  return mpz_sizeinbase(num_.get_mpz_t(), 2) <=
         static_cast<std::size_t>(exp2_) + 1;
}

Rational expectation_alpha_recursion(std::int64_t n) {
  require(n >= 1, "expectation_alpha_recursion requires n >= 1");
  AlphaExpectationSeries series;
  while (series.n() < n) series.advance();
  return series.value();
}

EventTable build_event_table(std::int64_t horizon, bool include_c2) {
  require(horizon >= 0, "event table horizon must be >= 0");
  EventTable table;
  table.horizon = horizon;
  table.d1.resize(horizon + 1);
  table.d2_gap.resize(horizon + 1);
  table.c2.resize(horizon + 1);

  // b_m = C(2m, m) / 4^m, advanced incrementally.
  BigInt central = 1;
  std::int64_t mc = 0;
  auto central_at = [&](std::int64_t m) -> const BigInt& {
    while (mc < m) {
      ++mc;
      central *= static_cast<unsigned long>(2 * mc - 1) *
                 static_cast<unsigned long>(2 * mc);
      mpz_divexact_ui(central.get_mpz_t(), central.get_mpz_t(),
                      static_cast<unsigned long>(mc));
      mpz_divexact_ui(central.get_mpz_t(), central.get_mpz_t(),
                      static_cast<unsigned long>(mc));
    }
    return central;
  };
  for (std::int64_t t = 0; t <= horizon; ++t) {
    const std::int64_t m1 = (t + 1) / 2;
    table.d1[t] = dyadic(central_at(m1), static_cast<std::uint64_t>(2 * m1));
  }
  central = 1;
  mc = 0;
  for (std::int64_t g = 1; g <= horizon; ++g) {
    const std::int64_t m2 = g / 2;
    table.d2_gap[g] =
        dyadic(central_at(m2), static_cast<std::uint64_t>(2 * m2 + 1));
  }
  if (include_c2)
    for (std::int64_t t = 1; t <= horizon; ++t) table.c2[t] = prob_C2(t);
  return table;
}

Rational expectation_alpha_ladder(std::int64_t n, const EventTable& table) {
  require(n >= 1, "expectation_alpha_ladder requires n >= 1");
  require(table.horizon >= n, "event table horizon too small for ladder sum");
  Rational sum(0);
  for (std::int64_t j = 0; j < n; ++j)
    sum += table.d1[j] * table.d2_gap[n - j];
  mpq_mul_2exp(sum.get_mpq_t(), sum.get_mpq_t(), 1);
  return sum;
}

Rational expectation_alpha_ladder(std::int64_t n) {
  require(n >= 1, "expectation_alpha_ladder requires n >= 1");
  return expectation_alpha_ladder(n, build_event_table(n, false));
}

double prob_return_zero_approx(std::int64_t n) {
  require(n >= 0, "prob_return_zero requires n >= 0");
  if (n % 2 != 0) return 0.0;
  if (n == 0) return 1.0;
  return std::exp(log_binomial(n, n / 2) -
                  static_cast<double>(n) * std::numbers::ln2);
}

double prob_d1_approx(std::int64_t t) {
  require(t >= 0, "prob_D1 requires t >= 0");
  return prob_return_zero_approx(2 * ((t + 1) / 2));
}

double prob_d2_approx(std::int64_t gap) {
  require(gap >= 1, "prob_D2 requires gap >= 1");
  return 0.5 * prob_return_zero_approx(2 * (gap / 2));
}

double prob_c2_approx(std::int64_t t) {
  require(t >= 1, "prob_C2 requires t >= 1");
  const std::int64_t s = t - 1;
  double total = 0.0;
  for (std::int64_t m = 1; m <= t; ++m) {
    const std::int64_t h = m + 1;
    const std::int64_t k_max = (s + m + 1) / (2 * h) + 1;
    double count = 0.0;
    for (std::int64_t k = -k_max; k <= k_max; ++k) {
      count += image_term_approx(s, (m - 1) + 2 * k * h);
      count -= image_term_approx(s, (m + 1) + 2 * k * h);
    }
    if (count > 0) total += count;
  }
  return 0.5 * total;  // image terms are already divided by 2^s = 2^(t-1)
}

double prob_c1_approx(std::int64_t t) {
  require(t >= 1, "prob_C1 requires t >= 1");
  if (t == 1) return 1.0;
  return 0.5 * prob_c2_approx(t - 1);
}

ConvergenceReport convergence_report(std::int64_t t_max,
                                     std::int64_t exact_horizon) {
  require(t_max >= 2, "convergence_report requires t_max >= 2");
  ConvergenceReport report;
  report.t_max = t_max;
  report.exact_horizon = exact_horizon;
  report.limit_sqrt_t_d1 = std::sqrt(2.0 / std::numbers::pi);
  report.limit_sqrt_t_d2 = 1.0 / std::sqrt(2.0 * std::numbers::pi);

  std::vector<std::int64_t> grid;
  for (std::int64_t t = 2; t <= std::min<std::int64_t>(16, t_max); ++t)
    grid.push_back(t);
  for (std::int64_t t = 32; t < t_max; t *= 2) grid.push_back(t);
  if (grid.empty() || grid.back() != t_max) grid.push_back(t_max);

  for (std::int64_t t : grid) {
    ConvergenceRow row;
    row.t = t;
    const bool exact = t <= exact_horizon;
    const double st = std::sqrt(static_cast<double>(t));
    row.t_c2 = static_cast<double>(t) *
               (exact ? to_double(prob_C2(t)) : prob_c2_approx(t));
    row.sqrt_t_d1 = st * (exact ? to_double(prob_D1(t)) : prob_d1_approx(t));
    row.sqrt_t_d2 = st * (exact ? to_double(prob_D2(t)) : prob_d2_approx(t));
    row.t_c1 = static_cast<double>(t) *
               (exact ? to_double(prob_C1(t)) : prob_c1_approx(t));
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace rarewalk
