#include "rarewalk/moments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rarewalk {

namespace {

void validate_nk(std::int64_t n, std::int64_t k) {
  if (n < 1) throw std::invalid_argument("moments require n >= 1");
  if (k < 1) throw std::invalid_argument("moments require k >= 1");
}

}  // namespace

Rational moment_weight(std::int64_t r, std::int64_t n,
                       const EventTable& table) {
  Rational w(0);
  for (std::int64_t j = 0; j + r < n; ++j)
    w += table.d1[j] * table.d2_gap[n - j - r];
  return w;
}

Rational expected_alpha_k_plus_exact(std::int64_t n, std::int64_t k,
                                     const EventTable* table,
                                     std::int64_t horizon_cap) {
  validate_nk(n, k);
  if (n > horizon_cap)
    throw std::invalid_argument(
        "exact moment refused: n = " + std::to_string(n) +
        " exceeds the exactness horizon " + std::to_string(horizon_cap) +
        "; use the floating route");
  if (k > n) return Rational(0);

  EventTable local;
  const bool needs_c2 = k >= 2 && n >= 2;
  const bool usable = table != nullptr && table->horizon >= n &&
                      (!needs_c2 || table->c2[1] != 0);
  if (!usable) {
    local = build_event_table(n, /*include_c2=*/needs_c2);
    table = &local;
  }
  if (k == 1) {
    Rational half = expectation_alpha_ladder(n, *table);
    mpq_div_2exp(half.get_mpq_t(), half.get_mpq_t(), 1);
    return half;
  }

  // conv[r] = (k-1)-fold convolution of t -> P(C2(t)) at r, support r >= k-1.
  std::vector<Rational> conv(table->c2.begin(), table->c2.begin() + n);
  for (std::int64_t fold = 2; fold < k; ++fold) {
    std::vector<Rational> next(n);
    for (std::int64_t r = fold; r < n; ++r) {
      Rational acc(0);
      for (std::int64_t s = fold - 1; s < r; ++s)
        acc += conv[s] * table->c2[r - s];
      next[r] = acc;
    }
    conv.swap(next);
  }

  Rational total(0);
  for (std::int64_t r = k - 1; r < n; ++r) {
    if (conv[r] == 0) continue;
    total += moment_weight(r, n, *table) * conv[r];
  }
  return total;
}

Rational expected_alpha_k_exact(std::int64_t n, std::int64_t k,
                                const EventTable* table,
                                std::int64_t horizon_cap) {
  Rational plus = expected_alpha_k_plus_exact(n, k, table, horizon_cap);
  mpq_mul_2exp(plus.get_mpq_t(), plus.get_mpq_t(), 1);
  return plus;
}

double expected_alpha_k_plus_approx(std::int64_t n, std::int64_t k) {
  validate_nk(n, k);
  if (k > n) return 0.0;

  std::vector<double> c2(n, 0.0), d1(n, 0.0), d2(n + 1, 0.0);
  for (std::int64_t t = 1; t < n; ++t) c2[t] = prob_c2_approx(t);
  for (std::int64_t j = 0; j < n; ++j) d1[j] = prob_d1_approx(j);
  for (std::int64_t g = 1; g <= n; ++g) d2[g] = prob_d2_approx(g);

  if (k == 1) {
    double sum = 0.0;
    for (std::int64_t j = 0; j < n; ++j) sum += d1[j] * d2[n - j];
    return sum;
  }
  std::vector<double> conv(c2);
  for (std::int64_t fold = 2; fold < k; ++fold) {
    std::vector<double> next(n, 0.0);
    for (std::int64_t r = fold; r < n; ++r) {
      double acc = 0.0;
      for (std::int64_t s = fold - 1; s < r; ++s) acc += conv[s] * c2[r - s];
      next[r] = acc;
    }
    conv.swap(next);
  }
  double total = 0.0;
  for (std::int64_t r = k - 1; r < n; ++r) {
    if (conv[r] == 0.0) continue;
    double w = 0.0;
    for (std::int64_t j = 0; j + r < n; ++j) w += d1[j] * d2[n - j - r];
    total += w * conv[r];
  }
  return total;
}

double expected_alpha_k_approx(std::int64_t n, std::int64_t k) {
  return 2.0 * expected_alpha_k_plus_approx(n, k);
}

GrowthReport growth_band_report(const std::vector<std::int64_t>& n_list,
                                 double a, double epsilon) {
  if (!(a > 0)) throw std::invalid_argument("growth report requires a > 0");
  if (!(epsilon > 0 && epsilon < 0.5))
    throw std::invalid_argument("growth report requires 0 < epsilon < 1/2");
  GrowthReport report;
  report.a = a;
  report.epsilon = epsilon;
  report.band_low = 0.5 - epsilon;
  report.band_high = 0.5 + epsilon;
  for (std::int64_t n : n_list) {
    if (n < 2) throw std::invalid_argument("growth report requires n >= 2");
    const double ln_n = std::log(static_cast<double>(n));
    GrowthRow row;
    row.n = n;
    row.k = std::max<std::int64_t>(1, std::llround(a * ln_n));
    row.e_alpha_k = expected_alpha_k_approx(n, row.k);
    row.lower_bound = std::pow(report.band_low * ln_n, row.k);
    row.upper_bound = std::pow(report.band_high * ln_n, row.k);
    row.normalized_ratio =
        std::pow(row.e_alpha_k, 1.0 / static_cast<double>(row.k)) / ln_n;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace rarewalk
