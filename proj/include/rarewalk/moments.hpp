#pragma once

#include <cstdint>
#include <vector>

#include "rarewalk/closed_form.hpp"
#include "rarewalk/rational.hpp"

namespace rarewalk {

enum class MomentMode { kExact, kFloating };

struct MomentRequest {
  std::int64_t n = 1;
  std::int64_t k = 1;
  MomentMode mode = MomentMode::kExact;
};

inline constexpr std::int64_t kMomentExactHorizon = 512;

/// E[binom(alpha_plus(n), k)] by the ladder/strip convolution:
///   sum_r W(r, n) * (k-1)-fold convolution of P(C2(.)) at r,
/// where W(r, n) = sum_j P(D1(j)) P(D2 gap n-j-r). k = 1 degenerates to the
/// one-sided ladder sum. Exact mode refuses n beyond the exactness horizon.
Rational expected_alpha_k_plus_exact(std::int64_t n, std::int64_t k,
                                     const EventTable* table = nullptr,
                                     std::int64_t horizon_cap =
                                         kMomentExactHorizon);

/// E[binom(alpha(n), k)] = 2 E[binom(alpha_plus(n), k)].
Rational expected_alpha_k_exact(std::int64_t n, std::int64_t k,
                                const EventTable* table = nullptr,
                                std::int64_t horizon_cap =
                                    kMomentExactHorizon);

double expected_alpha_k_plus_approx(std::int64_t n, std::int64_t k);
double expected_alpha_k_approx(std::int64_t n, std::int64_t k);

/// W(r, n) as above; exposed for the time-origin invariance check.
Rational moment_weight(std::int64_t r, std::int64_t n,
                       const EventTable& table);

struct GrowthRow {
  std::int64_t n = 0;
  std::int64_t k = 0;
  double e_alpha_k = 0;
  double lower_bound = 0;  // [(1/2 - eps) ln n]^k
  double upper_bound = 0;  // [(1/2 + eps) ln n]^k
  double normalized_ratio = 0;  // (E alpha_k)^(1/k) / ln n
};

struct GrowthReport {
  double a = 0;
  double epsilon = 0;
  double band_low = 0;   // 1/2 - eps
  double band_high = 0;  // 1/2 + eps
  std::vector<GrowthRow> rows;
};

/// For each n: k = round(a ln n), E[alpha_k(n)] in floating point, the two
/// bracket values, and the normalized ratio. Report only, no assertions;
/// natural logarithm throughout.
GrowthReport growth_band_report(const std::vector<std::int64_t>& n_list,
                                 double a, double epsilon);

}  // namespace rarewalk
