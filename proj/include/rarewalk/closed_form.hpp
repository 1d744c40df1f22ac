#pragma once

#include <cstdint>
#include <vector>

#include "rarewalk/rational.hpp"

namespace rarewalk {

/// k(k-2)(k-4)... down to 1 or 2, with (-1)!! = 0!! = 1. Requires k >= -1.
BigInt double_factorial(std::int64_t k);

/// P(S_n = 0): binom(n, n/2) / 2^n for even n, 0 for odd n.
Rational prob_return_zero(std::int64_t n);

/// P(D1(t)) = P(S_l <= S_t for all 0 <= l <= t) = P(S_{2m} = 0), m = ceil(t/2).
Rational prob_D1(std::int64_t t);

/// P(D2 over a window of length gap) = (1/2) P(S_{2m} = 0), m = floor(gap/2).
Rational prob_D2(std::int64_t gap);

/// P(C2(t)) = P(0 < S_l <= S_t for all 0 < l <= t), by strip counting.
Rational prob_C2(std::int64_t t);

/// P(C1(t)) = P(0 < S_l < S_t for all 0 < l < t); equals (1/2) P(C2(t-1))
/// for t >= 2 and 1 at t = 1 (empty interior condition).
Rational prob_C1(std::int64_t t);

/// Number of length-t paths from 0 staying in (0, m] at all times >= 1 and
/// ending at m. Reference dynamic program, O(t*m).
BigInt c2_strip_count_dp(std::int64_t t, std::int64_t m);

/// Same count via the alternating reflection-image sum over the barriers 0
/// and m+1. Production route; agrees exactly with the DP.
BigInt c2_strip_count_reflection(std::int64_t t, std::int64_t m);

/// Exact E[alpha(n)] advanced one horizon step at a time. The value only
/// changes when stepping past an even index; increments are held as dyadic
/// rationals so the sweep to n = 1e5 stays cheap.
class AlphaExpectationSeries {
 public:
  AlphaExpectationSeries();  // positioned at n = 1, value 1

  void advance();  // n -> n+1
  std::int64_t n() const { return n_; }
  Rational value() const { return dyadic(num_, exp2_); }

  /// value < 2, via a bit-length comparison (no big multiply).
  bool below_two() const;

  /// Raw dyadic representation: value = numerator / 2^log2_denominator.
  const BigInt& numerator() const { return num_; }
  std::int64_t log2_denominator() const { return exp2_; }

 private:
  std::int64_t n_ = 1;
  BigInt num_ = 1;
  std::int64_t exp2_ = 0;
  BigInt central_ = 1;  // C(m, m/2) for the last even m consumed
  std::int64_t central_m_ = 0;
};

/// E[alpha(n)] via the even-step increment recursion: E = 1 at n = 1, increment
/// 2 (m-1)!! / (m+2)!! when stepping past an even m.
Rational expectation_alpha_recursion(std::int64_t n);

/// Exact probabilities of the ladder-time events up to a horizon.
/// d1[0] = 1; d2_gap[0] is unused (gaps start at 1); c2[0] is unused.
struct EventTable {
  std::int64_t horizon = 0;
  std::vector<Rational> c2;
  std::vector<Rational> d1;
  std::vector<Rational> d2_gap;
};

EventTable build_event_table(std::int64_t horizon, bool include_c2 = true);

/// E[alpha(n)] via the independent ladder-time route:
/// 2 * sum_{j=0}^{n-1} P(D1(j)) P(D2 gap n-j).
Rational expectation_alpha_ladder(std::int64_t n);
Rational expectation_alpha_ladder(std::int64_t n, const EventTable& table);

// Log-space floating evaluation, for horizons where exact rationals are not
// worth the cost. The single-binomial evaluators carry lgamma-level relative
// error (target 1e-12); the alternating strip sums lose a little more to
// cancellation and are tested below 1e-9 against the exact route.
double prob_return_zero_approx(std::int64_t n);
double prob_d1_approx(std::int64_t t);
double prob_d2_approx(std::int64_t gap);
double prob_c2_approx(std::int64_t t);
double prob_c1_approx(std::int64_t t);

inline constexpr std::int64_t kDefaultExactHorizon = 4096;

struct ConvergenceRow {
  std::int64_t t = 0;
  double t_c2 = 0;       // t * P(C2(t))        -> 1/2
  double sqrt_t_d1 = 0;  // sqrt(t) * P(D1(t))  -> sqrt(2/pi)
  double sqrt_t_d2 = 0;  // sqrt(t) * P(D2 gap t) -> 1/sqrt(2*pi)
  double t_c1 = 0;       // t * P(C1(t))        -> 1/4
};

struct ConvergenceReport {
  std::int64_t t_max = 0;
  std::int64_t exact_horizon = kDefaultExactHorizon;
  double limit_t_c2 = 0.5;
  double limit_sqrt_t_d1 = 0;  // sqrt(2/pi)
  double limit_sqrt_t_d2 = 0;  // 1/sqrt(2*pi)
  double limit_t_c1 = 0.25;
  std::vector<ConvergenceRow> rows;
};

/// Scaled event probabilities on a geometric grid of t values up to t_max,
/// exact below the horizon and log-space floating above it.
ConvergenceReport convergence_report(
    std::int64_t t_max, std::int64_t exact_horizon = kDefaultExactHorizon);

}  // namespace rarewalk
