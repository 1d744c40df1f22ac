#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "rarewalk/rational.hpp"

namespace rarewalk {

struct EnumConfig {
  int soft_cap = 24;    // n above this warns about runtime
  int hard_cap = 30;    // n above this is refused
  unsigned threads = 0; // 0 = hardware concurrency
};

/// Exhaustive tallies over all 2^n equiprobable length-n paths from 0.
/// Histogram index a holds the number of paths with the statistic equal to a.
/// alpha_plus/alpha_minus histograms record the value of the one-sided count
/// (which is alpha or 0 by the parity law), so e.g. every S_n <= 0 path lands
/// in alpha_plus_hist[0].
struct AlphaTally {
  int n = 0;
  std::vector<std::uint64_t> alpha_hist;
  std::vector<std::uint64_t> alpha_plus_hist;
  std::vector<std::uint64_t> alpha_minus_hist;
  std::vector<std::uint64_t> f1_hist;
  std::uint64_t paths() const { return std::uint64_t{1} << n; }
};

AlphaTally enum_alpha_tally(int n, const EnumConfig& config = {});

Rational enum_expectation_alpha(int n, const EnumConfig& config = {});
std::map<std::int64_t, Rational> enum_distribution_alpha(
    int n, const EnumConfig& config = {});
Rational enum_moment_alpha_k(int n, int k, const EnumConfig& config = {});
Rational enum_expectation_f1(int n, const EnumConfig& config = {});

// One-sided variants, used as oracles for the moment formulas.
Rational enum_expectation_alpha_plus(int n, const EnumConfig& config = {});
Rational enum_expectation_alpha_minus(int n, const EnumConfig& config = {});
Rational enum_moment_alpha_plus_k(int n, int k,
                                  const EnumConfig& config = {});

// Helpers shared with tests that already hold a tally.
Rational tally_expectation(const std::vector<std::uint64_t>& hist, int n);
Rational tally_moment_k(const std::vector<std::uint64_t>& hist, int n, int k);

enum class EventKind {
  kC1,
  kC2,
  kD1,
  kD2,
  kPositiveStrict,
  kNonNegative,
  kReturnZero,
  kCustom,
};

/// An event over length-t paths; C2 and D2 also take the earlier index r.
/// kCustom evaluates an arbitrary predicate on the position sequence.
struct EventSpec {
  EventKind kind = EventKind::kC2;
  int t = 1;
  int r = 0;
  std::function<bool(const std::vector<std::int64_t>&)> predicate;

  static EventSpec c1(int t) { return {EventKind::kC1, t, 0, nullptr}; }
  static EventSpec c2(int t) { return {EventKind::kC2, t, 0, nullptr}; }
  static EventSpec c2(int r, int t) { return {EventKind::kC2, t, r, nullptr}; }
  static EventSpec d1(int t) { return {EventKind::kD1, t, 0, nullptr}; }
  static EventSpec d2(int r, int t) { return {EventKind::kD2, t, r, nullptr}; }
  static EventSpec positive_strict(int t) {
    return {EventKind::kPositiveStrict, t, 0, nullptr};
  }
  static EventSpec non_negative(int t) {
    return {EventKind::kNonNegative, t, 0, nullptr};
  }
  static EventSpec return_zero(int t) {
    return {EventKind::kReturnZero, t, 0, nullptr};
  }
  static EventSpec custom(
      int t, std::function<bool(const std::vector<std::int64_t>&)> pred) {
    return {EventKind::kCustom, t, 0, std::move(pred)};
  }

  void validate() const;  // throws std::invalid_argument naming the constraint
};

/// Exact probability of the event among all paths of length n (default: the
/// event's own horizon t). The event only constrains times <= t, so the value
/// is independent of n >= t; enumerating at larger n exercises exactly that.
Rational enum_event_probability(const EventSpec& spec, int n = -1,
                                const EnumConfig& config = {});

}  // namespace rarewalk
