#include "rarewalk/enumerate.hpp"

#include <cstring>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <string>

#include "rarewalk/parallel.hpp"

namespace rarewalk {

namespace {

void check_cap(int n, const EnumConfig& config) {
  if (n < 1)
    throw std::invalid_argument("enumeration requires n >= 1");
  if (n > config.hard_cap)
    throw std::invalid_argument(
        "enumeration refused: n = " + std::to_string(n) + " exceeds the hard cap of " +
        std::to_string(config.hard_cap) + " (2^n paths is out of desk range)");
  if (n > config.soft_cap) {
    std::cerr << "warning: enumerating 2^" << n
              << " paths exceeds the default cap of " << config.soft_cap
              << " and may take a while\n";
  }
}

void add_into(std::vector<std::uint64_t>& acc,
              const std::vector<std::uint64_t>& part) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i];
}

}  // namespace

AlphaTally enum_alpha_tally(int n, const EnumConfig& config) {
  check_cap(n, config);
  const std::uint64_t total = std::uint64_t{1} << n;
  const unsigned threads = resolve_threads(config.threads);

  AlphaTally tally;
  tally.n = n;
  tally.alpha_hist.assign(n + 1, 0);
  tally.alpha_plus_hist.assign(n + 1, 0);
  tally.alpha_minus_hist.assign(n + 1, 0);
  tally.f1_hist.assign(n + 2, 0);

  std::mutex merge_mutex;
  parallel_chunks(total, threads, [&](std::uint64_t begin, std::uint64_t end,
                                      unsigned) {
    std::vector<std::uint64_t> alpha_hist(n + 1, 0), plus_hist(n + 1, 0),
        minus_hist(n + 1, 0), f1_hist(n + 2, 0);
    // Edge keys y in [-n, n-1] live at cnt[y + n]; sites at site[x + n].
    std::vector<std::uint8_t> edge(2 * n + 1, 0), site(2 * n + 1, 0);
    std::uint8_t* cnt = edge.data() + n;
    std::uint8_t* occ = site.data() + n;
    for (std::uint64_t code = begin; code < end; ++code) {
      std::memset(edge.data(), 0, edge.size());
      std::memset(site.data(), 0, site.size());
      int pos = 0;
      occ[0] = 1;
      int alpha = 0, f1 = 1;
      for (int i = 0; i < n; ++i) {
        const int up = static_cast<int>((code >> i) & 1);
        const int y = pos - 1 + up;
        const std::uint8_t c = ++cnt[y];
        alpha += (c == 1) - (c == 2);
        pos += 2 * up - 1;
        const std::uint8_t s = ++occ[pos];
        f1 += (s == 1) - (s == 2);
      }
      ++alpha_hist[alpha];
      ++f1_hist[f1];
      // Parity law: all rare edges sit on the sign side of S_n.
      ++plus_hist[pos > 0 ? alpha : 0];
      ++minus_hist[pos < 0 ? alpha : 0];
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    add_into(tally.alpha_hist, alpha_hist);
    add_into(tally.alpha_plus_hist, plus_hist);
    add_into(tally.alpha_minus_hist, minus_hist);
    add_into(tally.f1_hist, f1_hist);
  });
  return tally;
}

Rational tally_expectation(const std::vector<std::uint64_t>& hist, int n) {
  BigInt sum = 0;
  for (std::size_t a = 1; a < hist.size(); ++a)
    sum += BigInt(static_cast<unsigned long>(hist[a])) *
           static_cast<unsigned long>(a);
  return dyadic(sum, n);
}

Rational tally_moment_k(const std::vector<std::uint64_t>& hist, int n, int k) {
  if (k < 0) throw std::invalid_argument("moment order k must be >= 0");
  BigInt sum = 0;
  for (std::size_t a = 0; a < hist.size(); ++a) {
    if (hist[a] == 0) continue;
    sum += BigInt(static_cast<unsigned long>(hist[a])) *
           binomial(a, static_cast<std::uint64_t>(k));
  }
  return dyadic(sum, n);
}

Rational enum_expectation_alpha(int n, const EnumConfig& config) {
  return tally_expectation(enum_alpha_tally(n, config).alpha_hist, n);
}

std::map<std::int64_t, Rational> enum_distribution_alpha(
    int n, const EnumConfig& config) {
  const AlphaTally tally = enum_alpha_tally(n, config);
  std::map<std::int64_t, Rational> dist;
  for (std::size_t a = 0; a < tally.alpha_hist.size(); ++a)
    if (tally.alpha_hist[a] != 0)
      dist.emplace(static_cast<std::int64_t>(a),
                   dyadic(tally.alpha_hist[a], n));
  return dist;
}

Rational enum_moment_alpha_k(int n, int k, const EnumConfig& config) {
  return tally_moment_k(enum_alpha_tally(n, config).alpha_hist, n, k);
}

Rational enum_expectation_f1(int n, const EnumConfig& config) {
  return tally_expectation(enum_alpha_tally(n, config).f1_hist, n);
}

Rational enum_expectation_alpha_plus(int n, const EnumConfig& config) {
  return tally_expectation(enum_alpha_tally(n, config).alpha_plus_hist, n);
}

Rational enum_expectation_alpha_minus(int n, const EnumConfig& config) {
  return tally_expectation(enum_alpha_tally(n, config).alpha_minus_hist, n);
}

Rational enum_moment_alpha_plus_k(int n, int k, const EnumConfig& config) {
  return tally_moment_k(enum_alpha_tally(n, config).alpha_plus_hist, n, k);
}

void EventSpec::validate() const {
  if (t < 1) throw std::invalid_argument("event requires t >= 1");
  switch (kind) {
    case EventKind::kC2:
    case EventKind::kD2:
      if (r < 0 || r >= t)
        throw std::invalid_argument(
            "two-index event requires 0 <= r < t");
      break;
    case EventKind::kCustom:
      if (!predicate)
        throw std::invalid_argument("custom event requires a predicate");
      break;
    default:
      if (r != 0)
        throw std::invalid_argument("event kind does not take an r index");
      break;
  }
}

namespace {

bool event_holds(const EventSpec& spec, const std::int64_t* pos) {
  const int t = spec.t, r = spec.r;
  switch (spec.kind) {
    case EventKind::kC1:
      for (int l = 1; l < t; ++l)
        if (!(0 < pos[l] && pos[l] < pos[t])) return false;
      return true;
    case EventKind::kC2:
      for (int l = r + 1; l <= t; ++l)
        if (!(pos[r] < pos[l] && pos[l] <= pos[t])) return false;
      return true;
    case EventKind::kD1:
      for (int l = 0; l <= t; ++l)
        if (pos[l] > pos[t]) return false;
      return true;
    case EventKind::kD2:
      for (int l = r + 1; l <= t; ++l)
        if (pos[l] <= pos[r]) return false;
      return true;
    case EventKind::kPositiveStrict:
      for (int l = 1; l <= t; ++l)
        if (pos[l] <= 0) return false;
      return true;
    case EventKind::kNonNegative:
      for (int l = 1; l <= t; ++l)
        if (pos[l] < 0) return false;
      return true;
    case EventKind::kReturnZero:
      return pos[t] == 0;
    case EventKind::kCustom:
      break;
  }
  return false;  // kCustom handled by caller
}

}  // namespace

Rational enum_event_probability(const EventSpec& spec, int n,
                                const EnumConfig& config) {
  spec.validate();
  if (n < 0) n = spec.t;
  if (n < spec.t)
    throw std::invalid_argument("path length n must be >= the event horizon t");
  check_cap(n, config);

  const std::uint64_t total = std::uint64_t{1} << n;
  const unsigned threads = resolve_threads(config.threads);
  std::uint64_t hits = 0;
  std::mutex merge_mutex;
  parallel_chunks(total, threads, [&](std::uint64_t begin, std::uint64_t end,
                                      unsigned) {
    std::uint64_t local = 0;
    std::vector<std::int64_t> pos(n + 1, 0);
    for (std::uint64_t code = begin; code < end; ++code) {
      for (int i = 0; i < n; ++i)
        pos[i + 1] = pos[i] + (((code >> i) & 1) ? 1 : -1);
      if (spec.kind == EventKind::kCustom) {
        if (spec.predicate(pos)) ++local;
      } else if (event_holds(spec, pos.data())) {
        ++local;
      }
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    hits += local;
  });
  return dyadic(hits, n);
}

}  // namespace rarewalk
