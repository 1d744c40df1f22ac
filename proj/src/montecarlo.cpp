#include "rarewalk/montecarlo.hpp"

#include <boost/math/distributions/binomial.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "rarewalk/parallel.hpp"
#include "rarewalk/rng.hpp"

namespace rarewalk {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

struct FairBits {
  Xoshiro256pp rng;
  std::uint64_t buf = 0;
  int left = 0;
  explicit FairBits(Xoshiro256pp r) : rng(r) {}
  bool next() {
    if (left == 0) {
      buf = rng.next();
      left = 64;
    }
    const bool up = buf & 1;
    buf >>= 1;
    --left;
    return up;
  }
};

struct BiasedBits {
  Xoshiro256pp rng;
  std::uint64_t threshold;
  bool always_up;
  static std::uint64_t scale(double p_up) {
    if (p_up <= 0.0) return 0;
    const double scaled = std::ldexp(p_up, 64);
    if (scaled >= 18446744073709551616.0)  // 2^64
      return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(scaled);
  }
  BiasedBits(Xoshiro256pp r, double p_up)
      : rng(r), threshold(scale(p_up)), always_up(p_up >= 1.0) {}
  bool next() { return always_up || rng.next() < threshold; }
};

// Edge-count scratch sized for walks of length <= capacity, with margin for
// the block-conservative clearing window used by the fair kernel. Counts
// saturate at 3: only the 0->1 and 1->2 transitions move alpha.
struct EdgeScratch {
  std::vector<std::uint8_t> buf;
  std::int64_t capacity = 0;
  void ensure(std::int64_t n) {
    if (capacity < n) {
      capacity = n;
      buf.assign(static_cast<std::size_t>(2 * n + 130), 0);
    }
  }
  std::uint8_t* center() { return buf.data() + capacity + 65; }
};

// Final alpha(n) of one replica. The scratch must be zeroed on entry and is
// re-zeroed (touched window only) before returning.
template <class Bits>
std::int64_t run_alpha_final(Bits& bits, std::int64_t n, EdgeScratch& scratch,
                             std::int64_t* terminal = nullptr) {
  std::uint8_t* cnt = scratch.center();
  std::int64_t pos = 0, alpha = 0, lo = 0, hi = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const bool up = bits.next();
    const std::int64_t y = pos - 1 + static_cast<std::int64_t>(up);
    const std::uint8_t c = cnt[y];
    alpha += (c == 0) - (c == 1);
    cnt[y] = c + (c < 3);
    pos += up ? 1 : -1;
    if (pos < lo)
      lo = pos;
    else if (pos > hi)
      hi = pos;
  }
  std::memset(cnt + lo, 0, static_cast<std::size_t>(hi - lo + 1));
  if (terminal != nullptr) *terminal = pos;
  return alpha;
}

// Fair-walk specialization processing one rng word per 64 steps. The clear
// window is widened to the block bounds (at most 64 cells of slack per side),
// which the scratch margin accommodates.
std::int64_t run_alpha_final_fair(Xoshiro256pp& rng, std::int64_t n,
                                  EdgeScratch& scratch,
                                  std::int64_t* terminal = nullptr) {
  std::uint8_t* cnt = scratch.center();
  std::int64_t pos = 0, alpha = 0, lo = 0, hi = 0;
  const std::int64_t blocks = n >> 6;
  const int rem = static_cast<int>(n & 63);
  for (std::int64_t b = 0; b < blocks; ++b) {
    std::uint64_t w = rng.next();
    if (pos - 64 < lo) lo = pos - 64;
    if (pos + 64 > hi) hi = pos + 64;
    for (int j = 0; j < 64; ++j) {
      const std::int64_t up = static_cast<std::int64_t>(w & 1);
      w >>= 1;
      const std::int64_t y = pos - 1 + up;
      const std::uint8_t c = cnt[y];
      alpha += (c == 0) - (c == 1);
      cnt[y] = c + (c < 3);
      pos += 2 * up - 1;
    }
  }
  if (rem > 0) {
    std::uint64_t w = rng.next();
    if (pos - rem < lo) lo = pos - rem;
    if (pos + rem > hi) hi = pos + rem;
    for (int j = 0; j < rem; ++j) {
      const std::int64_t up = static_cast<std::int64_t>(w & 1);
      w >>= 1;
      const std::int64_t y = pos - 1 + up;
      const std::uint8_t c = cnt[y];
      alpha += (c == 0) - (c == 1);
      cnt[y] = c + (c < 3);
      pos += 2 * up - 1;
    }
  }
  std::memset(cnt + lo, 0, static_cast<std::size_t>(hi - lo + 1));
  if (terminal != nullptr) *terminal = pos;
  return alpha;
}

// Final f1(n): site counts saturate at 2; time 0 occupies the start site.
std::int64_t run_f1_final_fair(Xoshiro256pp& rng, std::int64_t n,
                               EdgeScratch& scratch) {
  std::uint8_t* occ = scratch.center();
  std::int64_t pos = 0, f1 = 1, lo = 0, hi = 0;
  occ[0] = 1;
  std::int64_t done = 0;
  while (done < n) {
    const int span = static_cast<int>(std::min<std::int64_t>(64, n - done));
    std::uint64_t w = rng.next();
    if (pos - span < lo) lo = pos - span;
    if (pos + span > hi) hi = pos + span;
    for (int j = 0; j < span; ++j) {
      pos += 2 * static_cast<std::int64_t>(w & 1) - 1;
      w >>= 1;
      const std::uint8_t c = occ[pos];
      f1 += (c == 0) - (c == 1);
      occ[pos] = c + (c < 2);
    }
    done += span;
  }
  std::memset(occ + lo, 0, static_cast<std::size_t>(hi - lo + 1));
  return f1;
}

// Running max of alpha(n) * inv_ln_sq[n] over n in [n_min, horizon].
template <class Bits>
double run_limsup_max(Bits& bits, std::int64_t horizon, std::int64_t n_min,
                      const std::vector<double>& inv_ln_sq,
                      EdgeScratch& scratch) {
  std::uint8_t* cnt = scratch.center();
  std::int64_t pos = 0, alpha = 0, lo = 0, hi = 0;
  double best = 0.0;
  for (std::int64_t i = 0; i < horizon; ++i) {
    const bool up = bits.next();
    const std::int64_t y = pos - 1 + static_cast<std::int64_t>(up);
    const std::uint8_t c = cnt[y];
    alpha += (c == 0) - (c == 1);
    cnt[y] = c + (c < 3);
    pos += up ? 1 : -1;
    if (pos < lo)
      lo = pos;
    else if (pos > hi)
      hi = pos;
    if (i + 1 >= n_min) {
      const double cand =
          static_cast<double>(alpha) * inv_ln_sq[static_cast<std::size_t>(i + 1)];
      if (cand > best) best = cand;
    }
  }
  std::memset(cnt + lo, 0, static_cast<std::size_t>(hi - lo + 1));
  return best;
}

double clopper_pearson_low(std::uint64_t hits, std::uint64_t trials) {
  if (hits == 0) return 0.0;
  return boost::math::binomial_distribution<>::find_lower_bound_on_p(
      static_cast<double>(trials), static_cast<double>(hits), 0.025);
}

double clopper_pearson_high(std::uint64_t hits, std::uint64_t trials) {
  if (hits == trials) return 1.0;
  return boost::math::binomial_distribution<>::find_upper_bound_on_p(
      static_cast<double>(trials), static_cast<double>(hits), 0.025);
}

double tail_threshold(std::int64_t n, double a) {
  const double ln_n = std::log(static_cast<double>(n));
  return a * ln_n * ln_n;
}

struct MomentSums {
  unsigned __int128 sum = 0;
  unsigned __int128 sum_sq = 0;
  void add(std::int64_t v) {
    sum += static_cast<std::uint64_t>(v);
    sum_sq += static_cast<unsigned __int128>(v) * static_cast<std::uint64_t>(v);
  }
  void merge(const MomentSums& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  double mean(std::uint64_t count) const {
    return static_cast<double>(sum) / static_cast<double>(count);
  }
  double std_error(std::uint64_t count) const {
    if (count < 2) return 0.0;
    const double m = mean(count);
    const double var =
        (static_cast<double>(sum_sq) - static_cast<double>(count) * m * m) /
        static_cast<double>(count - 1);
    return std::sqrt(std::max(var, 0.0) / static_cast<double>(count));
  }
};

}  // namespace

ReplicaSummary simulate_replica(std::span<const int> steps,
                                std::span<const std::int64_t> checkpoints) {
  ReplicaSummary summary;
  EdgeLedger edges;
  SiteLedger sites(0);
  std::int64_t pos = 0;
  std::size_t next_checkpoint = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const int s = steps[i];
    if (s != 1 && s != -1)
      throw std::invalid_argument("simulate_replica: steps must be +1 or -1");
    edges.extend(pos, pos + s);
    pos += s;
    sites.visit(pos);
    const std::int64_t t = static_cast<std::int64_t>(i) + 1;
    while (next_checkpoint < checkpoints.size() &&
           checkpoints[next_checkpoint] == t) {
      summary.checkpoint_values.emplace_back(t, edges.alpha());
      ++next_checkpoint;
    }
  }
  summary.alpha = edges.alpha();
  summary.alpha_plus = edges.alpha_plus();
  summary.alpha_minus = edges.alpha_minus();
  summary.f1 = sites.f1();
  summary.terminal_position = pos;
  return summary;
}

ReplicaSummary simulate_replica(std::int64_t n,
                                const std::function<int()>& step_source,
                                std::span<const std::int64_t> checkpoints) {
  require(n >= 1, "simulate_replica requires n >= 1");
  std::vector<int> steps(static_cast<std::size_t>(n));
  for (auto& s : steps) s = step_source();
  return simulate_replica(steps, checkpoints);
}

ReplicaSummary simulate_replica_random(
    std::int64_t n, std::uint64_t master_seed, std::uint64_t replica_index,
    double p_up, std::span<const std::int64_t> checkpoints) {
  require(n >= 1, "simulate_replica requires n >= 1");
  if (p_up == 0.5) {
    FairBits bits(replica_rng(master_seed, replica_index));
    return simulate_replica(
        n, [&bits] { return bits.next() ? 1 : -1; }, checkpoints);
  }
  BiasedBits bits(replica_rng(master_seed, replica_index), p_up);
  return simulate_replica(
      n, [&bits] { return bits.next() ? 1 : -1; }, checkpoints);
}

MeanEstimate estimate_expectation(std::int64_t n, std::uint64_t replicas,
                                  std::uint64_t master_seed,
                                  unsigned threads) {
  require(n >= 1, "estimate_expectation requires n >= 1");
  require(replicas >= 1, "estimate_expectation requires replicas >= 1");
  MomentSums sums;
  std::mutex merge_mutex;
  parallel_chunks(replicas, threads, [&](std::uint64_t begin,
                                         std::uint64_t end, unsigned) {
    MomentSums local;
    EdgeScratch scratch;
    scratch.ensure(n);
    for (std::uint64_t i = begin; i < end; ++i) {
      Xoshiro256pp rng = replica_rng(master_seed, i);
      const std::int64_t alpha = run_alpha_final_fair(rng, n, scratch);
#ifndef NDEBUG
      if (i % 128 == 0)
        assert(alpha == simulate_replica_random(n, master_seed, i).alpha);
#endif
      local.add(alpha);
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    sums.merge(local);
  });
  MeanEstimate est;
  est.n = n;
  est.replicas = replicas;
  est.master_seed = master_seed;
  est.mean = sums.mean(replicas);
  est.std_error = sums.std_error(replicas);
  return est;
}

MeanEstimate estimate_f1(std::int64_t n, std::uint64_t replicas,
                         std::uint64_t master_seed, unsigned threads) {
  require(n >= 1, "estimate_f1 requires n >= 1");
  require(replicas >= 1, "estimate_f1 requires replicas >= 1");
  MomentSums sums;
  std::mutex merge_mutex;
  parallel_chunks(replicas, threads, [&](std::uint64_t begin,
                                         std::uint64_t end, unsigned) {
    MomentSums local;
    EdgeScratch scratch;
    scratch.ensure(n);
    for (std::uint64_t i = begin; i < end; ++i) {
      Xoshiro256pp rng = replica_rng(master_seed, i);
      local.add(run_f1_final_fair(rng, n, scratch));
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    sums.merge(local);
  });
  MeanEstimate est;
  est.n = n;
  est.replicas = replicas;
  est.master_seed = master_seed;
  est.mean = sums.mean(replicas);
  est.std_error = sums.std_error(replicas);
  return est;
}

TailEstimate estimate_tail(std::int64_t n, double a, std::uint64_t replicas,
                           std::uint64_t master_seed, unsigned threads) {
  require(n >= 1, "estimate_tail requires n >= 1");
  require(a > 0, "estimate_tail requires a > 0");
  require(replicas >= 1, "estimate_tail requires replicas >= 1");
  const double threshold = tail_threshold(n, a);
  std::uint64_t hits = 0;
  std::mutex merge_mutex;
  parallel_chunks(replicas, threads, [&](std::uint64_t begin,
                                         std::uint64_t end, unsigned) {
    std::uint64_t local = 0;
    EdgeScratch scratch;
    scratch.ensure(n);
    for (std::uint64_t i = begin; i < end; ++i) {
      Xoshiro256pp rng = replica_rng(master_seed, i);
      const std::int64_t alpha = run_alpha_final_fair(rng, n, scratch);
      if (static_cast<double>(alpha) > threshold) ++local;
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    hits += local;
  });
  TailEstimate est;
  est.n = n;
  est.a = a;
  est.threshold = threshold;
  est.hits = hits;
  est.replicas = replicas;
  est.master_seed = master_seed;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(replicas);
  est.ci_low = clopper_pearson_low(hits, replicas);
  est.ci_high = clopper_pearson_high(hits, replicas);
  return est;
}

TailSlopeReport tail_slope_report(const std::vector<std::int64_t>& n_grid,
                                  double a, std::uint64_t replicas_per_n,
                                  std::uint64_t master_seed,
                                  unsigned threads) {
  require(!n_grid.empty(), "tail_slope_report requires a nonempty n grid");
  for (std::int64_t n : n_grid)
    require(n >= 3, "tail_slope_report requires every n >= 3");
  TailSlopeReport report;
  report.a = a;
  report.target_slope = -2.0 * a;
  report.master_seed = master_seed;
  for (std::size_t idx = 0; idx < n_grid.size(); ++idx) {
    TailSlopeRow row;
    // Decorrelate the per-n streams while keeping the whole report a pure
    // function of the master seed.
    row.estimate = estimate_tail(n_grid[idx], a, replicas_per_n,
                                 mix64(master_seed + idx), threads);
    row.ln_n = std::log(static_cast<double>(n_grid[idx]));
    row.used_in_fit = row.estimate.hits > 0;
    row.ln_p_hat = row.used_in_fit ? std::log(row.estimate.p_hat) : 0.0;
    report.rows.push_back(row);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (const auto& row : report.rows) {
    if (!row.used_in_fit) continue;
    ++m;
    sx += row.ln_n;
    sy += row.ln_p_hat;
    sxx += row.ln_n * row.ln_n;
    sxy += row.ln_n * row.ln_p_hat;
  }
  report.points_in_fit = m;
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  report.fitted_slope =
      (m >= 2 && denom != 0.0)
          ? (static_cast<double>(m) * sxy - sx * sy) / denom
          : std::numeric_limits<double>::quiet_NaN();
  return report;
}

LimsupProbe limsup_probe(std::int64_t horizon, std::int64_t n_min,
                         std::uint64_t replicas, std::uint64_t master_seed,
                         unsigned threads) {
  require(n_min >= 2, "limsup_probe requires n_min >= 2");
  require(horizon >= n_min, "limsup_probe requires horizon >= n_min");
  require(replicas >= 1, "limsup_probe requires replicas >= 1");

  std::vector<double> inv_ln_sq(static_cast<std::size_t>(horizon) + 1, 0.0);
  for (std::int64_t k = 2; k <= horizon; ++k) {
    const double l = std::log(static_cast<double>(k));
    inv_ln_sq[static_cast<std::size_t>(k)] = 1.0 / (l * l);
  }

  LimsupProbe probe;
  probe.horizon = horizon;
  probe.n_min = n_min;
  probe.replicas = replicas;
  probe.master_seed = master_seed;
  probe.per_replica_max.assign(replicas, 0.0);
  parallel_chunks(replicas, threads, [&](std::uint64_t begin,
                                         std::uint64_t end, unsigned) {
    EdgeScratch scratch;
    scratch.ensure(horizon);
    for (std::uint64_t i = begin; i < end; ++i) {
      FairBits bits(replica_rng(master_seed, i));
      probe.per_replica_max[i] =
          run_limsup_max(bits, horizon, n_min, inv_ln_sq, scratch);
    }
  });

  std::vector<double> sorted = probe.per_replica_max;
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double q) {
    const std::size_t idx = static_cast<std::size_t>(
        q * static_cast<double>(sorted.size() - 1) + 0.5);
    return sorted[std::min(idx, sorted.size() - 1)];
  };
  probe.q00 = sorted.front();
  probe.q25 = quantile(0.25);
  probe.q50 = quantile(0.50);
  probe.q75 = quantile(0.75);
  probe.q90 = quantile(0.90);
  probe.q100 = sorted.back();
  double total = 0;
  for (double v : sorted) total += v;
  probe.mean = total / static_cast<double>(sorted.size());
  return probe;
}

BiasedSummary biased_walk_summary(std::int64_t n, double p_up,
                                  std::uint64_t replicas,
                                  std::uint64_t master_seed, unsigned threads,
                                  double tail_a) {
  require(n >= 1, "biased_walk_summary requires n >= 1");
  require(p_up >= 0.0 && p_up <= 1.0,
          "biased_walk_summary requires 0 <= p <= 1");
  require(replicas >= 1, "biased_walk_summary requires replicas >= 1");
  require(tail_a > 0, "biased_walk_summary requires tail_a > 0");

  const double threshold = tail_threshold(n, tail_a);
  MomentSums alpha_sums;
  unsigned __int128 plus_sum = 0, minus_sum = 0;
  __int128 terminal_sum = 0;
  std::uint64_t hits = 0;
  std::mutex merge_mutex;
  parallel_chunks(replicas, threads, [&](std::uint64_t begin,
                                         std::uint64_t end, unsigned) {
    MomentSums local;
    unsigned __int128 lplus = 0, lminus = 0;
    __int128 lterm = 0;
    std::uint64_t lhits = 0;
    EdgeScratch scratch;
    scratch.ensure(n);
    for (std::uint64_t i = begin; i < end; ++i) {
      BiasedBits bits(replica_rng(master_seed, i), p_up);
      std::int64_t terminal = 0;
      const std::int64_t alpha = run_alpha_final(bits, n, scratch, &terminal);
      local.add(alpha);
      if (terminal > 0)
        lplus += static_cast<std::uint64_t>(alpha);
      else if (terminal < 0)
        lminus += static_cast<std::uint64_t>(alpha);
      lterm += terminal;
      if (static_cast<double>(alpha) > threshold) ++lhits;
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    alpha_sums.merge(local);
    plus_sum += lplus;
    minus_sum += lminus;
    terminal_sum += lterm;
    hits += lhits;
  });

  BiasedSummary summary;
  summary.n = n;
  summary.p_up = p_up;
  summary.replicas = replicas;
  summary.master_seed = master_seed;
  summary.mean_alpha = alpha_sums.mean(replicas);
  summary.se_alpha = alpha_sums.std_error(replicas);
  summary.mean_alpha_plus =
      static_cast<double>(plus_sum) / static_cast<double>(replicas);
  summary.mean_alpha_minus =
      static_cast<double>(minus_sum) / static_cast<double>(replicas);
  summary.mean_terminal =
      static_cast<double>(terminal_sum) / static_cast<double>(replicas);
  summary.tail_a = tail_a;
  summary.tail.n = n;
  summary.tail.a = tail_a;
  summary.tail.threshold = threshold;
  summary.tail.hits = hits;
  summary.tail.replicas = replicas;
  summary.tail.master_seed = master_seed;
  summary.tail.p_hat =
      static_cast<double>(hits) / static_cast<double>(replicas);
  summary.tail.ci_low = clopper_pearson_low(hits, replicas);
  summary.tail.ci_high = clopper_pearson_high(hits, replicas);
  return summary;
}

}  // namespace rarewalk
