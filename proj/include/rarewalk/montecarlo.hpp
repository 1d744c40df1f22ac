#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rarewalk/walk.hpp"

namespace rarewalk {

/// Statistics of one simulated trajectory. alpha_plus * alpha_minus = 0 by
/// the parity law; checkpoints, when requested, hold (n, alpha(n)) pairs.
struct ReplicaSummary {
  std::int64_t alpha = 0;
  std::int64_t alpha_plus = 0;
  std::int64_t alpha_minus = 0;
  std::int64_t f1 = 0;
  std::int64_t terminal_position = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> checkpoint_values;
};

/// Replays an explicit step sequence through the walk-core ledgers.
ReplicaSummary simulate_replica(std::span<const int> steps,
                                std::span<const std::int64_t> checkpoints = {});

/// Draws n steps from step_source (each must be +1 or -1).
ReplicaSummary simulate_replica(std::int64_t n,
                                const std::function<int()>& step_source,
                                std::span<const std::int64_t> checkpoints = {});

/// The replica stream is a pure function of (master_seed, replica_index);
/// p_up is the probability of a +1 step.
ReplicaSummary simulate_replica_random(
    std::int64_t n, std::uint64_t master_seed, std::uint64_t replica_index,
    double p_up = 0.5, std::span<const std::int64_t> checkpoints = {});

struct MeanEstimate {
  std::int64_t n = 0;
  std::uint64_t replicas = 0;
  std::uint64_t master_seed = 0;
  double mean = 0;
  double std_error = 0;
};

/// Sample mean of alpha(n) over independent replicas. Aggregation uses exact
/// integer sums, so the result is bit-identical for any thread count.
MeanEstimate estimate_expectation(std::int64_t n, std::uint64_t replicas,
                                  std::uint64_t master_seed,
                                  unsigned threads = 0);

/// Sample mean of f1(n), same determinism guarantees.
MeanEstimate estimate_f1(std::int64_t n, std::uint64_t replicas,
                         std::uint64_t master_seed, unsigned threads = 0);

struct TailEstimate {
  std::int64_t n = 0;
  double a = 0;
  double threshold = 0;  // a * (ln n)^2, natural log
  std::uint64_t hits = 0;
  std::uint64_t replicas = 0;
  std::uint64_t master_seed = 0;
  double p_hat = 0;
  double ci_low = 0;   // exact binomial (Clopper-Pearson) 95% bounds
  double ci_high = 0;
};

/// Proportion of replicas with alpha(n) > a (ln n)^2 (strict inequality).
TailEstimate estimate_tail(std::int64_t n, double a, std::uint64_t replicas,
                           std::uint64_t master_seed, unsigned threads = 0);

struct TailSlopeRow {
  TailEstimate estimate;
  double ln_n = 0;
  double ln_p_hat = 0;
  bool used_in_fit = false;  // rows with zero hits are flagged and excluded
};

struct TailSlopeReport {
  double a = 0;
  double target_slope = 0;  // -2a
  std::uint64_t master_seed = 0;
  double fitted_slope = 0;
  std::size_t points_in_fit = 0;
  std::vector<TailSlopeRow> rows;
};

TailSlopeReport tail_slope_report(const std::vector<std::int64_t>& n_grid,
                                  double a, std::uint64_t replicas_per_n,
                                  std::uint64_t master_seed,
                                  unsigned threads = 0);

struct LimsupProbe {
  std::int64_t horizon = 0;
  std::int64_t n_min = 2;
  std::uint64_t replicas = 0;
  std::uint64_t master_seed = 0;
  std::vector<double> per_replica_max;  // max over n of alpha(n)/(ln n)^2
  double mean = 0;
  double q00 = 0, q25 = 0, q50 = 0, q75 = 0, q90 = 0, q100 = 0;
};

/// Streams each replica to the horizon tracking max_n alpha(n)/(ln n)^2 over
/// n in [n_min, horizon]. Report only; no assertion against the limsup
/// bracket, which concerns an almost-sure limit.
LimsupProbe limsup_probe(std::int64_t horizon, std::int64_t n_min,
                         std::uint64_t replicas, std::uint64_t master_seed,
                         unsigned threads = 0);

struct BiasedSummary {
  std::int64_t n = 0;
  double p_up = 0.5;
  std::uint64_t replicas = 0;
  std::uint64_t master_seed = 0;
  double mean_alpha = 0;
  double se_alpha = 0;
  double mean_alpha_plus = 0;
  double mean_alpha_minus = 0;
  double mean_terminal = 0;
  TailEstimate tail;  // at the coefficient below
  double tail_a = 0.25;
};

/// Exploratory asymmetric-walk statistics; p_up = 1/2 reproduces the
/// symmetric engine in distribution.
BiasedSummary biased_walk_summary(std::int64_t n, double p_up,
                                  std::uint64_t replicas,
                                  std::uint64_t master_seed,
                                  unsigned threads = 0, double tail_a = 0.25);

}  // namespace rarewalk
