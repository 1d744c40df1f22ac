#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace rarewalk {

/// A finite nearest-neighbour path on Z: ±1 steps plus a start site.
/// Positions are materialized once at construction; the empty path has the
/// single position `start`.
class WalkPath {
 public:
  WalkPath() : positions_{0} {}
  explicit WalkPath(const std::vector<int>& steps, std::int64_t start = 0);

  /// Builds a path from a sign string, e.g. "++-".
  static WalkPath from_signs(std::string_view signs, std::int64_t start = 0);

  std::size_t length() const { return positions_.size() - 1; }
  std::int64_t start() const { return positions_.front(); }
  std::int64_t terminal() const { return positions_.back(); }
  std::int64_t position(std::size_t k) const { return positions_[k]; }
  const std::vector<std::int64_t>& positions() const { return positions_; }
  int step(std::size_t i) const {
    return static_cast<int>(positions_[i + 1] - positions_[i]);
  }

  /// The path with every step negated (reflection through the start site).
  WalkPath negated() const;

  friend WalkPath path_from_positions(std::vector<std::int64_t> positions);
  friend bool operator==(const WalkPath& a, const WalkPath& b) {
    return a.positions_ == b.positions_;
  }

 private:
  struct FromPositionsTag {};
  WalkPath(std::vector<std::int64_t> positions, FromPositionsTag)
      : positions_(std::move(positions)) {}
  std::vector<std::int64_t> positions_;
};

/// Validates |Δ| = 1 between consecutive entries.
WalkPath path_from_positions(std::vector<std::int64_t> positions);

/// Edge visit counts L(y, n), keyed by the left endpoint y of edge <y, y+1>.
/// alpha tracks #{y : L(y) = 1}; the plus side takes y >= 0, the minus side
/// y <= -1, so edge <-1, 0> counts as minus. Backed by a dense array
/// re-centered on the visited range.
class EdgeLedger {
 public:
  /// One step from `from_pos` to an adjacent `to_pos`. O(1) amortized.
  void extend(std::int64_t from_pos, std::int64_t to_pos);

  std::int64_t count(std::int64_t y) const;
  std::int64_t alpha() const { return alpha_; }
  std::int64_t alpha_plus() const { return alpha_plus_; }
  std::int64_t alpha_minus() const { return alpha_minus_; }
  std::int64_t steps_consumed() const { return steps_; }
  bool empty() const { return steps_ == 0; }

  /// Touched key range [min_edge, max_edge]; only valid when !empty().
  std::int64_t min_edge() const { return lo_; }
  std::int64_t max_edge() const { return hi_; }

  /// Visits every key with a nonzero count, in increasing order.
  void for_each_count(
      const std::function<void(std::int64_t y, std::int64_t count)>& fn) const;

 private:
  std::int64_t& slot(std::int64_t y);
  std::vector<std::int64_t> counts_;
  std::int64_t base_ = 0;  // position of counts_[0]
  std::int64_t lo_ = 0, hi_ = 0;
  std::int64_t alpha_ = 0, alpha_plus_ = 0, alpha_minus_ = 0, steps_ = 0;
};

/// Site occupation times ξ(x, n); time 0 counts, so construction already
/// records one visit at the start site. f1 tracks #{x : ξ(x) = 1}.
class SiteLedger {
 public:
  explicit SiteLedger(std::int64_t start = 0);

  void visit(std::int64_t x);
  std::int64_t visits(std::int64_t x) const;
  std::int64_t f1() const { return f1_; }
  std::int64_t total_visits() const { return total_; }

  void for_each_count(
      const std::function<void(std::int64_t x, std::int64_t count)>& fn) const;

 private:
  std::int64_t& slot(std::int64_t x);
  std::vector<std::int64_t> visits_;
  std::int64_t base_ = 0;
  std::int64_t lo_ = 0, hi_ = 0;
  std::int64_t f1_ = 0, total_ = 0;
};

struct RareEdgeCounts {
  std::int64_t alpha = 0;
  std::int64_t alpha_plus = 0;
  std::int64_t alpha_minus = 0;
  friend bool operator==(const RareEdgeCounts&, const RareEdgeCounts&) =
      default;
};

/// alpha(n) and its sign split, batch-computed from a fresh ledger.
RareEdgeCounts rare_edge_count(const WalkPath& path);

/// f1(n): number of sites visited exactly once among times 0..n.
std::int64_t rare_site_count(const WalkPath& path);

/// Least k with S_k = x, or nullopt if x is not hit within the path.
std::optional<std::size_t> hitting_time(const WalkPath& path, std::int64_t x);

}  // namespace rarewalk
