#include "rarewalk/walk.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace rarewalk {

WalkPath::WalkPath(const std::vector<int>& steps, std::int64_t start) {
  positions_.reserve(steps.size() + 1);
  positions_.push_back(start);
  std::int64_t pos = start;
  for (int s : steps) {
    if (s != 1 && s != -1)
      throw std::invalid_argument("WalkPath: steps must be +1 or -1");
    pos += s;
    positions_.push_back(pos);
  }
}

WalkPath WalkPath::from_signs(std::string_view signs, std::int64_t start) {
  std::vector<int> steps;
  steps.reserve(signs.size());
  for (char c : signs) {
    if (c == '+')
      steps.push_back(1);
    else if (c == '-')
      steps.push_back(-1);
    else
      throw std::invalid_argument("WalkPath::from_signs: expected '+' or '-'");
  }
  return WalkPath(steps, start);
}

WalkPath WalkPath::negated() const {
  std::vector<std::int64_t> mirrored(positions_.size());
  const std::int64_t s = start();
  for (std::size_t k = 0; k < positions_.size(); ++k)
    mirrored[k] = 2 * s - positions_[k];
  return WalkPath(std::move(mirrored), FromPositionsTag{});
}

WalkPath path_from_positions(std::vector<std::int64_t> positions) {
  if (positions.empty())
    throw std::invalid_argument("path_from_positions: need at least S_0");
  for (std::size_t k = 1; k < positions.size(); ++k) {
    std::int64_t d = positions[k] - positions[k - 1];
    if (d != 1 && d != -1)
      throw std::invalid_argument(
          "path_from_positions: consecutive positions must differ by 1");
  }
  return WalkPath(std::move(positions), WalkPath::FromPositionsTag{});
}

namespace {

// Shared dense-array growth for both ledgers.
std::int64_t& dense_slot(std::vector<std::int64_t>& v, std::int64_t& base,
                         std::int64_t key) {
  if (v.empty()) {
    base = key - 4;
    v.assign(9, 0);
  }
  std::int64_t idx = key - base;
  if (idx < 0) {
    std::int64_t grow = std::max<std::int64_t>(
        static_cast<std::int64_t>(v.size()), -idx);
    v.insert(v.begin(), static_cast<std::size_t>(grow), 0);
    base -= grow;
    idx += grow;
  } else if (idx >= static_cast<std::int64_t>(v.size())) {
    std::int64_t grow = std::max<std::int64_t>(
        static_cast<std::int64_t>(v.size()),
        idx - static_cast<std::int64_t>(v.size()) + 1);
    v.insert(v.end(), static_cast<std::size_t>(grow), 0);
  }
  return v[static_cast<std::size_t>(idx)];
}

}  // namespace

void EdgeLedger::extend(std::int64_t from_pos, std::int64_t to_pos) {
  if (std::llabs(to_pos - from_pos) != 1)
    throw std::invalid_argument("EdgeLedger::extend: positions not adjacent");
  const std::int64_t y = std::min(from_pos, to_pos);
  std::int64_t& c = slot(y);
  if (steps_ == 0) {
    lo_ = hi_ = y;
  } else {
    lo_ = std::min(lo_, y);
    hi_ = std::max(hi_, y);
  }
  ++c;
  ++steps_;
  const int delta = (c == 1) ? 1 : (c == 2 ? -1 : 0);
  if (delta != 0) {
    alpha_ += delta;
    if (y >= 0)
      alpha_plus_ += delta;
    else
      alpha_minus_ += delta;
  }
}

std::int64_t& EdgeLedger::slot(std::int64_t y) {
  return dense_slot(counts_, base_, y);
}

std::int64_t EdgeLedger::count(std::int64_t y) const {
  const std::int64_t idx = y - base_;
  if (counts_.empty() || idx < 0 ||
      idx >= static_cast<std::int64_t>(counts_.size()))
    return 0;
  return counts_[static_cast<std::size_t>(idx)];
}

void EdgeLedger::for_each_count(
    const std::function<void(std::int64_t, std::int64_t)>& fn) const {
  if (steps_ == 0) return;
  for (std::int64_t y = lo_; y <= hi_; ++y) {
    const std::int64_t c = count(y);
    if (c != 0) fn(y, c);
  }
}

SiteLedger::SiteLedger(std::int64_t start) {
  lo_ = hi_ = start;
  std::int64_t& c = slot(start);
  c = 1;
  f1_ = 1;
  total_ = 1;
}

void SiteLedger::visit(std::int64_t x) {
  std::int64_t& c = slot(x);
  lo_ = std::min(lo_, x);
  hi_ = std::max(hi_, x);
  ++c;
  ++total_;
  f1_ += (c == 1) ? 1 : (c == 2 ? -1 : 0);
}

std::int64_t& SiteLedger::slot(std::int64_t x) {
  return dense_slot(visits_, base_, x);
}

std::int64_t SiteLedger::visits(std::int64_t x) const {
  const std::int64_t idx = x - base_;
  if (visits_.empty() || idx < 0 ||
      idx >= static_cast<std::int64_t>(visits_.size()))
    return 0;
  return visits_[static_cast<std::size_t>(idx)];
}

void SiteLedger::for_each_count(
    const std::function<void(std::int64_t, std::int64_t)>& fn) const {
  for (std::int64_t x = lo_; x <= hi_; ++x) {
    const std::int64_t c = visits(x);
    if (c != 0) fn(x, c);
  }
}

RareEdgeCounts rare_edge_count(const WalkPath& path) {
  EdgeLedger ledger;
  const auto& pos = path.positions();
  for (std::size_t k = 0; k + 1 < pos.size(); ++k)
    ledger.extend(pos[k], pos[k + 1]);
  return {ledger.alpha(), ledger.alpha_plus(), ledger.alpha_minus()};
}

std::int64_t rare_site_count(const WalkPath& path) {
  SiteLedger ledger(path.start());
  const auto& pos = path.positions();
  for (std::size_t k = 1; k < pos.size(); ++k) ledger.visit(pos[k]);
  return ledger.f1();
}

std::optional<std::size_t> hitting_time(const WalkPath& path, std::int64_t x) {
  const auto& pos = path.positions();
  for (std::size_t k = 0; k < pos.size(); ++k)
    if (pos[k] == x) return k;
  return std::nullopt;
}

}  // namespace rarewalk
