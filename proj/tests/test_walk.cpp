#include "rarewalk/walk.hpp"

#include <algorithm>
#include <vector>

#include "doctest.h"
#include "rarewalk/rng.hpp"

using namespace rarewalk;

namespace {

WalkPath random_path(Xoshiro256pp& rng, std::size_t length) {
  std::vector<int> steps(length);
  for (auto& s : steps) s = (rng.next() & 1) ? 1 : -1;
  return WalkPath(steps);
}

// Independent parity check: L(y,n) is odd exactly when
// min(0, S_n) <= y < max(0, S_n).
bool parity_law_holds(const WalkPath& path) {
  EdgeLedger ledger;
  const auto& pos = path.positions();
  for (std::size_t k = 0; k + 1 < pos.size(); ++k)
    ledger.extend(pos[k], pos[k + 1]);
  const std::int64_t lo = std::min<std::int64_t>(0, path.terminal());
  const std::int64_t hi = std::max<std::int64_t>(0, path.terminal());
  if (ledger.empty()) return true;
  for (std::int64_t y = ledger.min_edge(); y <= ledger.max_edge(); ++y) {
    const bool odd = ledger.count(y) % 2 == 1;
    const bool in_range = lo <= y && y < hi;
    if (odd != in_range) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("extend maintains alpha incrementally") {
  EdgeLedger ledger;
  ledger.extend(0, 1);
  CHECK(ledger.alpha() == 1);
  CHECK(ledger.alpha_plus() == 1);
  CHECK(ledger.alpha_minus() == 0);

  ledger.extend(1, 0);
  CHECK(ledger.alpha() == 0);
  CHECK(ledger.count(0) == 2);

  EdgeLedger down;
  down.extend(0, -1);
  CHECK(down.alpha() == 1);
  CHECK(down.alpha_minus() == 1);
  down.extend(-1, 0);
  CHECK(down.alpha() == 0);
  CHECK(down.alpha_minus() == 0);

  CHECK_THROWS_AS(ledger.extend(0, 2), std::invalid_argument);
}

TEST_CASE("rare_edge_count on canonical sign patterns") {
  CHECK(rare_edge_count(WalkPath::from_signs("+++")) ==
        RareEdgeCounts{3, 3, 0});
  CHECK(rare_edge_count(WalkPath::from_signs("+-")) == RareEdgeCounts{0, 0, 0});
  CHECK(rare_edge_count(WalkPath::from_signs("+--")) ==
        RareEdgeCounts{1, 0, 1});
}

TEST_CASE("rare_site_count includes time zero") {
  CHECK(rare_site_count(WalkPath::from_signs("+")) == 2);
  CHECK(rare_site_count(WalkPath::from_signs("++--")) == 1);
  CHECK(rare_site_count(WalkPath::from_signs("+-")) == 1);
}

TEST_CASE("hitting_time") {
  CHECK(hitting_time(WalkPath::from_signs("+-+"), 1) == 1);
  CHECK(hitting_time(WalkPath::from_signs("--"), 0) == 0);  // sigma_0 = 0
  CHECK(!hitting_time(WalkPath::from_signs("-+"), 1).has_value());
}

TEST_CASE("ledger invariants on random paths") {
  Xoshiro256pp rng(20240817);
  for (int trial = 0; trial < 400; ++trial) {
    const WalkPath path = random_path(rng, 1 + (rng.next() % 256));
    EdgeLedger ledger;
    std::int64_t prev_alpha = 0;
    std::int64_t total = 0;
    const auto& pos = path.positions();
    for (std::size_t k = 0; k + 1 < pos.size(); ++k) {
      ledger.extend(pos[k], pos[k + 1]);
      CHECK(std::llabs(ledger.alpha() - prev_alpha) <= 1);
      prev_alpha = ledger.alpha();
    }
    ledger.for_each_count([&](std::int64_t, std::int64_t c) { total += c; });
    CHECK(total == static_cast<std::int64_t>(path.length()));
    CHECK(ledger.alpha() == ledger.alpha_plus() + ledger.alpha_minus());
    CHECK(ledger.alpha_plus() * ledger.alpha_minus() == 0);
    CHECK(parity_law_holds(path));
    if (path.terminal() == 0) CHECK(ledger.alpha() == 0);
    if (ledger.alpha_plus() > 0) CHECK(path.terminal() >= 1);
    if (ledger.alpha_minus() > 0) CHECK(path.terminal() <= -1);

    // Batch equals incremental.
    const RareEdgeCounts batch = rare_edge_count(path);
    CHECK(batch.alpha == ledger.alpha());
    CHECK(batch.alpha_plus == ledger.alpha_plus());
    CHECK(batch.alpha_minus == ledger.alpha_minus());

    // Negating steps swaps the sides and preserves alpha and f1.
    const WalkPath mirrored = path.negated();
    const RareEdgeCounts swapped = rare_edge_count(mirrored);
    CHECK(swapped.alpha == batch.alpha);
    CHECK(swapped.alpha_plus == batch.alpha_minus);
    CHECK(swapped.alpha_minus == batch.alpha_plus);
    CHECK(rare_site_count(mirrored) == rare_site_count(path));
  }
}

TEST_CASE("incremental bookkeeping equals a terminal recount, 1e5 paths") {
  Xoshiro256pp rng(0xfeedbeef);
  for (int trial = 0; trial < 100000; ++trial) {
    EdgeLedger ledger;
    std::int64_t pos = 0;
    const int length = 1 + static_cast<int>(rng.next() % 64);
    for (int i = 0; i < length; ++i) {
      const std::int64_t next = pos + ((rng.next() & 1) ? 1 : -1);
      ledger.extend(pos, next);
      pos = next;
    }
    // Recount rare edges from the raw counts, independently of the running
    // alpha bookkeeping.
    std::int64_t alpha = 0, plus = 0, minus = 0, mass = 0;
    ledger.for_each_count([&](std::int64_t y, std::int64_t c) {
      mass += c;
      if (c == 1) {
        ++alpha;
        (y >= 0 ? plus : minus) += 1;
      }
    });
    REQUIRE(mass == length);
    REQUIRE(alpha == ledger.alpha());
    REQUIRE(plus == ledger.alpha_plus());
    REQUIRE(minus == ledger.alpha_minus());
  }
}

TEST_CASE("site ledger counts every time index") {
  Xoshiro256pp rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const WalkPath path = random_path(rng, 1 + (rng.next() % 64));
    SiteLedger sites(path.start());
    for (std::size_t k = 1; k < path.positions().size(); ++k)
      sites.visit(path.position(k));
    CHECK(sites.total_visits() ==
          static_cast<std::int64_t>(path.length()) + 1);
    CHECK(sites.f1() == rare_site_count(path));
  }
}

TEST_CASE("paths validate their construction") {
  CHECK_THROWS_AS(WalkPath({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(WalkPath::from_signs("+x"), std::invalid_argument);
  CHECK_THROWS_AS(path_from_positions({0, 2}), std::invalid_argument);
  CHECK(WalkPath().length() == 0);
  CHECK(WalkPath().position(0) == 0);
}
