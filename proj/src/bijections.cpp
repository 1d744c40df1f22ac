#include "rarewalk/bijections.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "rarewalk/rational.hpp"

namespace rarewalk {

std::optional<std::size_t> last_visit_time(const WalkPath& path,
                                           std::int64_t level) {
  const auto& pos = path.positions();
  for (std::size_t k = pos.size() - 1; k >= 1; --k)
    if (pos[k] == level) return k;
  return std::nullopt;
}

WalkPath flip_after_last_visit(const WalkPath& path) {
  const auto sigma = last_visit_time(path, 1);
  if (!sigma)
    throw std::invalid_argument(
        "flip_after_last_visit: path never visits level 1");
  std::vector<std::int64_t> pos = path.positions();
  for (std::size_t k = *sigma + 1; k < pos.size(); ++k) pos[k] = 2 - pos[k];
  return path_from_positions(std::move(pos));
}

WalkPath reflect_before_first_hit(const WalkPath& path, std::int64_t level) {
  const auto& src = path.positions();
  std::size_t sigma = src.size();
  for (std::size_t k = 0; k < src.size(); ++k)
    if (src[k] == level) {
      sigma = k;
      break;
    }
  if (sigma == src.size())
    throw std::invalid_argument(
        "reflect_before_first_hit: path never hits the level");
  std::vector<std::int64_t> pos = src;
  for (std::size_t k = 0; k <= sigma; ++k) pos[k] = 2 * level - pos[k];
  return path_from_positions(std::move(pos));
}

namespace {

// Per-path facts for the flip sets, computed from a step code.
struct PathFacts {
  std::int64_t terminal = 0;
  std::int64_t edge0_crossings = 0;
  std::size_t sigma = 0;  // last k >= 1 with S_k = 1; 0 if none
};

PathFacts facts_of(std::uint32_t code, int len, std::int64_t start) {
  PathFacts f;
  std::int64_t pos = start;
  for (int i = 0; i < len; ++i) {
    const std::int64_t next = pos + (((code >> i) & 1) ? 1 : -1);
    if (std::min(pos, next) == 0) ++f.edge0_crossings;
    pos = next;
    if (pos == 1) f.sigma = static_cast<std::size_t>(i) + 1;
  }
  f.terminal = pos;
  return f;
}

WalkPath path_of(std::uint32_t code, int len, std::int64_t start) {
  std::vector<std::int64_t> pos(static_cast<std::size_t>(len) + 1);
  pos[0] = start;
  for (int i = 0; i < len; ++i)
    pos[i + 1] = pos[i] + (((code >> i) & 1) ? 1 : -1);
  return path_from_positions(std::move(pos));
}

std::uint32_t code_of(const WalkPath& path) {
  std::uint32_t code = 0;
  for (std::size_t i = 0; i < path.length(); ++i)
    if (path.step(i) == 1) code |= (std::uint32_t{1} << i);
  return code;
}

std::int64_t edge0_crossings(const WalkPath& path) {
  std::int64_t c = 0;
  const auto& pos = path.positions();
  for (std::size_t k = 0; k + 1 < pos.size(); ++k)
    if (std::min(pos[k], pos[k + 1]) == 0) ++c;
  return c;
}

bool first_hit_at_most(const WalkPath& path, std::int64_t level,
                       std::size_t bound) {
  const auto& pos = path.positions();
  for (std::size_t k = 0; k <= bound && k < pos.size(); ++k)
    if (pos[k] == level) return true;
  return false;
}

InjectionClaim map_claim(const std::string& name,
                         const std::vector<std::uint32_t>& domain,
                         const std::unordered_set<std::uint32_t>& target,
                         int len, std::int64_t start,
                         bool (*image_ok)(const WalkPath&)) {
  InjectionClaim claim;
  claim.name = name;
  claim.count_left = domain.size();
  claim.count_right = target.size();
  std::unordered_set<std::uint32_t> images;
  bool ok = true;
  std::string detail;
  for (std::uint32_t code : domain) {
    const WalkPath original = path_of(code, len, start);
    const WalkPath mapped = flip_after_last_visit(original);
    const std::uint32_t image = code_of(mapped);
    if (!image_ok(mapped) || target.find(image) == target.end()) {
      ok = false;
      detail = "image outside the claimed target set";
      break;
    }
    if (!images.insert(image).second) {
      ok = false;
      detail = "map not injective";
      break;
    }
    if (!(flip_after_last_visit(mapped) == original)) {
      ok = false;
      detail = "map not an involution";
      break;
    }
  }
  if (ok && images.size() != target.size()) {
    ok = false;
    detail = "map not onto the target set";
  }
  claim.pass = ok;
  claim.detail = ok ? "bijective with exact image membership" : detail;
  return claim;
}

bool image_is_l2(const WalkPath& p) { return edge0_crossings(p) == 2; }

bool image_is_l1_sigma_early(const WalkPath& p) {
  if (edge0_crossings(p) != 1) return false;
  const auto sigma = last_visit_time(p, 1);
  return sigma && *sigma < p.length();
}

}  // namespace

InjectionReport verify_injection_sets(std::int64_t n_plus_1) {
  if (n_plus_1 < 2 || n_plus_1 > 20)
    throw std::invalid_argument(
        "verify_injection_sets requires 2 <= n_plus_1 <= 20");
  const int len = static_cast<int>(n_plus_1);
  const std::int64_t n = n_plus_1 - 1;

  InjectionReport report;
  report.n_plus_1 = n_plus_1;

  // Flip sets: length n+1, start 0, first step up.
  std::vector<std::uint32_t> set_l1;  // L(0,n+1)=1, sigma < n+1
  std::vector<std::uint32_t> set_l2_vec;
  std::unordered_set<std::uint32_t> set_l1_hash, set_l2;
  for (std::uint32_t suffix = 0; suffix < (std::uint32_t{1} << (len - 1));
       ++suffix) {
    const std::uint32_t code = (suffix << 1) | 1u;  // X1 = +1
    const PathFacts f = facts_of(code, len, 0);
    if (f.edge0_crossings == 1 &&
        f.sigma < static_cast<std::size_t>(len)) {
      set_l1.push_back(code);
      set_l1_hash.insert(code);
    } else if (f.edge0_crossings == 2) {
      set_l2_vec.push_back(code);
      set_l2.insert(code);
    }
  }

  report.claims.push_back(map_claim("flip maps {L=1, X1=+1, sigma<n+1} onto {L=2, X1=+1}",
                                    set_l1, set_l2, len, 0, image_is_l2));
  report.claims.push_back(map_claim("flip maps {L=2, X1=+1} onto {L=1, X1=+1, sigma<n+1}",
                                    set_l2_vec, set_l1_hash, len, 0,
                                    image_is_l1_sigma_early));
  {
    InjectionClaim claim;
    claim.name = "cardinality identity |{L=1, X1=+1, sigma<n+1}| = |{L=2, X1=+1}|";
    claim.count_left = set_l1.size();
    claim.count_right = set_l2.size();
    claim.pass = set_l1.size() == set_l2.size();
    claim.detail = claim.pass ? "path counts agree" : "path counts differ";
    report.claims.push_back(claim);
  }

  // Reflection sets: length n, starts 0 and -2.
  std::vector<std::uint32_t> bridge_hit;  // start 0, S_n=0, sigma_{-1} <= n
  std::unordered_set<std::uint32_t> from_minus2;
  std::uint64_t nonneg_bridges = 0;
  if (n >= 1) {
    for (std::uint32_t code = 0; code < (std::uint32_t{1} << n); ++code) {
      const WalkPath p0 = path_of(code, static_cast<int>(n), 0);
      if (p0.terminal() == 0) {
        if (first_hit_at_most(p0, -1, static_cast<std::size_t>(n)))
          bridge_hit.push_back(code);
        else
          ++nonneg_bridges;  // S_n = 0 and never below 0
      }
      const WalkPath pm2 = path_of(code, static_cast<int>(n), -2);
      if (pm2.terminal() == 0) from_minus2.insert(code);
    }
  }

  const BigInt expected_refl =
      (n % 2 == 0) ? binomial(static_cast<std::uint64_t>(n),
                              static_cast<std::uint64_t>((n + 2) / 2))
                   : BigInt(0);
  {
    InjectionClaim claim;
    claim.name = "reflection maps {start 0, S_n=0, sigma_{-1}<=n} onto {start -2, S_n=0}";
    claim.count_left = bridge_hit.size();
    claim.count_right = from_minus2.size();
    bool ok = true;
    std::string detail;
    std::unordered_set<std::uint32_t> images;
    for (std::uint32_t code : bridge_hit) {
      const WalkPath original = path_of(code, static_cast<int>(n), 0);
      const WalkPath mapped = reflect_before_first_hit(original, -1);
      if (mapped.start() != -2 || mapped.terminal() != 0) {
        ok = false;
        detail = "image not a start -2 bridge";
        break;
      }
      const std::uint32_t image = code_of(mapped);
      if (from_minus2.find(image) == from_minus2.end() ||
          !images.insert(image).second) {
        ok = false;
        detail = "image collision or outside target";
        break;
      }
      if (!(reflect_before_first_hit(mapped, -1) == original)) {
        ok = false;
        detail = "map not an involution";
        break;
      }
    }
    if (ok && images.size() != from_minus2.size()) {
      ok = false;
      detail = "map not onto";
    }
    claim.pass = ok;
    claim.detail = ok ? "bijective" : detail;
    report.claims.push_back(claim);
  }
  {
    InjectionClaim claim;
    claim.name = "|{start -2, S_n=0}| = binom(n, (n+2)/2)";
    claim.count_left = from_minus2.size();
    claim.count_right = expected_refl.fits_ulong_p() ? expected_refl.get_ui() : 0;
    claim.pass = BigInt(static_cast<unsigned long>(from_minus2.size())) ==
                 expected_refl;
    claim.detail = claim.pass ? "binomial count matches" : "count mismatch";
    report.claims.push_back(claim);
  }
  {
    // Consequence of the two counts: the nonnegative bridges obey
    // binom(n, n/2) - binom(n, (n+2)/2) for even n.
    InjectionClaim claim;
    claim.name = "#{S_j>=0 all j, S_n=0} = binom(n,n/2) - binom(n,(n+2)/2)";
    const BigInt expected_nonneg =
        (n % 2 == 0)
            ? binomial(static_cast<std::uint64_t>(n),
                       static_cast<std::uint64_t>(n / 2)) -
                  expected_refl
            : BigInt(0);
    claim.count_left = nonneg_bridges;
    claim.count_right =
        expected_nonneg.fits_ulong_p() ? expected_nonneg.get_ui() : 0;
    claim.pass =
        BigInt(static_cast<unsigned long>(nonneg_bridges)) == expected_nonneg;
    claim.detail = claim.pass ? "difference identity holds" : "count mismatch";
    report.claims.push_back(claim);
  }

  report.all_pass = std::all_of(report.claims.begin(), report.claims.end(),
                                [](const InjectionClaim& c) { return c.pass; });
  return report;
}

}  // namespace rarewalk
