#include "genlimit/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "genlimit/errors.hpp"

namespace genlimit {

namespace {

constexpr std::uint64_t kScanLimit = 4'000'000;

std::uint32_t membership(const LanguageClass& cls, Element x) {
  std::uint32_t mask = 0;
  for (std::size_t i = 1; i <= cls.size(); ++i) {
    if (cls.at(i).contains(x)) mask |= 1U << (i - 1);
  }
  return mask;
}

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& key) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint64_t v : key) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

class Search {
 public:
  Search(std::vector<PatternCell> cells, std::size_t languages)
      : cells_(std::move(cells)), languages_(languages), used_(cells_.size(), 0), mistakes_(languages, 0) {}

  std::uint64_t solve(std::size_t depth) { return value((1U << languages_) - 1, depth); }

 private:
  bool available(std::size_t c) const { return cells_[c].infinite || used_[c] < cells_[c].size; }

  std::vector<std::uint64_t> key(std::uint32_t consistent, std::size_t remaining) const {
    std::vector<std::uint64_t> k;
    k.reserve(2 + cells_.size() + languages_);
    k.push_back(consistent);
    k.push_back(remaining);
    for (std::size_t c = 0; c < cells_.size(); ++c) k.push_back(cells_[c].infinite ? 0 : used_[c]);
    // Tallies of eliminated languages can no longer matter.
    for (std::size_t l = 0; l < languages_; ++l) k.push_back((consistent >> l) & 1U ? mistakes_[l] : 0);
    return k;
  }

  std::uint64_t value(std::uint32_t consistent, std::size_t remaining) {
    if (remaining == 0) {
      std::uint64_t worst = 0;
      for (std::size_t l = 0; l < languages_; ++l) {
        if ((consistent >> l) & 1U) worst = std::max(worst, mistakes_[l]);
      }
      return worst;
    }
    auto k = key(consistent, remaining);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    if (memo_.size() >= kOracleStateBudget) {
      throw SearchBudgetExceeded("minimax search exceeded " + std::to_string(kOracleStateBudget) + " states");
    }

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t g = 0; g < cells_.size(); ++g) {
      if (!available(g)) continue;
      for (std::size_t l = 0; l < languages_; ++l) mistakes_[l] += ((cells_[g].mask >> l) & 1U) ? 0 : 1;
      std::uint64_t worst = 0;
      for (std::size_t c = 0; c < cells_.size(); ++c) {
        const std::uint32_t next = consistent & cells_[c].mask;
        if (!available(c) || next == 0) continue;
        ++used_[c];
        worst = std::max(worst, value(next, remaining - 1));
        --used_[c];
      }
      for (std::size_t l = 0; l < languages_; ++l) mistakes_[l] -= ((cells_[g].mask >> l) & 1U) ? 0 : 1;
      best = std::min(best, worst);
    }
    memo_.emplace(std::move(k), best);
    return best;
  }

  std::vector<PatternCell> cells_;
  std::size_t languages_;
  std::vector<std::uint64_t> used_;
  std::vector<std::uint64_t> mistakes_;
  std::unordered_map<std::vector<std::uint64_t>, std::uint64_t, KeyHash> memo_;
};

}  // namespace

std::vector<PatternCell> pattern_cells(const LanguageClass& cls) {
  std::uint64_t period = 1;
  Element threshold = 0;
  for (std::size_t i = 1; i <= cls.size(); ++i) {
    const SetExpr& s = cls.at(i).set();
    for (const auto& p : s.progressions()) {
      period = std::lcm(period, p.stride);
      threshold = std::max(threshold, p.start);
      if (period > kScanLimit) throw SearchBudgetExceeded("membership period too long to scan");
    }
    if (!s.finite_part().empty()) threshold = std::max(threshold, s.finite_part().back() + 1);
  }
  if (threshold + period > kScanLimit) throw SearchBudgetExceeded("membership pattern too long to scan");

  std::map<std::uint32_t, PatternCell> cells;
  for (Element x = 0; x < threshold; ++x) {
    auto& cell = cells[membership(cls, x)];
    cell.mask = membership(cls, x);
    ++cell.size;
  }
  // Beyond the threshold every residue class mod `period` has a fixed pattern.
  for (Element x = threshold; x < threshold + period; ++x) {
    const std::uint32_t mask = membership(cls, x);
    auto& cell = cells[mask];
    cell.mask = mask;
    cell.infinite = true;
  }
  std::vector<PatternCell> out;
  for (auto& [mask, cell] : cells) out.push_back(cell);
  return out;
}

std::uint64_t minimax_oracle(const LanguageClass& cls, std::size_t depth) {
  if (!cls.is_finite() || cls.size() > kOracleMaxLanguages) {
    throw ClassTooLarge("minimax oracle handles at most " + std::to_string(kOracleMaxLanguages) +
                        " languages, got " + std::to_string(cls.size()));
  }
  Search search(pattern_cells(cls), cls.size());
  return search.solve(depth);
}

}  // namespace genlimit
