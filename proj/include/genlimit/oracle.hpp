#pragma once

// Exhaustive game-tree search for the minimax number of mistakes on tiny
// finite classes. Elements are grouped by membership pattern: two unseen
// elements with the same pattern are interchangeable for both players, so a
// state is the per-pattern count of revealed elements plus the mistake tally
// against each language. The adversary names its target at the horizon,
// which must contain every revealed element.

#include <cstdint>
#include <vector>

#include "genlimit/lang_algebra.hpp"

namespace genlimit {

struct PatternCell {
  std::uint32_t mask = 0;  // bit i - 1 set iff the cell lies in L_i
  bool infinite = false;
  std::uint64_t size = 0;  // meaningful only when finite
};

inline constexpr std::size_t kOracleMaxLanguages = 4;
inline constexpr std::uint64_t kOracleStateBudget = 4'000'000;

// Nonempty membership cells, including the cell outside every language.
// Throws SearchBudgetExceeded when the periodic part is too long to scan.
std::vector<PatternCell> pattern_cells(const LanguageClass& cls);

// Throws ClassTooLarge beyond kOracleMaxLanguages languages and
// SearchBudgetExceeded beyond kOracleStateBudget memoized states.
std::uint64_t minimax_oracle(const LanguageClass& cls, std::size_t depth);

}  // namespace genlimit
