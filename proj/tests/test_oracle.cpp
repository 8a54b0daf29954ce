#include "doctest.h"

#include "genlimit/classes.hpp"
#include "genlimit/errors.hpp"
#include "genlimit/oracle.hpp"
#include "oracles.hpp"

using namespace genlimit;

TEST_CASE("pattern cells partition a scan of the universe") {
  const auto cls = venn_class(3);
  const auto cells = pattern_cells(cls);
  // shared {0,1,2}, two private tails, the free residue
  REQUIRE(cells.size() == 4);
  std::uint64_t finite_total = 0;
  for (const auto& c : cells) {
    if (!c.infinite) finite_total += c.size;
  }
  CHECK(finite_total == 3);
}

TEST_CASE("minimax on the Venn class is one mistake") {
  for (std::uint64_t n : {1, 2, 3, 6, 20}) CHECK(minimax_oracle(venn_class(n), n + 2) == 1);
}

TEST_CASE("minimax on prefix-tree classes is floor(log2 n)") {
  CHECK(minimax_oracle(littlestone_class(2), 3) == 1);
  CHECK(minimax_oracle(littlestone_class(3), 3) == 1);
  CHECK(minimax_oracle(littlestone_class(4), 4) == 2);
}

TEST_CASE("a singleton class never forces a mistake") {
  const auto cls = LanguageClass::finite({Language({make_progression(0, 2), make_finite({1})})});
  CHECK(minimax_oracle(cls, 6) == 0);
}

TEST_CASE("quotiented search agrees with explicit-element search") {
  struct Case {
    LanguageClass cls;
    std::size_t depth;
  };
  std::vector<Case> cases{{venn_class(1), 3}, {venn_class(2), 3}, {littlestone_class(2), 2}, {littlestone_class(4), 2}};
  for (std::uint64_t seed = 0; seed < 6; ++seed) cases.push_back({random_class(3, 6, seed), 2});
  for (auto& c : cases) {
    oracle::NaiveMinimax naive(c.cls, c.depth);
    CHECK(minimax_oracle(c.cls, c.depth) == naive.solve());
  }
}

TEST_CASE("oracle limits") {
  CHECK_THROWS_AS(minimax_oracle(random_class(5, 10, 1), 2), ClassTooLarge);
  CHECK_THROWS_AS(minimax_oracle(tradeoff_class(tradeoff_layout(2, 3)), 2), ClassTooLarge);
  const auto wide = LanguageClass::finite({Language({make_progression(0, 5'000'011)})});
  CHECK_THROWS_AS(pattern_cells(wide), SearchBudgetExceeded);
}
