#include "doctest.h"

#include <set>

#include "genlimit/adversaries.hpp"
#include "genlimit/baseline_generators.hpp"
#include "genlimit/classes.hpp"
#include "genlimit/errors.hpp"
#include "genlimit/weighted_generator.hpp"
#include "oracles.hpp"

using namespace genlimit;

namespace {

// Plays a fixed list of elements, then the smallest unseen element.
class Fixed : public Generator {
 public:
  explicit Fixed(std::vector<Element> moves) : moves_(std::move(moves)) {}
  std::string id() const override { return "fixed"; }
  Element propose(std::span<const Element> revealed) override {
    std::set<Element> seen(revealed.begin(), revealed.end());
    if (next_ < moves_.size() && !seen.contains(moves_[next_])) return moves_[next_++];
    ++next_;
    Element x = 0;
    while (seen.contains(x)) ++x;
    return x;
  }
  void observe(Element, Element) override {}

 private:
  std::vector<Element> moves_;
  std::size_t next_ = 0;
};

}  // namespace

TEST_CASE("enumerators reveal their language in order") {
  const auto cls = random_class(5, 64, 3);
  for (std::size_t i = 1; i <= 5; ++i) {
    EnumeratorAdversary adv(cls, i);
    Fixed gen({});
    const auto r = run_game(cls, gen, adv, {30});
    Element prev = 0;
    for (const auto& s : r.transcript.steps) {
      CHECK(cls.at(i).contains(s.revealed));
      if (s.t > 1) CHECK(s.revealed > prev);
      prev = s.revealed;
    }
    CHECK(r.noise_count == 0);
  }
}

TEST_CASE("shuffled enumerators stay consistent and are seed-deterministic") {
  const auto cls = random_class(5, 64, 8);
  auto play = [&](std::uint64_t seed) {
    ShuffledEnumeratorAdversary adv(cls, 2, seed);
    Fixed gen({});
    return run_game(cls, gen, adv, {40});
  };
  const auto a = play(1);
  const auto b = play(1);
  const auto c = play(2);
  CHECK(a.transcript == b.transcript);
  CHECK(a.noise_count == 0);
  CHECK_FALSE(a.transcript == c.transcript);
}

TEST_CASE("the Venn adversary forces a mistake at n+1 against any generator") {
  for (std::uint64_t n : {1, 3, 6}) {
    for (std::vector<Element> moves : {std::vector<Element>{}, std::vector<Element>{100, 101, 102, 103, 104, 105, 106},
                                       std::vector<Element>{n, n + 3, n + 6, n + 9, n + 12, n + 15, n + 18}}) {
      VennAdversary adv(n);
      Fixed gen(moves);
      const auto r = run_game(adv.language_class(), gen, adv, {n + 4});
      CHECK(r.transcript.steps[n].generator_mistake);
      CHECK(r.last_mistake_time >= n + 1);
      CHECK(r.noise_count == 0);
    }
  }
}

TEST_CASE("the prefix-tree adversary forces one mistake per level") {
  for (std::uint64_t n : {2, 3, 4, 8, 16, 20}) {
    const auto layout = littlestone_layout(n);
    for (int variant = 0; variant < 3; ++variant) {
      LittlestoneAdversary adv(n);
      std::unique_ptr<Generator> gen;
      if (variant == 0) gen = std::make_unique<Fixed>(std::vector<Element>{});
      if (variant == 1) gen = std::make_unique<Fixed>(std::vector<Element>{0, 1, 2, 3, 4, 5, 6, 7});
      if (variant == 2) {
        gen = std::make_unique<WeightedGenerator>(adv.language_class(), PriorWeights::uniform(n),
                                                  GrowthFunction::fixed(n));
      }
      const auto r = run_game(adv.language_class(), *gen, adv, {layout.m + 6});
      for (unsigned t = 1; t <= layout.m; ++t) CHECK(r.transcript.steps[t - 1].generator_mistake);
      CHECK(r.noise_count == 0);
      CHECK(r.transcript.target_index <= layout.leaves());
    }
  }
}

TEST_CASE("trade-off adversary halts by rule 1 at the first boundary miss") {
  // The committed generator plays L_1's row forever: at t_2 it is inside L_1,
  // at t_3 it is outside L_2, so rule 1 fires at boundary 3 with target L_2.
  TradeoffAdversary adv(3, 4);
  const auto cls = adv.language_class();
  CommittedGenerator gen(cls, 1);
  const auto r = run_game(cls, gen, adv, {60});
  CHECK(adv.halt() == TradeoffAdversary::Halt::kRule1);
  CHECK(adv.halt_boundary() == 3);
  CHECK(adv.halt_step() == 1 + 3 + 9);
  CHECK(r.transcript.target_index == 2);
  CHECK(r.transcript.steps[adv.halt_step() - 1].generator_mistake);
  CHECK(r.noise_count == 0);
}

TEST_CASE("trade-off adversary reaches rule 2 against Modified-Greedy") {
  TradeoffAdversary adv(3, 4);
  const auto cls = adv.language_class();
  ModifiedGreedyGenerator gen(cls);
  const auto r = run_game(cls, gen, adv, {60});
  CHECK(adv.halt() == TradeoffAdversary::Halt::kRule2);
  CHECK(r.transcript.target_index == 4);
  CHECK(r.total_mistakes >= 3);
  CHECK(r.noise_count == 0);
}

TEST_CASE("noise injection keeps the base stream intact and counts exactly") {
  const auto cls = tradeoff_class(tradeoff_layout(3, 8));
  const auto source = find_disjoint_progression(cls);
  REQUIRE(source);
  NoiseSchedule schedule{{2, 5, 6}, *source};
  NoisyAdversary adv(std::make_unique<EnumeratorAdversary>(cls, 4), schedule, cls);
  Fixed gen({});
  const auto r = run_game(cls, gen, adv, {20});
  CHECK(r.noise_count == 3);
  CHECK(adv.injected() == 3);
  std::vector<Element> base;
  for (const auto& s : r.transcript.steps) {
    const bool scheduled = s.t == 2 || s.t == 5 || s.t == 6;
    CHECK(s.adversary_noise == scheduled);
    if (!scheduled) base.push_back(s.revealed);
  }
  // the base enumerator's reveals arrive in order without gaps
  EnumeratorAdversary plain(cls, 4);
  Fixed gen2({});
  const auto clean = run_game(cls, gen2, plain, {17});
  for (std::size_t k = 0; k < base.size(); ++k) CHECK(base[k] == clean.transcript.steps[k].revealed);
}

TEST_CASE("a noise source meeting the class is rejected") {
  const auto cls = tradeoff_class(tradeoff_layout(3, 8));
  NoiseSchedule schedule{{1}, make_progression(0, 1)};
  CHECK_THROWS_AS(NoisyAdversary(std::make_unique<EnumeratorAdversary>(cls, 2), schedule, cls), NoiseSourceCollision);
}
