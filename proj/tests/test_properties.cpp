#include "doctest.h"

#include <random>

#include "genlimit/adversaries.hpp"
#include "genlimit/baseline_generators.hpp"
#include "genlimit/bounds.hpp"
#include "genlimit/classes.hpp"
#include "genlimit/lfd.hpp"
#include "genlimit/log_bound.hpp"
#include "genlimit/weighted_generator.hpp"
#include "oracles.hpp"

using namespace genlimit;
using nlohmann::json;

namespace {

json random_scenario(std::mt19937_64& rng, int k) {
  static const char* kGenerators[] = {"hybrid", "uniform_baseline", "modified_greedy", "lfd1", "lfd_half", "weighted"};
  const std::string gen = kGenerators[rng() % 6];
  json config;
  config["name"] = "prop" + std::to_string(k);
  config["horizon"] = 10 + rng() % 30;
  config["seeds"] = json::array({rng() % 1000});
  const auto languages = 2 + rng() % 5;
  const auto bound = 20 + rng() % 50;
  const auto class_seed = rng() % 100000;
  config["class"] = {{"builder", "random"}, {"languages", languages}, {"bound", bound}, {"seed", class_seed}};
  json base = {{"adversary", "shuffled"}, {"target", 1 + rng() % languages}, {"window", 1 + rng() % 5}};
  const bool noisy = gen == "lfd_half" && rng() % 2 == 0 &&
                     find_disjoint_progression(random_class(languages, bound, class_seed)).has_value();
  if (noisy) {
    config["adversary"] = {{"adversary", "noisy"}, {"base", base}, {"count", rng() % 4}, {"start", 1 + rng() % 5}};
  } else {
    config["adversary"] = base;
  }
  if (gen == "lfd1") {
    config["generator"] = {{"generator", "lfd"}, {"gamma", 1}, {"prior", "uniform"}, {"growth", "constant"}};
  } else if (gen == "lfd_half") {
    config["generator"] = {{"generator", "lfd"}, {"gamma", "1/2"}, {"prior", "uniform"}, {"growth", "constant"}};
  } else if (gen == "weighted") {
    config["generator"] = {{"generator", "weighted"}, {"prior", "inverse_square"}, {"growth", "pow2"}};
  } else {
    config["generator"] = gen;
  }
  return config;
}

}  // namespace

TEST_CASE("random scenarios satisfy every bound and replay identically") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 150; ++k) {
    const json config = random_scenario(rng, k);
    const Scenario s = scenario_from_json(config);
    GameResult g1, g2;
    const auto r1 = verify(s, s.seeds[0], {}, &g1);
    const auto r2 = verify(s, s.seeds[0], {}, &g2);
    INFO(config.dump());
    CHECK(r1.all_satisfied());
    CHECK(g1.transcript == g2.transcript);
    CHECK(report_csv({r1}) == report_csv({r2}));
    CHECK(r1.mistakes == total_mistakes(g1.transcript));
    for (const auto& b : r1.bounds) {
      if (b.name == "potential") CHECK(b.observed == 0);
    }
  }
}

TEST_CASE("under a consistent adversary the target weight doubles exactly on its mistakes") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const bool stream = trial % 2 == 1;
    const auto cls = stream ? tradeoff_class(tradeoff_layout(2, 12)) : random_class(5, 64, rng());
    const auto prior = stream ? PriorWeights::inverse_square() : PriorWeights::uniform(5);
    const auto growth = stream ? GrowthFunction::power_of_two() : GrowthFunction::fixed(5);
    const std::size_t target = 1 + rng() % (stream ? 8 : 5);
    WeightedGenerator gen(cls, prior, growth);
    ShuffledEnumeratorAdversary adv(cls, target, rng());
    const auto r = run_game(cls, gen, adv, {40});
    std::size_t doublings = 0;
    for (const auto& s : r.transcript.steps) {
      if (s.generator_mistake && growth(s.t) >= target) ++doublings;
    }
    CHECK(gen.state().weights[target - 1] == prior.weight(target) * pow2(static_cast<std::int64_t>(doublings)));
    CHECK(r.total_mistakes - doublings <= f_inverse(growth, target).value());
  }
}

TEST_CASE("hybrid plays inside the consistent intersection whenever it has room") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const auto cls = random_class(2 + rng() % 5, 40, rng());
    WeightedGenerator gen(cls, PriorWeights::uniform(cls.size()), GrowthFunction::fixed(cls.size()));
    ShuffledEnumeratorAdversary adv(cls, 1 + rng() % cls.size(), rng());
    std::vector<Element> generated, revealed;
    for (std::size_t t = 1; t <= 25; ++t) {
      const Element g = gen.propose(revealed);
      std::vector<std::size_t> consistent;
      for (std::size_t i = 1; i <= cls.size(); ++i) {
        if (std::all_of(revealed.begin(), revealed.end(), [&](Element x) { return cls.at(i).contains(x); })) {
          consistent.push_back(i);
        }
      }
      const std::set<Element> seen(revealed.begin(), revealed.end());
      bool room = false;
      for (Element x = 0; x < oracle::scan_limit(cls, cls.size(), seen.size()) && !room; ++x) {
        room = !seen.contains(x) && oracle::in_all(cls, consistent, x);
      }
      if (room) CHECK(oracle::in_all(cls, consistent, g));
      generated.push_back(g);
      const Element x = adv.reveal(GameView{t, generated, revealed});
      gen.observe(g, x);
      revealed.push_back(x);
    }
  }
}

TEST_CASE("LogBound admission is downward closed") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    LogBound b{make_rational(rng() % 10, 1 + rng() % 3), make_rational(rng() % 6, 1 + rng() % 4),
               make_rational(1 + rng() % 50, 1 + rng() % 5)};
    const auto f = b.floor();
    CHECK(b.admits(f));
    CHECK_FALSE(b.admits(f + 1));
    CHECK(b.admits(f - 1));
    CHECK(static_cast<long double>(f) <= b.value() + 1e-9L);
    CHECK(static_cast<long double>(f + 1) > b.value() - 1e-9L);
  }
}

TEST_CASE("LfD potential never grows beyond the introduced prior mass") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cls = tradeoff_class(tradeoff_layout(3, 8));
    ReductionGenerator gen(cls, make_rational(1 + rng() % 3, 4), PriorWeights::inverse_square(),
                           GrowthFunction::power_of_two());
    const auto source = *find_disjoint_progression(cls);
    std::set<std::size_t> steps;
    for (int k = 0; k < 3; ++k) steps.insert(1 + rng() % 30);
    NoisyAdversary adv(std::make_unique<ShuffledEnumeratorAdversary>(cls, 1 + rng() % 6, rng()),
                       NoiseSchedule{steps, source}, cls);
    run_game(cls, gen, adv, {40});
    CHECK(gen.learner().potential_holds());
  }
}
