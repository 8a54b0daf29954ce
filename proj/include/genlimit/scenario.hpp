#pragma once

// Scenario files: a class, a generator, an adversary and a horizon, all in
// JSON. Example:
//   {"name": "hybrid-littlestone-8",
//    "adversary": {"adversary": "littlestone:8"},
//    "generator": {"generator": "weighted", "prior": "uniform", "growth": "constant"},
//    "horizon": 40, "seeds": [0, 1, 2]}

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "genlimit/game.hpp"
#include "genlimit/lang_algebra.hpp"
#include "genlimit/rational.hpp"
#include "genlimit/weighted_generator.hpp"

namespace genlimit {

struct Scenario {
  std::string name;
  nlohmann::json config;
  std::size_t horizon = 1;
  std::vector<std::uint64_t> seeds{0};
  bool allow_repeats_noisy = false;
};

Scenario scenario_from_json(const nlohmann::json& config, const std::string& fallback_name = "scenario");
// Reads and parses a file; I/O and syntax problems become ConfigError.
nlohmann::json read_json_file(const std::string& path);
Scenario load_scenario(const std::string& path);

struct GeneratorSpec {
  enum class Kind { kWeighted, kUniformBaseline, kModifiedGreedy, kLfd, kCommitted };

  Kind kind = Kind::kWeighted;
  PriorWeights prior;
  GrowthFunction growth;
  Rational gamma = 1;
  std::size_t index = 1;  // committed generator only
};

GeneratorSpec generator_spec_from_json(const nlohmann::json& config, const LanguageClass& cls,
                                       const std::string& path = "generator");
std::unique_ptr<Generator> make_generator(const GeneratorSpec& spec, const LanguageClass& cls);

struct AdversaryBuild {
  std::unique_ptr<Adversary> adversary;
  LanguageClass cls;
};

// `cls` is the scenario's class, if it has one; venn, littlestone and
// tradeoff adversaries build their own.
AdversaryBuild make_adversary(const nlohmann::json& config, const std::optional<LanguageClass>& cls,
                              std::uint64_t seed, const std::string& path = "adversary");

struct GameSetup {
  LanguageClass cls;
  GeneratorSpec spec;
  std::unique_ptr<Generator> generator;
  std::unique_ptr<Adversary> adversary;
  GameOptions options;
};

GameSetup build_game(const Scenario& scenario, std::uint64_t seed);

}  // namespace genlimit
