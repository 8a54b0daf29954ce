#pragma once

// Plays scenarios and checks the observed mistakes and last-mistake times
// against every bound that applies to the generator/adversary pair.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "genlimit/game.hpp"
#include "genlimit/scenario.hpp"

namespace genlimit {

struct BoundCheck {
  std::string name;
  std::string value;       // the theoretical side, as printed
  std::int64_t observed = 0;
  bool satisfied = true;
};

struct BoundReport {
  std::string scenario;
  std::string params;
  std::string generator;
  std::string adversary;
  std::size_t target_index = 0;
  std::size_t mistakes = 0;
  std::size_t last_mistake = 0;
  std::size_t noise = 0;
  std::uint64_t seed = 0;
  std::vector<BoundCheck> bounds;
  std::vector<std::string> notes;

  bool all_satisfied() const;
};

// Plays one game of the scenario under `seed` and evaluates its bounds.
// When `game` is given, the raw result is stored there.
BoundReport verify(const Scenario& scenario, std::uint64_t seed, const std::string& params = {},
                   GameResult* game = nullptr);

// One report per seed of the scenario (or just `seed_override`), in seed order.
std::vector<BoundReport> verify_all(const Scenario& scenario, std::optional<std::uint64_t> seed_override,
                                    unsigned threads);

// CSV columns: scenario,params,target_i,mistakes,last_mistake,noise,bound_name,bound_value,satisfied
void write_report_csv(std::ostream& out, const std::vector<BoundReport>& reports);
std::string report_csv(const std::vector<BoundReport>& reports);

struct SweepRange {
  std::string key;  // dotted path into the scenario JSON, e.g. "adversary.target"
  std::vector<nlohmann::json> values;
};

// "key=a..b" (inclusive integers) or "key=v1,v2,..." (integers or strings).
SweepRange parse_range(const std::string& text);

// Sets a dotted path in a JSON object, creating objects along the way.
void set_path(nlohmann::json& config, const std::string& dotted, const nlohmann::json& value);

std::vector<BoundReport> sweep(const nlohmann::json& scenario_template, const std::vector<SweepRange>& ranges,
                               std::optional<std::uint64_t> seed_override, unsigned threads);

// GENLIMIT_THREADS if set to a positive integer, else hardware concurrency.
unsigned default_thread_count();

}  // namespace genlimit
