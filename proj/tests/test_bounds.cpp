#include "doctest.h"

#include <algorithm>

#include "genlimit/bounds.hpp"
#include "genlimit/errors.hpp"
#include "genlimit/scenario.hpp"

using namespace genlimit;
using nlohmann::json;

namespace {

const BoundCheck* find(const BoundReport& r, const std::string& name) {
  for (const auto& b : r.bounds) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

std::string config_error_path(const json& config) {
  try {
    const Scenario s = scenario_from_json(config);
    verify(s, 0);
  } catch (const ConfigError& e) {
    return e.key_path();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("hybrid on the prefix tree of size 8 pinches at 3") {
  const auto s = scenario_from_json(json::parse(R"({"name": "lt8", "adversary": "littlestone:8",
      "generator": "hybrid", "horizon": 20})"));
  const auto r = verify(s, 0);
  CHECK(r.mistakes == 3);
  CHECK(r.all_satisfied());
  REQUIRE(find(r, "weighted_mistakes"));
  CHECK(find(r, "weighted_mistakes")->value == "3");
  REQUIRE(find(r, "cdim_last_mistake"));
  CHECK(find(r, "cdim_last_mistake")->value == "3");
  REQUIRE(find(r, "forced_mistakes"));
}

TEST_CASE("log-index generator on target 4 is bounded by 5") {
  const auto s = scenario_from_json(json::parse(R"({"name": "log4",
      "class": {"builder": "tradeoff", "n": 3, "max_index": 10},
      "adversary": {"adversary": "enumerator", "target": 4},
      "generator": {"generator": "weighted", "prior": "inverse_square", "growth": "pow2"},
      "horizon": 60})"));
  const auto r = verify(s, 0);
  REQUIRE(find(r, "weighted_mistakes"));
  CHECK(find(r, "weighted_mistakes")->value == "5");
  CHECK(r.all_satisfied());
}

TEST_CASE("greedy against the trade-off adversary with n=3, i*=4") {
  const auto s = scenario_from_json(json::parse(R"({"name": "g",
      "adversary": "tradeoff:3,4", "generator": "modified_greedy", "horizon": 60})"));
  const auto r = verify(s, 0);
  CHECK(r.mistakes >= 3);
  REQUIRE(find(r, "greedy_mistakes"));
  CHECK(find(r, "greedy_mistakes")->value == "6");
  CHECK(r.all_satisfied());
}

TEST_CASE("every applicable bound appears once") {
  const auto s = scenario_from_json(json::parse(R"({"name": "n",
      "adversary": {"adversary": "noisy", "base": "littlestone:8", "count": 2},
      "generator": {"generator": "lfd", "gamma": "1/2", "prior": "uniform", "growth": "constant"},
      "horizon": 30})"));
  const auto r = verify(s, 3);
  std::vector<std::string> names;
  for (const auto& b : r.bounds) names.push_back(b.name);
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  CHECK(r.noise == 2);
  CHECK(find(r, "noisy_finite"));
}

TEST_CASE("configuration errors name the offending key") {
  CHECK(config_error_path(json::parse(R"({"adversary": "venn:3", "generator": "hybrid"})")) == "horizon");
  CHECK(config_error_path(json::parse(R"({"adversary": "venn:3", "generator": "hybrid", "horizon": 5,
      "colour": 1})")) == "colour");
  CHECK(config_error_path(json::parse(R"({"adversary": "venn:3", "generator": "nope", "horizon": 5})")) ==
        "generator.generator");
  CHECK(config_error_path(json::parse(R"({"adversary": "venn:3", "horizon": 5,
      "generator": {"generator": "lfd", "gamma": "9/10"}})")) == "generator.gamma");
  CHECK(config_error_path(json::parse(R"({"adversary": {"adversary": "enumerator", "target": 9}, "horizon": 5,
      "class": {"builder": "random", "languages": 3}, "generator": "hybrid"})")) == "adversary.target");
  CHECK(config_error_path(json::parse(R"({"adversary": "venn:3", "horizon": 5, "generator": "hybrid",
      "class": {"builder": "random", "languages": 3}})")) == "class");
  CHECK(config_error_path(json::parse(R"({"adversary": {"adversary": "noisy", "base": "venn:3", "steps": [0]},
      "horizon": 5, "generator": "hybrid"})")) == "adversary.steps[0]");
  CHECK(config_error_path(json::parse(R"({"adversary": "venn:3", "horizon": 5, "generator": "hybrid",
      "seeds": [1, "x"]})")) == "seeds[1]");
}

TEST_CASE("report CSV layout") {
  const auto s = scenario_from_json(json::parse(R"({"name": "v", "adversary": "venn:2",
      "generator": "uniform_baseline", "horizon": 6, "seeds": [0, 1]})"));
  const auto reports = verify_all(s, std::nullopt, 2);
  REQUIRE(reports.size() == 2);
  const std::string csv = report_csv(reports);
  CHECK(csv.rfind("scenario,params,target_i,mistakes,last_mistake,noise,bound_name,bound_value,satisfied\n", 0) == 0);
  CHECK(csv.find("v,seed=0,") != std::string::npos);
  CHECK(csv.find("v,seed=1,") != std::string::npos);
  CHECK(csv == report_csv(verify_all(s, std::nullopt, 1)));

  BoundReport empty;
  empty.scenario = "a,b";
  empty.params = "seed=0";
  CHECK(report_csv({empty}).find("\"a,b\",seed=0,0,0,0,0,none,,1\n") != std::string::npos);
}

TEST_CASE("ranges and dotted paths") {
  const auto r = parse_range("adversary.target=2..4");
  CHECK(r.key == "adversary.target");
  CHECK(r.values == std::vector<json>{2, 3, 4});
  const auto l = parse_range("adversary.adversary=littlestone:2,littlestone:4");
  CHECK(l.values == std::vector<json>{"littlestone:2", "littlestone:4"});
  CHECK_THROWS_AS(parse_range("novalue"), ConfigError);
  CHECK_THROWS_AS(parse_range("k=5..2"), ConfigError);

  json config = json::parse(R"({"adversary": "littlestone:4", "generator": {"generator": "hybrid"}})");
  set_path(config, "adversary.adversary", "littlestone:8");
  CHECK(config["adversary"] == json::parse(R"({"adversary": "littlestone:8"})"));
  set_path(config, "generator.prior", "uniform");
  CHECK(config["generator"]["prior"] == "uniform");
  set_path(config, "horizon", 9);
  CHECK(config["horizon"] == 9);
}

TEST_CASE("sweeps run every tuple in order") {
  const json tmpl = json::parse(R"({"name": "sw", "class": {"builder": "tradeoff", "n": 3, "max_index": 10},
      "adversary": {"adversary": "enumerator", "target": 1},
      "generator": {"generator": "weighted", "prior": "inverse_square", "growth": "pow2"},
      "horizon": 40, "seeds": [0]})");
  const auto reports = sweep(tmpl, {parse_range("adversary.target=1..3"), parse_range("horizon=20,40")}, std::nullopt, 4);
  REQUIRE(reports.size() == 6);
  CHECK(reports[0].params == "adversary.target=1;horizon=20;seed=0");
  CHECK(reports[1].params == "adversary.target=1;horizon=40;seed=0");
  CHECK(reports[5].params == "adversary.target=3;horizon=40;seed=0");
  CHECK(reports[4].target_index == 3);
  for (const auto& r : reports) CHECK(r.all_satisfied());
  CHECK(report_csv(reports) == report_csv(sweep(tmpl, {parse_range("adversary.target=1..3"),
                                                       parse_range("horizon=20,40")}, std::nullopt, 1)));
}
