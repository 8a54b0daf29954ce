#include "genlimit/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "genlimit/adversaries.hpp"
#include "genlimit/baseline_generators.hpp"
#include "genlimit/classes.hpp"
#include "genlimit/config_util.hpp"
#include "genlimit/errors.hpp"
#include "genlimit/lfd.hpp"

namespace genlimit {

namespace {

using nlohmann::json;

// "littlestone:8" -> ("littlestone", "8"); "enumerator" -> ("enumerator", "")
std::pair<std::string, std::string> split_kind(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return {text, ""};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

std::vector<std::uint64_t> parse_uint_list(const std::string& text, const std::string& path) {
  std::vector<std::uint64_t> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError(path, "expected a non-negative integer, got '" + part + "'");
    }
  }
  return out;
}

// Parameter from an explicit key, else from the i-th value after the colon.
std::uint64_t param(const json& obj, const std::string& key, const std::vector<std::uint64_t>& inline_values,
                    std::size_t position, const std::string& path) {
  if (auto v = config::optional_uint(obj, key, path)) return *v;
  if (position < inline_values.size()) return inline_values[position];
  throw ConfigError(path + "." + key, "missing key");
}

json as_object(const json& j, const std::string& field) {
  if (j.is_string()) return json{{field, j.get<std::string>()}};
  return j;
}

Rational parse_gamma(const json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path, "gamma must be an integer or a string such as \"1/2\"");
}

GrowthFunction parse_growth(const json& obj, const LanguageClass& cls, const std::string& path) {
  const std::string text = obj.value("growth", std::string("constant"));
  const auto [kind, rest] = split_kind(text);
  if (kind == "pow2") {
    if (!rest.empty()) throw ConfigError(path + ".growth", "pow2 takes no argument");
    return GrowthFunction::power_of_two();
  }
  if (kind == "constant") {
    if (rest.empty()) return GrowthFunction::fixed(cls.size());
    const auto values = parse_uint_list(rest, path + ".growth");
    if (values.size() != 1 || values[0] == 0) throw ConfigError(path + ".growth", "constant:N needs N >= 1");
    return GrowthFunction::fixed(values[0]);
  }
  throw ConfigError(path + ".growth", "unknown growth '" + text + "' (expected constant[:N] or pow2)");
}

PriorWeights parse_prior(const json& obj, const LanguageClass& cls, const std::string& path) {
  const std::string text = obj.value("prior", std::string("uniform"));
  if (text == "uniform") return PriorWeights::uniform(cls.size());
  if (text == "inverse_square") return PriorWeights::inverse_square();
  throw ConfigError(path + ".prior", "unknown prior '" + text + "' (expected uniform or inverse_square)");
}

std::set<std::size_t> noise_steps(const json& obj, const std::string& path) {
  std::set<std::size_t> steps;
  if (obj.contains("steps")) {
    const auto& list = obj.at("steps");
    if (!list.is_array()) throw ConfigError(path + ".steps", "expected an array");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const auto s = config::as_uint(list[k], path + ".steps[" + std::to_string(k) + "]");
      if (s == 0) throw ConfigError(path + ".steps[" + std::to_string(k) + "]", "steps are 1-based");
      steps.insert(s);
    }
    return steps;
  }
  const auto count = config::optional_uint(obj, "count", path).value_or(0);
  const auto start = config::optional_uint(obj, "start", path).value_or(1);
  const auto spacing = config::optional_uint(obj, "spacing", path).value_or(2);
  if (start == 0 || spacing == 0) throw ConfigError(path, "start and spacing must be >= 1");
  for (std::uint64_t j = 0; j < count; ++j) steps.insert(start + j * spacing);
  return steps;
}

std::size_t target_index(const json& obj, const LanguageClass& cls, const std::string& path) {
  const auto i = config::require_uint(obj, "target", path);
  if (i < 1 || i > cls.size()) {
    throw ConfigError(path + ".target", "target " + std::to_string(i) + " outside [1, " +
                                            std::to_string(cls.size()) + "]");
  }
  return i;
}

}  // namespace

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, e.what());
  }
}

Scenario scenario_from_json(const nlohmann::json& config, const std::string& fallback_name) {
  static const std::set<std::string> kKeys = {"name",    "description", "class",  "generator",
                                              "adversary", "horizon",   "seeds", "allow_repeats_noisy"};
  if (!config.is_object()) throw ConfigError("scenario", "must be a JSON object");
  for (const auto& [key, _] : config.items()) {
    if (!kKeys.contains(key)) throw ConfigError(key, "unknown scenario key");
  }
  Scenario s;
  s.config = config;
  s.name = config.value("name", fallback_name);
  if (!config.contains("horizon")) throw ConfigError("horizon", "missing key");
  s.horizon = config::as_uint(config.at("horizon"), "horizon");
  if (s.horizon == 0) throw ConfigError("horizon", "must be >= 1");
  if (!config.contains("generator")) throw ConfigError("generator", "missing key");
  if (!config.contains("adversary")) throw ConfigError("adversary", "missing key");
  if (config.contains("seeds")) {
    const auto& list = config.at("seeds");
    if (!list.is_array() || list.empty()) throw ConfigError("seeds", "expected a nonempty array");
    s.seeds.clear();
    for (std::size_t k = 0; k < list.size(); ++k) {
      s.seeds.push_back(config::as_uint(list[k], "seeds[" + std::to_string(k) + "]"));
    }
  }
  if (config.contains("allow_repeats_noisy")) {
    if (!config.at("allow_repeats_noisy").is_boolean()) throw ConfigError("allow_repeats_noisy", "expected a boolean");
    s.allow_repeats_noisy = config.at("allow_repeats_noisy").get<bool>();
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (const auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return scenario_from_json(read_json_file(path), stem);
}

GeneratorSpec generator_spec_from_json(const nlohmann::json& raw, const LanguageClass& cls,
                                       const std::string& path) {
  const json config = as_object(raw, "generator");
  const std::string kind = config::require_string(config, "generator", path);
  GeneratorSpec spec;
  if (kind == "weighted" || kind == "hybrid") {
    spec.kind = GeneratorSpec::Kind::kWeighted;
    spec.prior = kind == "hybrid" ? PriorWeights::uniform(cls.size()) : parse_prior(config, cls, path);
    spec.growth = kind == "hybrid" ? GrowthFunction::fixed(cls.size()) : parse_growth(config, cls, path);
  } else if (kind == "uniform_baseline") {
    if (!cls.is_finite()) throw ConfigError(path, "uniform_baseline needs a finite class");
    spec.kind = GeneratorSpec::Kind::kUniformBaseline;
  } else if (kind == "modified_greedy") {
    spec.kind = GeneratorSpec::Kind::kModifiedGreedy;
  } else if (kind == "lfd") {
    spec.kind = GeneratorSpec::Kind::kLfd;
    spec.prior = parse_prior(config, cls, path);
    spec.growth = parse_growth(config, cls, path);
    spec.gamma = config.contains("gamma") ? parse_gamma(config.at("gamma"), path + ".gamma") : Rational(1);
    try {
      validate_gamma(spec.gamma);
    } catch (const InvalidGamma& e) {
      throw ConfigError(path + ".gamma", e.what());
    }
  } else if (kind == "committed") {
    spec.kind = GeneratorSpec::Kind::kCommitted;
    spec.index = config::require_uint(config, "index", path);
    if (spec.index < 1 || spec.index > cls.size()) throw ConfigError(path + ".index", "outside the class");
  } else {
    throw ConfigError(path + ".generator", "unknown generator '" + kind + "'");
  }
  return spec;
}

std::unique_ptr<Generator> make_generator(const GeneratorSpec& spec, const LanguageClass& cls) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::kWeighted:
      return std::make_unique<WeightedGenerator>(cls, spec.prior, spec.growth);
    case GeneratorSpec::Kind::kUniformBaseline:
      return std::make_unique<UniformBaselineGenerator>(cls);
    case GeneratorSpec::Kind::kModifiedGreedy:
      return std::make_unique<ModifiedGreedyGenerator>(cls);
    case GeneratorSpec::Kind::kLfd:
      return std::make_unique<ReductionGenerator>(cls, spec.gamma, spec.prior, spec.growth);
    case GeneratorSpec::Kind::kCommitted:
      return std::make_unique<CommittedGenerator>(cls, spec.index);
  }
  throw std::logic_error("unhandled generator kind");
}

AdversaryBuild make_adversary(const nlohmann::json& raw, const std::optional<LanguageClass>& cls,
                              std::uint64_t seed, const std::string& path) {
  const json config = as_object(raw, "adversary");
  const auto parts = split_kind(config::require_string(config, "adversary", path));
  const std::string& kind = parts.first;
  const std::string& rest = parts.second;
  const auto inline_values = rest.empty() ? std::vector<std::uint64_t>{}
                                          : parse_uint_list(rest, path + ".adversary");
  auto own_class = [&](const char* name) {
    if (cls) throw ConfigError("class", std::string("the ") + name + " adversary builds its own class");
  };
  auto need_class = [&]() -> const LanguageClass& {
    if (!cls) throw ConfigError("class", "adversary '" + kind + "' needs a class");
    return *cls;
  };

  try {
    if (kind == "enumerator") {
      const LanguageClass& c = need_class();
      return {std::make_unique<EnumeratorAdversary>(c, target_index(config, c, path)), c};
    }
    if (kind == "shuffled") {
      const LanguageClass& c = need_class();
      const auto window = config::optional_uint(config, "window", path).value_or(4);
      return {std::make_unique<ShuffledEnumeratorAdversary>(c, target_index(config, c, path), seed, window), c};
    }
    if (kind == "venn") {
      own_class("venn");
      auto adv = std::make_unique<VennAdversary>(param(config, "n", inline_values, 0, path));
      LanguageClass c = adv->language_class();
      return {std::move(adv), c};
    }
    if (kind == "littlestone") {
      own_class("littlestone");
      auto adv = std::make_unique<LittlestoneAdversary>(param(config, "n", inline_values, 0, path));
      LanguageClass c = adv->language_class();
      return {std::move(adv), c};
    }
    if (kind == "tradeoff") {
      own_class("tradeoff");
      const auto n = param(config, "n", inline_values, 0, path);
      const auto i_star = param(config, "i_star", inline_values, 1, path);
      const auto max_index = config::optional_uint(config, "max_index", path).value_or(0);
      auto adv = std::make_unique<TradeoffAdversary>(n, i_star, max_index);
      LanguageClass c = adv->language_class();
      return {std::move(adv), c};
    }
    if (kind == "noisy") {
      if (!config.contains("base")) throw ConfigError(path + ".base", "missing key");
      AdversaryBuild base = make_adversary(config.at("base"), cls, seed, path + ".base");
      NoiseSchedule schedule;
      schedule.steps = noise_steps(config, path);
      if (config.contains("source")) {
        const auto& src = config.at("source");
        const auto start = config::require_uint(src, "start", path + ".source");
        const auto stride = config::require_uint(src, "stride", path + ".source");
        if (stride == 0) throw ConfigError(path + ".source.stride", "stride must be >= 1");
        schedule.source = make_progression(start, stride);
      } else if (auto free = find_disjoint_progression(base.cls)) {
        schedule.source = *free;
      } else {
        throw ConfigError(path + ".source", "no progression is disjoint from the class; give one explicitly");
      }
      try {
        auto adv = std::make_unique<NoisyAdversary>(std::move(base.adversary), schedule, base.cls);
        return {std::move(adv), base.cls};
      } catch (const NoiseSourceCollision& e) {
        throw ConfigError(path + ".source", e.what());
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path + ".adversary", "unknown adversary '" + kind + "'");
}

GameSetup build_game(const Scenario& scenario, std::uint64_t seed) {
  std::optional<LanguageClass> cls;
  if (scenario.config.contains("class")) cls = class_from_json(scenario.config.at("class"), "class", seed);
  AdversaryBuild adv = make_adversary(scenario.config.at("adversary"), cls, seed);
  GeneratorSpec spec = generator_spec_from_json(scenario.config.at("generator"), adv.cls);
  GameOptions options;
  options.horizon = scenario.horizon;
  options.enforce_unique_reveals = !scenario.allow_repeats_noisy;
  auto generator = make_generator(spec, adv.cls);
  return GameSetup{adv.cls, spec, std::move(generator), std::move(adv.adversary), options};
}

}  // namespace genlimit
