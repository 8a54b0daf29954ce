#include "genlimit/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "genlimit/adversaries.hpp"
#include "genlimit/baseline_generators.hpp"
#include "genlimit/errors.hpp"
#include "genlimit/lfd.hpp"
#include "genlimit/log_bound.hpp"
#include "genlimit/weighted_generator.hpp"

namespace genlimit {

namespace {

std::string fixed6(long double v) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(6);
  out << static_cast<double>(v);
  return out.str();
}

BoundCheck upper(std::string name, std::int64_t observed, std::int64_t bound) {
  return {std::move(name), std::to_string(bound), observed, observed <= bound};
}

BoundCheck upper(std::string name, std::int64_t observed, const LogBound& bound) {
  return {std::move(name), fixed6(bound.value()), observed, bound.admits(observed)};
}

BoundCheck lower(std::string name, std::int64_t observed, std::int64_t bound) {
  return {std::move(name), ">=" + std::to_string(bound), observed, observed >= bound};
}

BoundCheck invariant(std::string name, const std::vector<PotentialStep>& log) {
  const auto broken = std::count_if(log.begin(), log.end(), [](const PotentialStep& s) { return !s.holds(); });
  return {std::move(name), "0", static_cast<std::int64_t>(broken), broken == 0};
}

std::size_t mistakes_through(const Transcript& tr, std::size_t T) {
  std::size_t n = 0;
  for (const auto& s : tr.steps) {
    if (s.t <= T && s.generator_mistake) ++n;
  }
  return n;
}

std::size_t noise_between(const Transcript& tr, std::size_t from, std::size_t to) {
  std::size_t n = 0;
  for (const auto& s : tr.steps) {
    if (s.t >= from && s.t <= to && s.adversary_noise) ++n;
  }
  return n;
}

bool is_hybrid(const GeneratorSpec& spec, const LanguageClass& cls) {
  return cls.is_finite() && spec.prior.kind == PriorWeights::Kind::kUniform &&
         spec.growth.kind == GrowthFunction::Kind::kConstant && spec.growth.constant >= cls.size();
}

bool is_log_index(const GeneratorSpec& spec) {
  return spec.prior.kind == PriorWeights::Kind::kInverseSquare &&
         spec.growth.kind == GrowthFunction::Kind::kPowerOfTwo;
}

std::uint64_t floor_log2_u(std::uint64_t v) {
  std::uint64_t k = 0;
  while ((v >> (k + 1)) != 0) ++k;
  return k;
}

void closure_rows(BoundReport& report, const LanguageClass& cls, bool with_mistakes) {
  if (!cls.is_finite() || cls.size() > kBruteForceCap) return;
  const auto cdim = static_cast<std::int64_t>(closure_dimension(cls));
  report.notes.push_back("Cdim=" + std::to_string(cdim) + " (generator moves first, so Cdim bounds carry +1)");
  if (with_mistakes) report.bounds.push_back(upper("cdim_mistakes", report.mistakes, cdim + 1));
  report.bounds.push_back(upper("cdim_last_mistake", report.last_mistake, cdim + 1));
}

void weighted_rows(BoundReport& report, const GameSetup& setup, const WeightedGenerator& gen, bool consistent) {
  report.bounds.push_back(invariant("potential", gen.potential_log()));
  if (!consistent) return;
  const std::size_t i = report.target_index;
  const auto m = static_cast<std::int64_t>(report.mistakes);
  try {
    report.bounds.push_back(upper("weighted_mistakes", m,
                                  static_cast<std::int64_t>(mistake_bound_formula(gen.growth(), gen.prior(), i))));
  } catch (const UnboundedBound& e) {
    report.notes.push_back(std::string("weighted_mistakes: ") + e.what());
  }
  if (is_log_index(setup.spec)) {
    const BigInt cube = BigInt(i) * i * i;
    report.bounds.push_back(upper("log_index", m, LogBound{0, 1, Rational(cube) * kPiSquaredOverSixLower}));
  }
  if (is_hybrid(setup.spec, setup.cls)) {
    report.bounds.push_back(upper("log_size_mistakes", m, static_cast<std::int64_t>(floor_log2_u(setup.cls.size()))));
    closure_rows(report, setup.cls, true);
  }
}

void greedy_rows(BoundReport& report, const ModifiedGreedyGenerator& gen, const LanguageClass& cls,
                 const Transcript& tr) {
  const std::size_t i = report.target_index;
  if (i > kBruteForceCap) {
    report.notes.push_back("greedy bounds skipped: m(L_i) needs brute force beyond the cap");
    return;
  }
  const auto m = nonuniform_complexity(cls, i);
  const GreedyBounds b = greedy_bounds_from_complexity(i, m);
  report.notes.push_back("m(L_" + std::to_string(i) + ")=" + std::to_string(m));
  report.bounds.push_back(upper("greedy_last_mistake", report.last_mistake, b.last_mistake));
  report.bounds.push_back(upper("greedy_mistakes", report.mistakes, b.mistakes));
  // Every mistake at t >= i must coincide with some j < i leaving the consistent set.
  std::int64_t unexplained = 0;
  for (const auto& s : tr.steps) {
    if (!s.generator_mistake || s.t < i || s.t > gen.eliminated().size()) continue;
    const auto& gone = gen.eliminated()[s.t - 1];
    if (std::none_of(gone.begin(), gone.end(), [i](std::size_t j) { return j < i; })) ++unexplained;
  }
  report.bounds.push_back({"greedy_elimination", "0", unexplained, unexplained == 0});
}

void lfd_rows(BoundReport& report, const GameSetup& setup, const ReductionGenerator& gen, const Transcript& tr,
              bool consistent) {
  const LfdLearner& learner = gen.learner();
  report.bounds.push_back(invariant("potential", learner.potential_log()));
  const std::size_t i = report.target_index;
  const auto& spec = setup.spec;
  if (learner.gamma() == 1) {
    if (!consistent) return;
    try {
      report.bounds.push_back(upper("lfd_realizable", report.mistakes, realizable_lfd_bound(spec.growth, spec.prior, i)));
    } catch (const UnboundedBound& e) {
      report.notes.push_back(std::string("lfd_realizable: ") + e.what());
    }
    return;
  }
  const auto inv = f_inverse(spec.growth, i);
  if (inv) {
    std::vector<std::size_t> horizons{10, 50, tr.horizon};
    std::sort(horizons.begin(), horizons.end());
    horizons.erase(std::unique(horizons.begin(), horizons.end()), horizons.end());
    for (std::size_t T : horizons) {
      if (T > tr.horizon) continue;
      const auto regret = noise_between(tr, *inv + 1, T);
      report.bounds.push_back(upper("lfd_agnostic@" + std::to_string(T),
                                    static_cast<std::int64_t>(mistakes_through(tr, T)),
                                    agnostic_lfd_bound(learner.gamma(), spec.growth, spec.prior, i, regret)));
    }
  } else {
    report.notes.push_back("lfd_agnostic: target never enters the active window");
  }
  if (is_hybrid(spec, setup.cls)) {
    report.bounds.push_back(upper("noisy_finite", report.mistakes,
                                  finite_noise_bound(learner.gamma(), setup.cls.size(), report.noise)));
  }
  if (is_log_index(spec)) {
    const std::size_t stated_from = std::max<std::size_t>(1, floor_log2_u(i));
    const std::size_t shifted_from = *inv + 1;
    report.bounds.push_back(upper("noisy_stream", report.mistakes,
                                  stream_noise_bound(learner.gamma(), i, noise_between(tr, stated_from, tr.horizon))));
    report.bounds.push_back(upper("noisy_stream_shifted", report.mistakes,
                                  stream_noise_bound(learner.gamma(), i, noise_between(tr, shifted_from, tr.horizon))));
  }
}

const Adversary* unwrap(const Adversary* adv) {
  while (auto noisy = dynamic_cast<const NoisyAdversary*>(adv)) adv = &noisy->base();
  return adv;
}

void adversary_rows(BoundReport& report, const Adversary& adversary, const Transcript& tr) {
  const Adversary* base = unwrap(&adversary);
  if (auto venn = dynamic_cast<const VennAdversary*>(base)) {
    const auto n = static_cast<std::int64_t>(venn->language_class().at(1).set().finite_part().size());
    report.bounds.push_back(lower("forced_last_mistake", report.last_mistake, n + 1));
  } else if (auto tree = dynamic_cast<const LittlestoneAdversary*>(base)) {
    report.bounds.push_back(lower("forced_mistakes", report.mistakes, tree->layout().m));
  } else if (auto trade = dynamic_cast<const TradeoffAdversary*>(base)) {
    const std::size_t b = trade->halt_boundary();
    if (trade->halt() == TradeoffAdversary::Halt::kRule1) {
      const std::size_t t = trade->halt_step();
      const bool hit = t >= 1 && t <= tr.steps.size() && tr.steps[t - 1].generator_mistake;
      const bool on_schedule = t == trade->layout().boundary(b);
      report.notes.push_back("tradeoff halt: rule 1 at t=" + std::to_string(t) + " (boundary i=" + std::to_string(b) +
                             ", target L_" + std::to_string(b - 1) + ")");
      report.bounds.push_back({"tradeoff_dichotomy", "mistake@" + std::to_string(trade->layout().boundary(b)),
                               static_cast<std::int64_t>(t), hit && on_schedule});
    } else if (trade->halt() == TradeoffAdversary::Halt::kRule2) {
      report.notes.push_back("tradeoff halt: rule 2 at t=" + std::to_string(trade->halt_step()) + " (target L_" +
                             std::to_string(b) + ")");
      report.bounds.push_back(lower("tradeoff_dichotomy", report.mistakes, static_cast<std::int64_t>(b) - 1));
    }
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        body(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < n; ++w) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string json_scalar(const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

bool BoundReport::all_satisfied() const {
  return std::all_of(bounds.begin(), bounds.end(), [](const BoundCheck& b) { return b.satisfied; });
}

BoundReport verify(const Scenario& scenario, std::uint64_t seed, const std::string& params, GameResult* game) {
  GameSetup setup = build_game(scenario, seed);
  GameResult result = run_game(setup.cls, *setup.generator, *setup.adversary, setup.options);

  BoundReport report;
  report.scenario = scenario.name;
  report.params = params.empty() ? "seed=" + std::to_string(seed) : params + ";seed=" + std::to_string(seed);
  report.generator = setup.generator->id();
  report.adversary = setup.adversary->id();
  report.target_index = result.transcript.target_index;
  report.mistakes = result.total_mistakes;
  report.last_mistake = result.last_mistake_time;
  report.noise = result.noise_count;
  report.seed = seed;

  const bool consistent = result.noise_count == 0;
  if (auto w = dynamic_cast<const WeightedGenerator*>(setup.generator.get())) {
    weighted_rows(report, setup, *w, consistent);
  } else if (dynamic_cast<const UniformBaselineGenerator*>(setup.generator.get())) {
    if (consistent) closure_rows(report, setup.cls, false);
  } else if (auto g = dynamic_cast<const ModifiedGreedyGenerator*>(setup.generator.get())) {
    if (consistent) greedy_rows(report, *g, setup.cls, result.transcript);
  } else if (auto l = dynamic_cast<const ReductionGenerator*>(setup.generator.get())) {
    lfd_rows(report, setup, *l, result.transcript, consistent);
  }
  adversary_rows(report, *setup.adversary, result.transcript);

  if (game) *game = std::move(result);
  return report;
}

std::vector<BoundReport> verify_all(const Scenario& scenario, std::optional<std::uint64_t> seed_override,
                                    unsigned threads) {
  const std::vector<std::uint64_t> seeds = seed_override ? std::vector<std::uint64_t>{*seed_override} : scenario.seeds;
  std::vector<BoundReport> reports(seeds.size());
  parallel_for(seeds.size(), threads, [&](std::size_t k) { reports[k] = verify(scenario, seeds[k]); });
  return reports;
}

void write_report_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
  out << "scenario,params,target_i,mistakes,last_mistake,noise,bound_name,bound_value,satisfied\n";
  for (const auto& r : reports) {
    const std::string prefix = csv_field(r.scenario) + ',' + csv_field(r.params) + ',' +
                               std::to_string(r.target_index) + ',' + std::to_string(r.mistakes) + ',' +
                               std::to_string(r.last_mistake) + ',' + std::to_string(r.noise) + ',';
    if (r.bounds.empty()) {
      out << prefix << "none,,1\n";
      continue;
    }
    for (const auto& b : r.bounds) {
      out << prefix << csv_field(b.name) << ',' << csv_field(b.value) << ',' << (b.satisfied ? 1 : 0) << '\n';
    }
  }
}

std::string report_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream out;
  write_report_csv(out, reports);
  return out.str();
}

SweepRange parse_range(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw ConfigError("--range", "expected key=a..b or key=v1,v2,..., got '" + text + "'");
  }
  SweepRange range;
  range.key = text.substr(0, eq);
  const std::string rhs = text.substr(eq + 1);
  auto is_uint = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (const auto dots = rhs.find(".."); dots != std::string::npos) {
    const std::string a = rhs.substr(0, dots);
    const std::string b = rhs.substr(dots + 2);
    if (!is_uint(a) || !is_uint(b)) throw ConfigError("--range", "bounds of '" + text + "' must be integers");
    const auto lo = std::stoull(a);
    const auto hi = std::stoull(b);
    if (lo > hi) throw ConfigError("--range", "empty range '" + text + "'");
    if (hi - lo >= 100000) throw ConfigError("--range", "range '" + text + "' is too long");
    for (auto v = lo; v <= hi; ++v) range.values.emplace_back(v);
    return range;
  }
  std::stringstream in(rhs);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty()) throw ConfigError("--range", "empty value in '" + text + "'");
    if (is_uint(part)) {
      range.values.emplace_back(std::stoull(part));
    } else {
      range.values.emplace_back(part);
    }
  }
  return range;
}

void set_path(nlohmann::json& config, const std::string& dotted, const nlohmann::json& value) {
  nlohmann::json* node = &config;
  std::stringstream in(dotted);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(in, part, '.')) parts.push_back(part);
  if (parts.empty()) throw ConfigError(dotted, "empty key path");
  for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
    if (!node->is_object()) throw ConfigError(dotted, "'" + parts[k] + "' is not inside an object");
    node = &(*node)[parts[k]];
    if (node->is_null()) *node = nlohmann::json::object();
    if (node->is_string() && k + 2 == parts.size()) {
      // "adversary": "littlestone" style shorthand; expand to an object
      const std::string kind = node->get<std::string>();
      *node = nlohmann::json::object();
      (*node)[parts[k]] = kind;
    }
  }
  if (!node->is_object()) throw ConfigError(dotted, "parent of '" + parts.back() + "' is not an object");
  (*node)[parts.back()] = value;
}

std::vector<BoundReport> sweep(const nlohmann::json& scenario_template, const std::vector<SweepRange>& ranges,
                               std::optional<std::uint64_t> seed_override, unsigned threads) {
  struct Task {
    Scenario scenario;
    std::string params;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  std::vector<std::size_t> index(ranges.size(), 0);
  const Scenario base = scenario_from_json(scenario_template);
  for (;;) {
    nlohmann::json config = scenario_template;
    std::string params;
    for (std::size_t r = 0; r < ranges.size(); ++r) {
      const auto& v = ranges[r].values[index[r]];
      set_path(config, ranges[r].key, v);
      if (!params.empty()) params += ';';
      params += ranges[r].key + "=" + json_scalar(v);
    }
    Scenario s = scenario_from_json(config, base.name);
    const std::vector<std::uint64_t> seeds = seed_override ? std::vector<std::uint64_t>{*seed_override} : s.seeds;
    for (auto seed : seeds) tasks.push_back({s, params, seed});

    std::size_t r = ranges.size();
    while (r > 0) {
      --r;
      if (++index[r] < ranges[r].values.size()) break;
      index[r] = 0;
      if (r == 0) {
        r = ranges.size() + 1;
        break;
      }
    }
    if (ranges.empty() || r == ranges.size() + 1) break;
  }

  std::vector<BoundReport> reports(tasks.size());
  parallel_for(tasks.size(), threads,
               [&](std::size_t k) { reports[k] = verify(tasks[k].scenario, tasks[k].seed, tasks[k].params); });
  return reports;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("GENLIMIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace genlimit
