#include "genlimit/classes.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "genlimit/config_util.hpp"
#include "genlimit/errors.hpp"

namespace genlimit {

LanguageClass venn_class(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("venn_class: n must be >= 1");
  std::vector<Element> shared(n);
  std::iota(shared.begin(), shared.end(), Element{0});
  std::vector<Language> languages;
  languages.emplace_back(std::vector<Atom>{make_finite(shared), make_progression(n, 3)}, "L1");
  languages.emplace_back(std::vector<Atom>{make_finite(shared), make_progression(n + 1, 3)}, "L2");
  return LanguageClass::finite(std::move(languages), "venn:" + std::to_string(n));
}

Element LittlestoneLayout::point(std::uint64_t bits, unsigned length) const {
  if (length == 0 || length > m) throw std::out_of_range("LittlestoneLayout::point: bad length");
  return (std::uint64_t{1} << length) - 2 + (bits & ((std::uint64_t{1} << length) - 1));
}

std::optional<std::pair<std::uint64_t, unsigned>> LittlestoneLayout::prefix_of(Element x) const {
  if (x >= prefix_points()) return std::nullopt;
  unsigned length = 1;
  while (x >= (std::uint64_t{2} << length) - 2) ++length;
  return std::make_pair(x - ((std::uint64_t{1} << length) - 2), length);
}

std::optional<std::uint64_t> LittlestoneLayout::tail_owner(Element x) const {
  if (x < prefix_points()) return std::nullopt;
  const std::uint64_t residue = (x - prefix_points()) % (n + 1);
  if (residue >= n) return std::nullopt;
  return residue;
}

Progression LittlestoneLayout::tail(std::uint64_t owner) const {
  return make_progression(prefix_points() + owner, n + 1);
}

LittlestoneLayout littlestone_layout(std::uint64_t n) {
  if (n < 2 || n > 1024) throw std::invalid_argument("littlestone: class size must be in [2, 1024]");
  LittlestoneLayout layout;
  layout.n = n;
  layout.m = 0;
  while ((std::uint64_t{2} << layout.m) <= n) ++layout.m;
  return layout;
}

LanguageClass littlestone_class(std::uint64_t n) {
  const LittlestoneLayout layout = littlestone_layout(n);
  std::vector<Language> languages;
  for (std::uint64_t v = 0; v < layout.leaves(); ++v) {
    std::vector<Element> points;
    for (unsigned length = 1; length <= layout.m; ++length) {
      points.push_back(layout.point(v >> (layout.m - length), length));
    }
    std::string label = "L_";
    for (unsigned b = layout.m; b-- > 0;) label += ((v >> b) & 1U) ? '1' : '0';
    languages.emplace_back(std::vector<Atom>{make_finite(points), layout.tail(v)}, label);
  }
  for (std::uint64_t r = layout.leaves(); r < n; ++r) {
    languages.emplace_back(std::vector<Atom>{layout.tail(r)}, "dummy" + std::to_string(r + 1));
  }
  return LanguageClass::finite(std::move(languages), "littlestone:" + std::to_string(n));
}

std::uint64_t TradeoffLayout::row_length(std::size_t k) const {
  std::uint64_t len = 1;
  for (std::size_t i = 0; i < k; ++i) len *= n;
  return len;
}

std::uint64_t TradeoffLayout::boundary(std::size_t i) const {
  std::uint64_t t = 1;
  for (std::size_t j = 1; j < i; ++j) t += row_length(j);
  return t;
}

TradeoffLayout tradeoff_layout(std::uint64_t n, std::size_t max_index, std::uint64_t row_cap) {
  if (n < 2) throw std::invalid_argument("tradeoff: n must be >= 2");
  if (max_index < 1) throw std::invalid_argument("tradeoff: max_index must be >= 1");
  if (row_cap == 0) row_cap = max_index + 1;
  if (row_cap < max_index + 1) throw std::invalid_argument("tradeoff: row_cap must exceed max_index");
  TradeoffLayout layout{n, max_index, PairCode{row_cap}};
  // Largest language carries sum_{k < max_index} n^k explicit elements.
  long double total = 0;
  for (std::size_t k = 1; k < max_index; ++k) total += static_cast<long double>(layout.row_length(k));
  if (total > 5e6L) throw std::invalid_argument("tradeoff: prefix too large to materialize");
  return layout;
}

LanguageClass tradeoff_class(const TradeoffLayout& layout) {
  auto build = [layout](std::size_t i) {
    std::vector<Element> prefix;
    for (std::size_t k = 1; k < i; ++k) {
      const std::uint64_t len = layout.row_length(k);
      for (std::uint64_t j = 1; j <= len; ++j) prefix.push_back(layout.code.encode(k, j));
    }
    return Language(std::vector<Atom>{make_finite(std::move(prefix)), layout.code.row(i)},
                    "L" + std::to_string(i));
  };
  return LanguageClass::stream(build, layout.max_index,
                               "tradeoff:" + std::to_string(layout.n) + "," +
                                   std::to_string(layout.max_index));
}

LanguageClass random_class(std::size_t languages, std::uint64_t bound, std::uint64_t seed) {
  if (languages == 0) throw std::invalid_argument("random_class: need at least one language");
  static constexpr std::uint64_t kStrides[] = {1, 2, 3, 4, 6};
  std::mt19937_64 rng(seed);
  auto below = [&rng](std::uint64_t k) { return rng() % k; };
  std::vector<Language> out;
  for (std::size_t i = 0; i < languages; ++i) {
    std::vector<Element> values;
    const std::uint64_t count = below(7);
    for (std::uint64_t c = 0; c < count; ++c) values.push_back(below(bound + 1));
    const Progression p = make_progression(below(bound + 1), kStrides[below(std::size(kStrides))]);
    out.emplace_back(std::vector<Atom>{make_finite(std::move(values)), p}, "R" + std::to_string(i + 1));
  }
  return LanguageClass::finite(std::move(out),
                               "random:" + std::to_string(languages) + "," + std::to_string(bound) +
                                   "," + std::to_string(seed));
}

std::optional<Progression> find_disjoint_progression(const LanguageClass& cls) {
  std::uint64_t period = 1;
  Element threshold = 0;
  for (std::size_t i = 1; i <= cls.size(); ++i) {
    const SetExpr& s = cls.at(i).set();
    for (const auto& p : s.progressions()) {
      period = std::lcm(period, p.stride);
      threshold = std::max(threshold, p.start);
    }
    if (!s.finite_part().empty()) threshold = std::max(threshold, s.finite_part().back() + 1);
  }
  // Beyond `threshold` membership is periodic in `period`, so a residue free of
  // every language there stays free forever.
  for (std::uint64_t r = 0; r < period; ++r) {
    const SetExpr candidate({make_progression(threshold + r, period)});
    bool free = true;
    for (std::size_t i = 1; i <= cls.size() && free; ++i) {
      free = intersect(candidate, cls.at(i).set()).empty();
    }
    if (free) return make_progression(threshold + r, period);
  }
  return std::nullopt;
}

namespace {

Atom atom_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "atom must be an object");
  if (j.contains("finite")) {
    const auto& values = j.at("finite");
    if (!values.is_array()) throw ConfigError(path + ".finite", "expected an array");
    std::vector<Element> out;
    for (std::size_t k = 0; k < values.size(); ++k) {
      out.push_back(config::as_uint(values[k], path + ".finite[" + std::to_string(k) + "]"));
    }
    return make_finite(std::move(out));
  }
  if (j.contains("progression")) {
    const auto& p = j.at("progression");
    const std::string ppath = path + ".progression";
    const auto start = config::require_uint(p, "start", ppath);
    const auto stride = config::require_uint(p, "stride", ppath);
    if (stride == 0) throw ConfigError(ppath + ".stride", "stride must be >= 1");
    return make_progression(start, stride);
  }
  throw ConfigError(path, "atom needs a 'finite' or 'progression' key");
}

}  // namespace

LanguageClass class_from_json(const nlohmann::json& config, const std::string& key_path,
                              std::uint64_t default_seed) {
  if (!config.is_object()) throw ConfigError(key_path, "class must be an object");
  if (config.contains("languages") && config.at("languages").is_array()) {
    const auto& list = config.at("languages");
    if (list.empty()) throw ConfigError(key_path + ".languages", "class needs at least one language");
    std::vector<Language> languages;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string lpath = key_path + ".languages[" + std::to_string(i) + "]";
      const auto& lj = list[i];
      if (!lj.is_object() || !lj.contains("atoms") || !lj.at("atoms").is_array()) {
        throw ConfigError(lpath, "language needs an 'atoms' array");
      }
      std::vector<Atom> atoms;
      for (std::size_t a = 0; a < lj.at("atoms").size(); ++a) {
        atoms.push_back(atom_from_json(lj.at("atoms")[a], lpath + ".atoms[" + std::to_string(a) + "]"));
      }
      const std::string label = lj.value("label", "L" + std::to_string(i + 1));
      try {
        languages.emplace_back(atoms, label);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(lpath, e.what());
      }
    }
    return LanguageClass::finite(std::move(languages), config.value("name", std::string("explicit")));
  }

  const std::string builder = config::require_string(config, "builder", key_path);
  try {
    if (builder == "venn") return venn_class(config::require_uint(config, "n", key_path));
    if (builder == "littlestone") return littlestone_class(config::require_uint(config, "n", key_path));
    if (builder == "tradeoff") {
      const auto n = config::require_uint(config, "n", key_path);
      const auto max_index = config::require_uint(config, "max_index", key_path);
      const auto row_cap = config::optional_uint(config, "row_cap", key_path).value_or(0);
      return tradeoff_class(tradeoff_layout(n, max_index, row_cap));
    }
    if (builder == "random") {
      const auto languages = config::require_uint(config, "languages", key_path);
      const auto bound = config::optional_uint(config, "bound", key_path).value_or(64);
      const auto seed = config::optional_uint(config, "seed", key_path).value_or(default_seed);
      return random_class(languages, bound, seed);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key_path, e.what());
  }
  throw ConfigError(key_path + ".builder", "unknown class builder '" + builder + "'");
}

}  // namespace genlimit
