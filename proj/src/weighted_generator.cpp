#include "genlimit/weighted_generator.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "genlimit/errors.hpp"

namespace genlimit {

std::uint64_t GrowthFunction::operator()(std::uint64_t t) const {
  if (kind == Kind::kConstant) return constant;
  if (t >= 64) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << t;
}

std::string GrowthFunction::id() const {
  return kind == Kind::kConstant ? "constant:" + std::to_string(constant) : std::string("pow2");
}

std::optional<std::uint64_t> f_inverse(const GrowthFunction& f, std::uint64_t i) {
  if (f.kind == GrowthFunction::Kind::kConstant) {
    if (i <= f.constant) return 0;
    return std::nullopt;
  }
  if (i <= 2) return 0;
  // largest t with 2^t < i, i.e. 2^t <= i - 1
  std::uint64_t t = 0;
  while (t + 1 < 64 && (std::uint64_t{1} << (t + 1)) <= i - 1) ++t;
  return t;
}

PriorWeights PriorWeights::uniform(std::size_t class_size) {
  if (class_size == 0) throw std::invalid_argument("uniform prior needs a nonempty class");
  return {Kind::kUniform, Rational(class_size)};
}

PriorWeights PriorWeights::inverse_square() { return {Kind::kInverseSquare, kPiSquaredOverSixUpper}; }

Rational PriorWeights::weight(std::size_t i) const {
  if (i == 0) throw std::invalid_argument("prior weights are 1-based");
  if (kind == Kind::kUniform) return Rational(1);
  const BigInt n(i);
  return Rational(BigInt(1), n * n);
}

std::string PriorWeights::id() const { return kind == Kind::kUniform ? "uniform" : "inverse_square"; }

bool partial_sum_within_bound(const PriorWeights& prior, std::size_t k) {
  Rational sum = 0;
  for (std::size_t i = 1; i <= k; ++i) sum += prior.weight(i);
  return sum <= prior.bound;
}

std::uint64_t mistake_bound_formula(const GrowthFunction& f, const PriorWeights& prior, std::size_t i) {
  const auto inv = f_inverse(f, i);
  if (!inv) {
    throw UnboundedBound("f^-1(" + std::to_string(i) + ") is infinite under growth " + f.id());
  }
  const std::int64_t log_term = floor_log2(prior.bound / prior.weight(i));
  return *inv + static_cast<std::uint64_t>(std::max<std::int64_t>(log_term, 0));
}

namespace {

struct ArgmaxSearch {
  std::span<const WeightedMember> members;
  const ElementSet& seen;
  std::vector<Rational> suffix;  // suffix[k] = sum of weights of members[k..]
  std::vector<std::size_t> path;
  std::optional<HeaviestIntersection> best;

  void visit(std::size_t k, const SetExpr& current, const Rational& weight) {
    for (std::size_t next = k; next < members.size(); ++next) {
      if (best && weight + suffix[next] <= best->weight) return;
      const SetExpr& language = *members[next].set;
      SetExpr narrowed = path.empty() ? language : intersect(current, language);
      const auto witness = smallest_unseen(narrowed, seen);
      if (!witness) continue;
      path.push_back(members[next].index);
      const Rational heavier = weight + members[next].weight;
      // Pre-order visits index lists lexicographically, so only a strict gain replaces.
      if (!best || heavier > best->weight) best = HeaviestIntersection{path, heavier, *witness};
      visit(next + 1, narrowed, heavier);
      path.pop_back();
    }
  }
};

}  // namespace

std::optional<HeaviestIntersection> heaviest_unseen_intersection(
    std::span<const WeightedMember> members, const ElementSet& seen) {
  if (members.size() > kBruteForceCap) {
    throw ActiveSetTooLarge(std::to_string(members.size()) + " positive-weight languages exceed the cap of " +
                            std::to_string(kBruteForceCap));
  }
  if (members.empty()) return std::nullopt;
  ArgmaxSearch search{members, seen, std::vector<Rational>(members.size() + 1), {}, std::nullopt};
  for (std::size_t k = members.size(); k-- > 0;) {
    search.suffix[k] = search.suffix[k + 1] + members[k].weight;
  }
  search.visit(0, SetExpr::universe(), Rational(0));
  return search.best;
}

Element weighted_argmax(std::span<const WeightedMember> members, const ElementSet& seen) {
  if (auto best = heaviest_unseen_intersection(members, seen)) return best->witness;
  return smallest_unseen_element(seen);
}

std::size_t active_window(const GrowthFunction& f, const LanguageClass& cls, std::uint64_t t) {
  return static_cast<std::size_t>(std::min<std::uint64_t>(f(t), cls.size()));
}

WeightState initial_weight_state(const LanguageClass& cls, const PriorWeights& prior,
                                 const GrowthFunction& f) {
  WeightState state;
  const std::size_t window = active_window(f, cls, 1);
  for (std::size_t i = 1; i <= window; ++i) state.weights.push_back(prior.weight(i));
  return state;
}

Element propose(const WeightState& state, const LanguageClass& cls) {
  std::vector<WeightedMember> members;
  for (std::size_t i = 1; i <= state.weights.size(); ++i) {
    if (state.weights[i - 1] > 0) members.push_back({i, state.weights[i - 1], &cls.at(i).set()});
  }
  return weighted_argmax(members, state.seen);
}

WeightState update(WeightState state, Element generated, Element revealed, const LanguageClass& cls,
                   const PriorWeights& prior, const GrowthFunction& f, PotentialStep* potential) {
  if (state.seen.contains(revealed)) {
    throw std::invalid_argument("update: element " + std::to_string(revealed) + " was already revealed");
  }
  const std::size_t step = state.t + 1;
  Rational before = 0;
  for (const auto& w : state.weights) before += w;

  for (std::size_t i = 1; i <= state.weights.size(); ++i) {
    Rational& w = state.weights[i - 1];
    if (w == 0) continue;
    const Language& language = cls.at(i);
    if (!language.contains(revealed)) {
      w = 0;
    } else if (!language.contains(generated)) {
      w *= 2;
    }
  }

  state.seen.insert(revealed);
  state.history.push_back(revealed);
  state.t = step;

  Rational introduced = 0;
  const std::size_t next_window = active_window(f, cls, step + 1);
  for (std::size_t i = state.weights.size() + 1; i <= next_window; ++i) {
    const Language& language = cls.at(i);
    const bool consistent = std::all_of(state.history.begin(), state.history.end(),
                                        [&language](Element x) { return language.contains(x); });
    const Rational w0 = prior.weight(i);
    introduced += w0;
    state.weights.push_back(consistent ? w0 : Rational(0));
  }

  if (potential) {
    Rational after = 0;
    for (const auto& w : state.weights) after += w;
    *potential = PotentialStep{step, std::move(before), std::move(after), std::move(introduced)};
  }
  return state;
}

WeightedGenerator::WeightedGenerator(LanguageClass cls, PriorWeights prior, GrowthFunction growth)
    : cls_(std::move(cls)),
      prior_(std::move(prior)),
      growth_(growth),
      state_(initial_weight_state(cls_, prior_, growth_)) {}

std::string WeightedGenerator::id() const { return "weighted:" + prior_.id() + "/" + growth_.id(); }

Element WeightedGenerator::propose(std::span<const Element>) { return genlimit::propose(state_, cls_); }

void WeightedGenerator::observe(Element generated, Element revealed) {
  PotentialStep step;
  state_ = update(std::move(state_), generated, revealed, cls_, prior_, growth_, &step);
  potential_log_.push_back(std::move(step));
}

bool WeightedGenerator::potential_holds() const {
  return std::all_of(potential_log_.begin(), potential_log_.end(),
                     [](const PotentialStep& s) { return s.holds(); });
}

}  // namespace genlimit
