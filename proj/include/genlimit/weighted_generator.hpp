#pragma once

// Multiplicative-weights generator over a (possibly infinite) stream of
// languages. A prior w0 and a growth function f decide which languages are
// active at each step; weights are exact rationals throughout.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "genlimit/game.hpp"
#include "genlimit/lang_algebra.hpp"
#include "genlimit/rational.hpp"

namespace genlimit {

struct GrowthFunction {
  enum class Kind { kConstant, kPowerOfTwo };

  Kind kind = Kind::kConstant;
  std::uint64_t constant = 1;

  static GrowthFunction fixed(std::uint64_t n) { return {Kind::kConstant, n}; }
  static GrowthFunction power_of_two() { return {Kind::kPowerOfTwo, 0}; }

  // Saturates at UINT64_MAX for the doubling schedule.
  std::uint64_t operator()(std::uint64_t t) const;
  std::string id() const;
};

// Largest t >= 1 with f(t) < i; 0 when f(t) >= i for every t >= 1; nullopt
// (infinity) when f never reaches i.
std::optional<std::uint64_t> f_inverse(const GrowthFunction& f, std::uint64_t i);

// Rational brackets around pi^2/6 = 1.64493406684...
inline const Rational kPiSquaredOverSixUpper{BigInt(16449341), BigInt(10000000)};
inline const Rational kPiSquaredOverSixLower{BigInt(1644934), BigInt(1000000)};

struct PriorWeights {
  enum class Kind { kUniform, kInverseSquare };

  Kind kind = Kind::kUniform;
  Rational bound = 1;  // W >= sum_i w0(i)

  static PriorWeights uniform(std::size_t class_size);
  static PriorWeights inverse_square();

  Rational weight(std::size_t i) const;
  std::string id() const;
};

// sum_{i <= k} w0(i) <= W
bool partial_sum_within_bound(const PriorWeights& prior, std::size_t k);

// f^{-1}(i) + floor(log2(W / w0(i))). Throws UnboundedBound when f^{-1}(i) is infinite.
std::uint64_t mistake_bound_formula(const GrowthFunction& f, const PriorWeights& prior, std::size_t i);

struct WeightedMember {
  std::size_t index = 0;
  Rational weight;
  const SetExpr* set = nullptr;
};

struct HeaviestIntersection {
  std::vector<std::size_t> subset;  // ascending language indices
  Rational weight;
  Element witness = 0;
};

// Among subsets S of `members` whose common part has an unseen element, picks
// the heaviest (ties: lexicographically smallest index list) and its smallest
// unseen witness. Members must carry positive weights, ascending by index.
// The search is include-first depth-first in index order with two prunes:
// an intersection with nothing unseen stays so under further intersection,
// and a branch whose optimistic weight cannot beat the incumbent is cut.
// Throws ActiveSetTooLarge beyond kBruteForceCap members.
std::optional<HeaviestIntersection> heaviest_unseen_intersection(
    std::span<const WeightedMember> members, const ElementSet& seen);

// argmax over unseen x of sum_i w_i 1[x in L_i]; the smallest unseen natural
// when no member is given.
Element weighted_argmax(std::span<const WeightedMember> members, const ElementSet& seen);

// Potential bookkeeping for one update:
//   after = W_t, before = W_{t-1}, introduced = mass of newly activated priors.
struct PotentialStep {
  std::size_t t = 0;
  Rational before;
  Rational after;
  Rational introduced;

  bool holds() const { return after <= before + introduced; }
};

struct WeightState {
  std::vector<Rational> weights;  // weights[i - 1] = w_t(i) for i <= active window of step t + 1
  std::size_t t = 0;              // completed steps
  ElementSet seen;
  std::vector<Element> history;
};

// Active languages at step t: min(f(t), materializable class size).
std::size_t active_window(const GrowthFunction& f, const LanguageClass& cls, std::uint64_t t);

WeightState initial_weight_state(const LanguageClass& cls, const PriorWeights& prior,
                                 const GrowthFunction& f);
Element propose(const WeightState& state, const LanguageClass& cls);
WeightState update(WeightState state, Element generated, Element revealed, const LanguageClass& cls,
                   const PriorWeights& prior, const GrowthFunction& f,
                   PotentialStep* potential = nullptr);

class WeightedGenerator : public Generator {
 public:
  WeightedGenerator(LanguageClass cls, PriorWeights prior, GrowthFunction growth);

  std::string id() const override;
  Element propose(std::span<const Element> revealed) override;
  void observe(Element generated, Element revealed) override;

  const WeightState& state() const { return state_; }
  const PriorWeights& prior() const { return prior_; }
  const GrowthFunction& growth() const { return growth_; }
  const std::vector<PotentialStep>& potential_log() const { return potential_log_; }
  bool potential_holds() const;

 private:
  LanguageClass cls_;
  PriorWeights prior_;
  GrowthFunction growth_;
  WeightState state_;
  std::vector<PotentialStep> potential_log_;
};

}  // namespace genlimit
