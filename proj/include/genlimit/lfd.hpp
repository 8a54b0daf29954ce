#pragma once

// Learning from demonstrations over a stream of binary reward functions, and
// the generator obtained by feeding it histories as contexts and reveals as
// demonstrations.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "genlimit/game.hpp"
#include "genlimit/lang_algebra.hpp"
#include "genlimit/log_bound.hpp"
#include "genlimit/rational.hpp"
#include "genlimit/weighted_generator.hpp"

namespace genlimit {

// A context is a finite history u_1..u_n (one context per string).
struct Context {
  std::span<const Element> history;
  const ElementSet* seen = nullptr;
};

// Binary rewards r_1, r_2, ... with sup_y r_i(x, y) = 1 in every context.
class RewardStream {
 public:
  virtual ~RewardStream() = default;
  virtual std::size_t size() const = 0;  // materializable prefix
  virtual bool reward(std::size_t i, const Context& ctx, Element y) const = 0;
  // argmax_y sum_i w_i r_i(ctx, y) over members with positive weight.
  virtual Element argmax(std::span<const std::pair<std::size_t, Rational>> weights,
                         const Context& ctx) const = 0;
};

// r_i(x_s, y) = 1[y in L_i \ s]
class LanguageRewards : public RewardStream {
 public:
  explicit LanguageRewards(LanguageClass cls) : cls_(std::move(cls)) {}

  std::size_t size() const override { return cls_.size(); }
  bool reward(std::size_t i, const Context& ctx, Element y) const override;
  Element argmax(std::span<const std::pair<std::size_t, Rational>> weights,
                 const Context& ctx) const override;

 private:
  LanguageClass cls_;
};

// gamma must be 1 or lie in (0, 3/4]; throws InvalidGamma otherwise.
void validate_gamma(const Rational& gamma);

struct LfdWeightState {
  std::vector<Rational> weights;  // weights[i - 1], i <= active window of step t + 1
  std::size_t t = 0;
};

class LfdLearner {
 public:
  LfdLearner(std::shared_ptr<const RewardStream> rewards, Rational gamma, PriorWeights prior,
             GrowthFunction growth);

  Element propose(const Context& ctx) const;
  // `ctx` is the context in which both the action and the demonstration were taken.
  void update(const Context& ctx, Element action, Element demonstration);

  const LfdWeightState& state() const { return state_; }
  const Rational& gamma() const { return gamma_; }
  const std::vector<PotentialStep>& potential_log() const { return potential_log_; }
  bool potential_holds() const;
  // sum over steps in [from, to] of 1 - r_i(x_t, y_t); steps are 1-based.
  std::uint64_t demonstrator_regret(std::size_t i, std::size_t from, std::size_t to) const;
  // sum over steps in [from, to] of 1 - r_i(x_t, ŷ_t).
  std::uint64_t learner_regret(std::size_t i, std::size_t from, std::size_t to) const;

 private:
  std::size_t window(std::uint64_t t) const;

  std::shared_ptr<const RewardStream> rewards_;
  Rational gamma_;
  PriorWeights prior_;
  GrowthFunction growth_;
  LfdWeightState state_;
  std::vector<PotentialStep> potential_log_;
  // Per step: context, learner action, demonstration.
  std::vector<std::vector<Element>> contexts_;
  std::vector<Element> actions_;
  std::vector<Element> demonstrations_;
};

// Plays the learner's action as x̂_t for context x_{1:t-1}, then feeds x_t back
// as the demonstration.
class ReductionGenerator : public Generator {
 public:
  ReductionGenerator(LanguageClass cls, Rational gamma, PriorWeights prior, GrowthFunction growth);

  std::string id() const override;
  Element propose(std::span<const Element> revealed) override;
  void observe(Element generated, Element revealed) override;

  const LfdLearner& learner() const { return learner_; }

 private:
  LanguageClass cls_;
  LfdLearner learner_;
  std::vector<Element> history_;
  ElementSet seen_;
};

// Optimal demonstrator, gamma = 1: f^-1(i) + log2(W / w0(i)).
LogBound realizable_lfd_bound(const GrowthFunction& f, const PriorWeights& prior, std::size_t i);

// Sub-optimal demonstrator, gamma in (0, 3/4]:
//   log2(W / w0(i)) / gamma + (1 + 2 gamma) R + f^-1(i),
// with R the demonstrator regret over steps f^-1(i) + 1 .. T.
LogBound agnostic_lfd_bound(const Rational& gamma, const GrowthFunction& f, const PriorWeights& prior,
                            std::size_t i, std::uint64_t regret);

// Finite class: (1 + 2 gamma) M + log2 |L| / gamma.
LogBound finite_noise_bound(const Rational& gamma, std::size_t class_size, std::uint64_t noise);

// Stream: (1 + 2 gamma) * noise + (1 + 2 / gamma) log2 i, where `noise`
// counts x_t outside L_i over the chosen window.
LogBound stream_noise_bound(const Rational& gamma, std::size_t i, std::uint64_t noise);

}  // namespace genlimit
