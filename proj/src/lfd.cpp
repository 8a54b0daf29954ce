#include "genlimit/lfd.hpp"

#include <algorithm>
#include <stdexcept>

#include "genlimit/errors.hpp"

namespace genlimit {

namespace {

bool in_context(const Context& ctx, Element y) {
  if (ctx.seen) return ctx.seen->contains(y);
  return std::find(ctx.history.begin(), ctx.history.end(), y) != ctx.history.end();
}

}  // namespace

bool LanguageRewards::reward(std::size_t i, const Context& ctx, Element y) const {
  return cls_.at(i).contains(y) && !in_context(ctx, y);
}

Element LanguageRewards::argmax(std::span<const std::pair<std::size_t, Rational>> weights,
                                const Context& ctx) const {
  ElementSet local;
  if (!ctx.seen) local.insert(ctx.history.begin(), ctx.history.end());
  const ElementSet& seen = ctx.seen ? *ctx.seen : local;
  std::vector<WeightedMember> members;
  members.reserve(weights.size());
  for (const auto& [i, w] : weights) members.push_back({i, w, &cls_.at(i).set()});
  return weighted_argmax(members, seen);
}

void validate_gamma(const Rational& gamma) {
  if (gamma == 1) return;
  if (gamma > 0 && gamma <= Rational(3, 4)) return;
  throw InvalidGamma("gamma must be 1 or lie in (0, 3/4], got " + to_string(gamma));
}

LfdLearner::LfdLearner(std::shared_ptr<const RewardStream> rewards, Rational gamma, PriorWeights prior,
                       GrowthFunction growth)
    : rewards_(std::move(rewards)), gamma_(std::move(gamma)), prior_(std::move(prior)), growth_(growth) {
  validate_gamma(gamma_);
  const std::size_t first = window(1);
  for (std::size_t i = 1; i <= first; ++i) state_.weights.push_back(prior_.weight(i));
}

std::size_t LfdLearner::window(std::uint64_t t) const {
  return static_cast<std::size_t>(std::min<std::uint64_t>(growth_(t), rewards_->size()));
}

Element LfdLearner::propose(const Context& ctx) const {
  std::vector<std::pair<std::size_t, Rational>> positive;
  for (std::size_t i = 1; i <= state_.weights.size(); ++i) {
    if (state_.weights[i - 1] > 0) positive.emplace_back(i, state_.weights[i - 1]);
  }
  return rewards_->argmax(positive, ctx);
}

void LfdLearner::update(const Context& ctx, Element action, Element demonstration) {
  const std::size_t step = state_.t + 1;
  const bool exact = gamma_ == 1;
  const Rational up = 1 + gamma_;
  const Rational down = 1 - gamma_;

  Rational before = 0;
  for (const auto& w : state_.weights) before += w;

  for (std::size_t i = 1; i <= state_.weights.size(); ++i) {
    Rational& w = state_.weights[i - 1];
    if (w == 0) continue;
    const bool demo_ok = rewards_->reward(i, ctx, demonstration);
    const bool action_ok = rewards_->reward(i, ctx, action);
    if (exact) {
      if (!demo_ok) {
        w = 0;
      } else if (!action_ok) {
        w *= 2;
      }
    } else {
      // lambda_i(x, y) = 1 - r_i(x, y) since every context has a rewarded action
      if (!action_ok) w *= up;
      if (!demo_ok) w *= down;
    }
  }

  contexts_.emplace_back(ctx.history.begin(), ctx.history.end());
  actions_.push_back(action);
  demonstrations_.push_back(demonstration);
  state_.t = step;

  Rational introduced = 0;
  const std::size_t next = window(step + 1);
  for (std::size_t i = state_.weights.size() + 1; i <= next; ++i) {
    const Rational w0 = prior_.weight(i);
    introduced += w0;
    bool keep = true;
    if (exact) {
      for (std::size_t j = 0; j < demonstrations_.size() && keep; ++j) {
        keep = rewards_->reward(i, Context{contexts_[j], nullptr}, demonstrations_[j]);
      }
    }
    state_.weights.push_back(keep ? w0 : Rational(0));
  }

  Rational after = 0;
  for (const auto& w : state_.weights) after += w;
  potential_log_.push_back(PotentialStep{step, std::move(before), std::move(after), std::move(introduced)});
}

bool LfdLearner::potential_holds() const {
  return std::all_of(potential_log_.begin(), potential_log_.end(),
                     [](const PotentialStep& s) { return s.holds(); });
}

std::uint64_t LfdLearner::demonstrator_regret(std::size_t i, std::size_t from, std::size_t to) const {
  std::uint64_t total = 0;
  to = std::min(to, demonstrations_.size());
  for (std::size_t t = std::max<std::size_t>(from, 1); t <= to; ++t) {
    total += rewards_->reward(i, Context{contexts_[t - 1], nullptr}, demonstrations_[t - 1]) ? 0 : 1;
  }
  return total;
}

std::uint64_t LfdLearner::learner_regret(std::size_t i, std::size_t from, std::size_t to) const {
  std::uint64_t total = 0;
  to = std::min(to, actions_.size());
  for (std::size_t t = std::max<std::size_t>(from, 1); t <= to; ++t) {
    total += rewards_->reward(i, Context{contexts_[t - 1], nullptr}, actions_[t - 1]) ? 0 : 1;
  }
  return total;
}

ReductionGenerator::ReductionGenerator(LanguageClass cls, Rational gamma, PriorWeights prior,
                                       GrowthFunction growth)
    : cls_(cls),
      learner_(std::make_shared<LanguageRewards>(std::move(cls)), std::move(gamma), std::move(prior), growth) {}

std::string ReductionGenerator::id() const {
  return "lfd:" + to_string(learner_.gamma());
}

Element ReductionGenerator::propose(std::span<const Element>) {
  return learner_.propose(Context{history_, &seen_});
}

void ReductionGenerator::observe(Element generated, Element revealed) {
  learner_.update(Context{history_, &seen_}, generated, revealed);
  history_.push_back(revealed);
  seen_.insert(revealed);
}

LogBound realizable_lfd_bound(const GrowthFunction& f, const PriorWeights& prior, std::size_t i) {
  const auto inv = f_inverse(f, i);
  if (!inv) throw UnboundedBound("f^-1(" + std::to_string(i) + ") is infinite under growth " + f.id());
  return LogBound{Rational(*inv), Rational(1), prior.bound / prior.weight(i)};
}

LogBound agnostic_lfd_bound(const Rational& gamma, const GrowthFunction& f, const PriorWeights& prior,
                            std::size_t i, std::uint64_t regret) {
  validate_gamma(gamma);
  if (gamma == 1) throw InvalidGamma("the sub-optimal demonstrator bound needs gamma in (0, 3/4]");
  const auto inv = f_inverse(f, i);
  if (!inv) throw UnboundedBound("f^-1(" + std::to_string(i) + ") is infinite under growth " + f.id());
  return LogBound{Rational(*inv) + (1 + 2 * gamma) * Rational(regret), 1 / gamma,
                  prior.bound / prior.weight(i)};
}

LogBound finite_noise_bound(const Rational& gamma, std::size_t class_size, std::uint64_t noise) {
  validate_gamma(gamma);
  if (gamma == 1) throw InvalidGamma("the noisy bound needs gamma in (0, 3/4]");
  return LogBound{(1 + 2 * gamma) * Rational(noise), 1 / gamma, Rational(class_size)};
}

LogBound stream_noise_bound(const Rational& gamma, std::size_t i, std::uint64_t noise) {
  validate_gamma(gamma);
  if (gamma == 1) throw InvalidGamma("the noisy bound needs gamma in (0, 3/4]");
  return LogBound{(1 + 2 * gamma) * Rational(noise), 1 + 2 / gamma, Rational(i)};
}

}  // namespace genlimit
