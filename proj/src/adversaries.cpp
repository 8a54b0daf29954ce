#include "genlimit/adversaries.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "genlimit/errors.hpp"

namespace genlimit {

std::optional<Element> next_element(const SetExpr& set, std::optional<Element> after) {
  std::optional<Element> best;
  const auto& finite = set.finite_part();
  auto it = after ? std::upper_bound(finite.begin(), finite.end(), *after) : finite.begin();
  if (it != finite.end()) best = *it;
  for (const auto& p : set.progressions()) {
    Element x = p.start;
    if (after && *after >= p.start) {
      const std::uint64_t k = (*after - p.start) / p.stride + 1;
      if (k > (std::numeric_limits<Element>::max() - p.start) / p.stride) continue;
      x = p.start + k * p.stride;
    }
    if (!best || x < *best) best = x;
  }
  return best;
}

Element Cursor::next(const ElementSet& skip) {
  for (;;) {
    const auto x = next_element(set_, last_);
    if (!x) throw std::logic_error("cursor ran past the end of its language");
    last_ = x;
    if (!skip.contains(*x)) return *x;
  }
}

EnumeratorAdversary::EnumeratorAdversary(const LanguageClass& cls, std::size_t index)
    : index_(index), cursor_(cls.at(index).set()) {}

Element EnumeratorAdversary::reveal(const GameView&) {
  const Element x = cursor_.next(revealed_);
  revealed_.insert(x);
  return x;
}

ShuffledEnumeratorAdversary::ShuffledEnumeratorAdversary(const LanguageClass& cls, std::size_t index,
                                                         std::uint64_t seed, std::size_t window)
    : index_(index), seed_(seed), window_(std::max<std::size_t>(window, 1)), set_(cls.at(index).set()),
      rng_(seed) {}

std::string ShuffledEnumeratorAdversary::id() const {
  return "shuffled:" + std::to_string(index_) + ":" + std::to_string(seed_);
}

Element ShuffledEnumeratorAdversary::reveal(const GameView&) {
  while (pool_.size() < window_) {
    frontier_ = next_element(set_, frontier_);
    if (!frontier_) throw std::logic_error("shuffled enumerator ran past the end of its language");
    pool_.insert(*frontier_);
  }
  auto it = pool_.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(rng_() % pool_.size()));
  const Element x = *it;
  pool_.erase(it);
  return x;
}

VennAdversary::VennAdversary(std::uint64_t n) : n_(n), cls_(venn_class(n)) {}

Element VennAdversary::reveal(const GameView& view) {
  if (view.t <= n_) {
    const Element x = view.t - 1;
    revealed_.insert(x);
    return x;
  }
  if (!target_) {
    const Element guess = view.generated[n_];
    const bool in1 = cls_.at(1).contains(guess);
    const bool in2 = cls_.at(2).contains(guess);
    target_ = (in1 && !in2) ? 2 : 1;
    cursor_ = Cursor(cls_.at(*target_).set());
  }
  const Element x = cursor_.next(revealed_);
  revealed_.insert(x);
  return x;
}

LittlestoneAdversary::LittlestoneAdversary(std::uint64_t n)
    : layout_(littlestone_layout(n)), cls_(littlestone_class(n)) {}

std::optional<unsigned> LittlestoneAdversary::branch_of(Element x) const {
  const unsigned below = depth_ + 1;
  if (auto prefix = layout_.prefix_of(x)) {
    const auto [bits, length] = *prefix;
    if (length < below || (bits >> (length - depth_)) != bits_) return std::nullopt;
    return static_cast<unsigned>((bits >> (length - below)) & 1U);
  }
  if (auto owner = layout_.tail_owner(x); owner && *owner < layout_.leaves()) {
    if ((*owner >> (layout_.m - depth_)) != bits_) return std::nullopt;
    return static_cast<unsigned>((*owner >> (layout_.m - below)) & 1U);
  }
  return std::nullopt;
}

Element LittlestoneAdversary::reveal(const GameView& view) {
  if (depth_ < layout_.m) {
    const auto branch = branch_of(view.generated[view.t - 1]);
    const unsigned bit = branch ? 1U - *branch : 0U;
    bits_ = (bits_ << 1) | bit;
    ++depth_;
    const Element x = layout_.point(bits_, depth_);
    revealed_.insert(x);
    if (depth_ == layout_.m) {
      target_ = static_cast<std::size_t>(bits_) + 1;
      cursor_ = Cursor(cls_.at(*target_).set());
    }
    return x;
  }
  const Element x = cursor_.next(revealed_);
  revealed_.insert(x);
  return x;
}

TradeoffAdversary::TradeoffAdversary(std::uint64_t n, std::size_t i_star, std::size_t max_index)
    : layout_(tradeoff_layout(n, max_index == 0 ? 2 * i_star : max_index)),
      i_star_(i_star),
      cls_(tradeoff_class(layout_)) {
  if (i_star < 2) throw std::invalid_argument("tradeoff adversary: i* must be >= 2");
  if (i_star > layout_.max_index) throw std::invalid_argument("tradeoff adversary: i* exceeds the stream");
}

std::string TradeoffAdversary::id() const {
  return "tradeoff:" + std::to_string(layout_.n) + "," + std::to_string(i_star_);
}

Element TradeoffAdversary::reveal(const GameView& view) {
  if (halt_ == Halt::kNone && column_ == 0 && row_ >= 2) {
    const std::size_t i = row_;
    const Element guess = view.generated[view.t - 1];
    if (!cls_.at(i - 1).contains(guess)) {
      halt_ = Halt::kRule1;
      target_ = i - 1;
    } else if (i == i_star_) {
      halt_ = Halt::kRule2;
      target_ = i_star_;
    }
    if (halt_ != Halt::kNone) {
      halt_step_ = view.t;
      halt_boundary_ = i;
      cursor_ = Cursor(cls_.at(*target_).set());
    }
  }
  if (halt_ != Halt::kNone) {
    const Element x = cursor_.next(revealed_);
    revealed_.insert(x);
    return x;
  }
  const Element x = layout_.code.encode(row_, column_ + 1);
  revealed_.insert(x);
  if (++column_ == layout_.row_length(row_)) {
    ++row_;
    column_ = 0;
  }
  return x;
}

NoisyAdversary::NoisyAdversary(std::unique_ptr<Adversary> base, NoiseSchedule schedule,
                               const LanguageClass& cls)
    : base_(std::move(base)), schedule_(std::move(schedule)) {
  const SetExpr source({schedule_.source});
  for (std::size_t i = 1; i <= cls.size(); ++i) {
    if (!intersect(source, cls.at(i).set()).empty()) {
      throw NoiseSourceCollision("noise source " + describe(source) + " meets language " +
                                 std::to_string(i));
    }
  }
}

std::string NoisyAdversary::id() const {
  return "noisy(" + base_->id() + ",M=" + std::to_string(schedule_.steps.size()) + ")";
}

Element NoisyAdversary::reveal(const GameView& view) {
  if (schedule_.steps.contains(view.t)) {
    const Element x = schedule_.source.start + next_noise_ * schedule_.source.stride;
    ++next_noise_;
    ++injected_;
    return x;
  }
  base_generated_.push_back(view.generated[view.t - 1]);
  const GameView inner{base_revealed_.size() + 1, base_generated_, base_revealed_};
  const Element x = base_->reveal(inner);
  if (schedule_.source.contains(x)) {
    throw NoiseSourceCollision(base_->id() + " revealed " + std::to_string(x) + " from the noise source");
  }
  base_revealed_.push_back(x);
  return x;
}

}  // namespace genlimit
