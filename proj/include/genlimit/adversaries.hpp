#pragma once

// Adversary strategies: consistent enumerators, the two-language Venn
// adversary, the prefix-tree adversary, the nested-prefix trade-off
// adversary, and a wrapper that injects noise at scheduled steps.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "genlimit/classes.hpp"
#include "genlimit/game.hpp"
#include "genlimit/lang_algebra.hpp"

namespace genlimit {

// Smallest element of `set` strictly greater than `after` (or the minimum when
// `after` is empty); nullopt when none exists.
std::optional<Element> next_element(const SetExpr& set, std::optional<Element> after);

// Reveals L in ascending order, skipping elements in `skip`.
class Cursor {
 public:
  Cursor() = default;
  explicit Cursor(SetExpr set) : set_(std::move(set)) {}

  Element next(const ElementSet& skip);

 private:
  SetExpr set_;
  std::optional<Element> last_;
};

class EnumeratorAdversary : public Adversary {
 public:
  EnumeratorAdversary(const LanguageClass& cls, std::size_t index);

  std::string id() const override { return "enumerator:" + std::to_string(index_); }
  Element reveal(const GameView& view) override;
  std::optional<std::size_t> target() const override { return index_; }

 private:
  std::size_t index_;
  Cursor cursor_;
  ElementSet revealed_;
};

// Consistent with L_index, but each step reveals one of the `window` smallest
// unrevealed elements of L_index, chosen by a seeded generator.
class ShuffledEnumeratorAdversary : public Adversary {
 public:
  ShuffledEnumeratorAdversary(const LanguageClass& cls, std::size_t index, std::uint64_t seed,
                              std::size_t window = 4);

  std::string id() const override;
  Element reveal(const GameView& view) override;
  std::optional<std::size_t> target() const override { return index_; }

 private:
  std::size_t index_;
  std::uint64_t seed_;
  std::size_t window_;
  SetExpr set_;
  std::mt19937_64 rng_;
  std::set<Element> pool_;  // unrevealed candidates, ascending
  std::optional<Element> frontier_;
};

// Reveals the shared part {0..n-1} for n steps, then answers x̂_{n+1}: a
// point of L1 only makes L2 the target, a point of L2 only makes L1 the
// target, anything else makes L1 the target.
class VennAdversary : public Adversary {
 public:
  explicit VennAdversary(std::uint64_t n);

  std::string id() const override { return "venn:" + std::to_string(n_); }
  Element reveal(const GameView& view) override;
  std::optional<std::size_t> target() const override { return target_; }
  const LanguageClass& language_class() const { return cls_; }

 private:
  std::uint64_t n_;
  LanguageClass cls_;
  std::optional<std::size_t> target_;
  Cursor cursor_;
  ElementSet revealed_;
};

// Walks down the prefix tree for m steps. If x̂_t lies in a subtree
// language, the bit opposite to its branch is appended to s; otherwise bit 0.
// x_s is revealed each probing step. Afterwards L_s is the target and is
// enumerated.
class LittlestoneAdversary : public Adversary {
 public:
  explicit LittlestoneAdversary(std::uint64_t n);

  std::string id() const override { return "littlestone:" + std::to_string(layout_.n); }
  Element reveal(const GameView& view) override;
  std::optional<std::size_t> target() const override { return target_; }
  const LanguageClass& language_class() const { return cls_; }
  const LittlestoneLayout& layout() const { return layout_; }
  // Current bit string s (low `depth()` bits, most significant first).
  std::uint64_t bits() const { return bits_; }
  unsigned depth() const { return depth_; }

 private:
  // Branch bit of x̂ below the current node, if x̂ lies in a subtree language.
  std::optional<unsigned> branch_of(Element x) const;

  LittlestoneLayout layout_;
  LanguageClass cls_;
  std::uint64_t bits_ = 0;
  unsigned depth_ = 0;
  std::optional<std::size_t> target_;
  Cursor cursor_;
  ElementSet revealed_;
};

// Enumerates (1,1..n), (2,1..n^2), ... At the boundary step t_i (i >= 2) it
// checks x̂_{t_i}: outside L_{i-1} ends the run with L_{i-1} as target
// (rule 1); otherwise at i = i* the target is L_{i*} (rule 2). The declared
// language is then enumerated.
class TradeoffAdversary : public Adversary {
 public:
  enum class Halt { kNone, kRule1, kRule2 };

  // max_index = 0 builds the stream up to 2 i*.
  TradeoffAdversary(std::uint64_t n, std::size_t i_star, std::size_t max_index = 0);

  std::string id() const override;
  Element reveal(const GameView& view) override;
  std::optional<std::size_t> target() const override { return target_; }
  const LanguageClass& language_class() const { return cls_; }
  const TradeoffLayout& layout() const { return layout_; }

  Halt halt() const { return halt_; }
  std::size_t halt_step() const { return halt_step_; }  // t_i of the deciding boundary
  std::size_t halt_boundary() const { return halt_boundary_; }  // the i of that boundary

 private:
  TradeoffLayout layout_;
  std::size_t i_star_;
  LanguageClass cls_;
  std::size_t row_ = 1;
  std::uint64_t column_ = 0;
  Halt halt_ = Halt::kNone;
  std::size_t halt_step_ = 0;
  std::size_t halt_boundary_ = 0;
  std::optional<std::size_t> target_;
  Cursor cursor_;
  ElementSet revealed_;
};

struct NoiseSchedule {
  std::set<std::size_t> steps;
  Progression source;
};

// At scheduled steps reveals the next element of the noise source instead of
// consulting the base adversary; the base's element is deferred to the next
// unscheduled step. The base sees only its own steps.
class NoisyAdversary : public Adversary {
 public:
  // Throws NoiseSourceCollision if the source meets a class language.
  NoisyAdversary(std::unique_ptr<Adversary> base, NoiseSchedule schedule, const LanguageClass& cls);

  std::string id() const override;
  Element reveal(const GameView& view) override;
  std::optional<std::size_t> target() const override { return base_->target(); }
  const Adversary& base() const { return *base_; }
  std::size_t injected() const { return injected_; }

 private:
  std::unique_ptr<Adversary> base_;
  NoiseSchedule schedule_;
  std::vector<Element> base_generated_;
  std::vector<Element> base_revealed_;
  std::uint64_t next_noise_ = 0;
  std::size_t injected_ = 0;
};

}  // namespace genlimit
