#pragma once

// Intersection-based generators: the uniform baseline that plays inside the
// intersection of every consistent language, and Modified-Greedy, which
// refines by consistent languages in index order while the running
// intersection stays nonempty.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "genlimit/game.hpp"
#include "genlimit/lang_algebra.hpp"

namespace genlimit {

// Tracks C = {i : x_{1:t-1} ⊆ L_i} over the materialized prefix of a class.
// Each update is checked against a recomputation from scratch.
class ConsistentSet {
 public:
  explicit ConsistentSet(LanguageClass cls) : cls_(std::move(cls)) {}

  // Materializes indices up to `count` (clamped to the class size).
  void extend_to(std::size_t count);
  // Returns the indices that were consistent and are not after adding x.
  std::vector<std::size_t> add(Element x);

  const std::vector<std::size_t>& indices() const { return indices_; }
  bool consistent(std::size_t i) const;
  std::size_t materialized() const { return flags_.size(); }
  const std::vector<Element>& history() const { return history_; }
  const ElementSet& seen() const { return seen_; }

  // From-scratch recomputation over the materialized prefix.
  std::vector<std::size_t> recompute() const;

 private:
  LanguageClass cls_;
  std::vector<bool> flags_;
  std::vector<std::size_t> indices_;
  std::vector<Element> history_;
  ElementSet seen_;
};

// Smallest unseen element of the intersection of every consistent language,
// else the smallest unseen element.
Element uniform_gen_step(const ConsistentSet& consistent, const LanguageClass& cls);

class UniformBaselineGenerator : public Generator {
 public:
  explicit UniformBaselineGenerator(LanguageClass cls);

  std::string id() const override { return "uniform_baseline"; }
  Element propose(std::span<const Element> revealed) override;
  void observe(Element generated, Element revealed) override;

  const ConsistentSet& consistent() const { return consistent_; }

 private:
  LanguageClass cls_;
  ConsistentSet consistent_;
};

// One step of Modified-Greedy at step t over languages L_1..L_min(t, |class|).
Element modified_greedy_step(const ConsistentSet& consistent, const LanguageClass& cls, std::size_t t);

class ModifiedGreedyGenerator : public Generator {
 public:
  explicit ModifiedGreedyGenerator(LanguageClass cls);

  std::string id() const override { return "modified_greedy"; }
  Element propose(std::span<const Element> revealed) override;
  void observe(Element generated, Element revealed) override;

  const ConsistentSet& consistent() const { return consistent_; }
  // eliminated()[t - 1]: indices that turned inconsistent when x_t arrived.
  const std::vector<std::vector<std::size_t>>& eliminated() const { return eliminated_; }

 private:
  LanguageClass cls_;
  ConsistentSet consistent_;
  std::vector<std::vector<std::size_t>> eliminated_;
};

// Plays the smallest unseen element of one fixed language, ignoring the game.
class CommittedGenerator : public Generator {
 public:
  CommittedGenerator(LanguageClass cls, std::size_t index);

  std::string id() const override { return "committed:" + std::to_string(index_); }
  Element propose(std::span<const Element> revealed) override;
  void observe(Element, Element revealed) override { seen_.insert(revealed); }

 private:
  LanguageClass cls_;
  std::size_t index_;
  ElementSet seen_;
};

struct GreedyBounds {
  std::uint64_t last_mistake = 0;  // max{i - 1, m(L_i) + 1}
  std::uint64_t mistakes = 0;      // min{2(i - 1), last_mistake}
};

GreedyBounds greedy_bounds(const LanguageClass& cls, std::size_t i);
GreedyBounds greedy_bounds_from_complexity(std::size_t i, std::uint64_t m);

}  // namespace genlimit
