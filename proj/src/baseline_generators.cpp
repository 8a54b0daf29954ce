#include "genlimit/baseline_generators.hpp"

#include <algorithm>
#include <stdexcept>

#include "genlimit/errors.hpp"

namespace genlimit {

void ConsistentSet::extend_to(std::size_t count) {
  count = std::min(count, cls_.size());
  while (flags_.size() < count) {
    const std::size_t i = flags_.size() + 1;
    const Language& language = cls_.at(i);
    const bool ok = std::all_of(history_.begin(), history_.end(),
                                [&language](Element x) { return language.contains(x); });
    flags_.push_back(ok);
    if (ok) indices_.push_back(i);
  }
}

std::vector<std::size_t> ConsistentSet::add(Element x) {
  history_.push_back(x);
  seen_.insert(x);
  std::vector<std::size_t> dropped;
  std::vector<std::size_t> kept;
  for (std::size_t i : indices_) {
    if (cls_.at(i).contains(x)) {
      kept.push_back(i);
    } else {
      flags_[i - 1] = false;
      dropped.push_back(i);
    }
  }
  indices_ = std::move(kept);
  if (indices_ != recompute()) throw std::logic_error("consistent set drifted from recomputation");
  return dropped;
}

bool ConsistentSet::consistent(std::size_t i) const { return i >= 1 && i <= flags_.size() && flags_[i - 1]; }

std::vector<std::size_t> ConsistentSet::recompute() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= flags_.size(); ++i) {
    const Language& language = cls_.at(i);
    if (std::all_of(history_.begin(), history_.end(), [&language](Element x) { return language.contains(x); })) {
      out.push_back(i);
    }
  }
  return out;
}

Element uniform_gen_step(const ConsistentSet& consistent, const LanguageClass& cls) {
  if (!consistent.indices().empty()) {
    SetExpr common = cls.at(consistent.indices().front()).set();
    for (std::size_t k = 1; k < consistent.indices().size() && !common.empty(); ++k) {
      common = intersect(common, cls.at(consistent.indices()[k]).set());
    }
    if (auto x = smallest_unseen(common, consistent.seen())) return *x;
  }
  return smallest_unseen_element(consistent.seen());
}

UniformBaselineGenerator::UniformBaselineGenerator(LanguageClass cls)
    : cls_(cls), consistent_(std::move(cls)) {
  if (!cls_.is_finite()) throw std::invalid_argument("uniform baseline needs a finite class");
  consistent_.extend_to(cls_.size());
}

Element UniformBaselineGenerator::propose(std::span<const Element>) {
  return uniform_gen_step(consistent_, cls_);
}

void UniformBaselineGenerator::observe(Element, Element revealed) { consistent_.add(revealed); }

Element modified_greedy_step(const ConsistentSet& consistent, const LanguageClass& cls, std::size_t t) {
  const std::size_t limit = std::min(t, cls.size());
  if (consistent.materialized() < limit) throw std::logic_error("modified_greedy_step: prefix not materialized");
  SetExpr running = SetExpr::universe();
  for (std::size_t i : consistent.indices()) {
    if (i > limit) break;
    SetExpr narrowed = intersect(running, cls.at(i).set());
    if (smallest_unseen(narrowed, consistent.seen())) running = std::move(narrowed);
  }
  return *smallest_unseen(running, consistent.seen());
}

ModifiedGreedyGenerator::ModifiedGreedyGenerator(LanguageClass cls)
    : cls_(cls), consistent_(std::move(cls)) {}

Element ModifiedGreedyGenerator::propose(std::span<const Element> revealed) {
  const std::size_t t = revealed.size() + 1;
  consistent_.extend_to(t);
  return modified_greedy_step(consistent_, cls_, t);
}

void ModifiedGreedyGenerator::observe(Element, Element revealed) {
  eliminated_.push_back(consistent_.add(revealed));
}

CommittedGenerator::CommittedGenerator(LanguageClass cls, std::size_t index)
    : cls_(std::move(cls)), index_(index) {
  if (index_ < 1 || index_ > cls_.size()) {
    throw IndexOutOfRange("committed generator index " + std::to_string(index_) + " outside the class");
  }
}

Element CommittedGenerator::propose(std::span<const Element>) {
  return *smallest_unseen(cls_.at(index_).set(), seen_);
}

GreedyBounds greedy_bounds_from_complexity(std::size_t i, std::uint64_t m) {
  if (i == 0) throw IndexOutOfRange("language indices are 1-based");
  GreedyBounds b;
  b.last_mistake = std::max<std::uint64_t>(i - 1, m + 1);
  b.mistakes = std::min<std::uint64_t>(2 * (i - 1), b.last_mistake);
  return b;
}

GreedyBounds greedy_bounds(const LanguageClass& cls, std::size_t i) {
  return greedy_bounds_from_complexity(i, nonuniform_complexity(cls, i));
}

}  // namespace genlimit
