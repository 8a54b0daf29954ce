#pragma once

// Brute-force reference implementations used by the tests. They rely only on
// raw membership (Language::contains) and on scanning a window of the
// universe large enough that every periodic residue is visible; nothing here
// calls into the library's set algebra or search code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "genlimit/lang_algebra.hpp"

namespace oracle {

using genlimit::Element;
using genlimit::LanguageClass;
using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;

// Membership is eventually periodic: beyond `threshold` it repeats with `period`.
struct Periodicity {
  Element threshold = 0;
  std::uint64_t period = 1;
};

inline Periodicity periodicity(const LanguageClass& cls, std::size_t upto = 0) {
  Periodicity p;
  const std::size_t n = upto == 0 ? cls.size() : upto;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto& s = cls.at(i).set();
    for (const auto& prog : s.progressions()) {
      p.period = std::lcm(p.period, prog.stride);
      p.threshold = std::max(p.threshold, prog.start);
    }
    for (Element x : s.finite_part()) p.threshold = std::max(p.threshold, x + 1);
  }
  return p;
}

inline bool in_all(const LanguageClass& cls, const std::vector<std::size_t>& subset, Element x) {
  return std::all_of(subset.begin(), subset.end(), [&](std::size_t i) { return cls.at(i).contains(x); });
}

// |∩ subset|, nullopt when infinite.
inline std::optional<std::uint64_t> intersection_size(const LanguageClass& cls,
                                                      const std::vector<std::size_t>& subset) {
  const Periodicity p = periodicity(cls);
  for (Element x = p.threshold; x < p.threshold + p.period; ++x) {
    if (in_all(cls, subset, x)) return std::nullopt;
  }
  std::uint64_t count = 0;
  for (Element x = 0; x < p.threshold; ++x) count += in_all(cls, subset, x) ? 1 : 0;
  return count;
}

inline void for_each_subset(const std::vector<std::size_t>& pool,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  const std::size_t k = pool.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t b = 0; b < k; ++b) {
      if ((mask >> b) & 1U) s.push_back(pool[b]);
    }
    fn(s);
  }
}

// max |∩ S| over nonempty subcollections with a finite intersection.
inline std::uint64_t cdim(const LanguageClass& cls) {
  std::vector<std::size_t> all(cls.size());
  std::iota(all.begin(), all.end(), std::size_t{1});
  std::uint64_t best = 0;
  for_each_subset(all, [&](const std::vector<std::size_t>& s) {
    if (s.empty()) return;
    if (auto size = intersection_size(cls, s)) best = std::max(best, *size);
  });
  return best;
}

// max |L_i ∩ ∩ S| over S ⊆ {1..i-1} with a finite result.
inline std::uint64_t nonuniform_m(const LanguageClass& cls, std::size_t i) {
  std::vector<std::size_t> before(i - 1);
  std::iota(before.begin(), before.end(), std::size_t{1});
  std::uint64_t best = 0;
  for_each_subset(before, [&](const std::vector<std::size_t>& s) {
    auto with = s;
    with.push_back(i);
    if (auto size = intersection_size(cls, with)) best = std::max(best, *size);
  });
  return best;
}

// Largest t >= 1 with f(t) < i, 0 if f(t) >= i everywhere, nullopt if f never reaches i.
inline std::optional<std::uint64_t> f_inverse(const std::function<std::uint64_t(std::uint64_t)>& f,
                                              std::uint64_t i, std::uint64_t horizon = 200) {
  std::optional<std::uint64_t> last_below;
  bool reaches = false;
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    if (f(t) < i) {
      last_below = t;
    } else {
      reaches = true;
    }
  }
  if (!reaches) return std::nullopt;
  return last_below.value_or(0);
}

inline std::uint64_t pow2_growth(std::uint64_t t) { return t >= 63 ? UINT64_MAX : std::uint64_t{1} << t; }

// Largest k with 2^k <= q, q > 0.
inline std::int64_t floor_log2(const Q& q) {
  std::int64_t k = 0;
  Q v = q;
  while (v >= 2) {
    v /= 2;
    ++k;
  }
  while (v < 1) {
    v *= 2;
    --k;
  }
  return k;
}

// Plain replay of the weighted algorithm's weights for a finite window
// schedule: `window(t)` languages are active at step t.
class WeightReplay {
 public:
  WeightReplay(const LanguageClass& cls, std::function<Q(std::size_t)> w0,
               std::function<std::size_t(std::uint64_t)> window)
      : cls_(cls), w0_(std::move(w0)), window_(std::move(window)) {
    for (std::size_t i = 1; i <= window_(1); ++i) weights_.push_back(w0_(i));
  }

  Q score(Element x) const {
    Q s = 0;
    for (std::size_t i = 1; i <= weights_.size(); ++i) {
      if (cls_.at(i).contains(x)) s += weights_[i - 1];
    }
    return s;
  }

  // Best score among unseen elements, found by scanning far enough that every
  // residue class keeps an unseen representative.
  Q best_unseen_score() const {
    const Periodicity p = periodicity(cls_, weights_.size());
    const Element limit = p.threshold + p.period * (seen_.size() + 2);
    Q best = -1;
    for (Element x = 0; x < limit; ++x) {
      if (!seen_.contains(x)) best = std::max(best, score(x));
    }
    return best;
  }

  void step(Element generated, Element revealed) {
    ++t_;
    for (std::size_t i = 1; i <= weights_.size(); ++i) {
      Q& w = weights_[i - 1];
      if (!cls_.at(i).contains(revealed)) {
        w = 0;
      } else if (!cls_.at(i).contains(generated)) {
        w *= 2;
      }
    }
    seen_.insert(revealed);
    history_.push_back(revealed);
    for (std::size_t i = weights_.size() + 1; i <= window_(t_ + 1); ++i) {
      const bool consistent =
          std::all_of(history_.begin(), history_.end(), [&](Element x) { return cls_.at(i).contains(x); });
      weights_.push_back(consistent ? w0_(i) : Q(0));
    }
  }

  const std::vector<Q>& weights() const { return weights_; }
  const std::set<Element>& seen() const { return seen_; }

 private:
  const LanguageClass& cls_;
  std::function<Q(std::size_t)> w0_;
  std::function<std::size_t(std::uint64_t)> window_;
  std::vector<Q> weights_;
  std::set<Element> seen_;
  std::vector<Element> history_;
  std::uint64_t t_ = 0;
};

inline Element scan_limit(const LanguageClass& cls, std::size_t upto, std::size_t seen) {
  const Periodicity p = periodicity(cls, upto);
  return p.threshold + p.period * (seen + 2);
}

// Modified-Greedy, spelled out with explicit bit vectors; smallest element of I_t.
inline Element greedy_step(const LanguageClass& cls, const std::vector<Element>& history, std::size_t t) {
  const std::size_t top = std::min(t, cls.size());
  const std::set<Element> seen(history.begin(), history.end());
  const Element limit = scan_limit(cls, top, seen.size());
  std::vector<bool> running(limit);
  for (Element x = 0; x < limit; ++x) running[x] = !seen.contains(x);
  for (std::size_t i = 1; i <= top; ++i) {
    const auto& L = cls.at(i);
    if (!std::all_of(history.begin(), history.end(), [&](Element x) { return L.contains(x); })) continue;
    std::vector<bool> next(limit);
    bool any = false;
    for (Element x = 0; x < limit; ++x) {
      next[x] = running[x] && L.contains(x);
      any = any || next[x];
    }
    if (any) running = std::move(next);
  }
  for (Element x = 0; x < limit; ++x) {
    if (running[x]) return x;
  }
  return limit;  // unreachable: running always keeps an unseen element
}

// Smallest unseen element of the intersection of all consistent languages,
// else the smallest unseen element.
inline Element uniform_step(const LanguageClass& cls, const std::vector<Element>& history) {
  const std::set<Element> seen(history.begin(), history.end());
  std::vector<std::size_t> consistent;
  for (std::size_t i = 1; i <= cls.size(); ++i) {
    const auto& L = cls.at(i);
    if (std::all_of(history.begin(), history.end(), [&](Element x) { return L.contains(x); })) {
      consistent.push_back(i);
    }
  }
  const Element limit = scan_limit(cls, cls.size(), seen.size());
  for (Element x = 0; x < limit; ++x) {
    if (!seen.contains(x) && in_all(cls, consistent, x)) return x;
  }
  Element x = 0;
  while (seen.contains(x)) ++x;
  return x;
}

// Exact minimax over explicit elements: the generator picks an unrevealed
// element, the adversary reveals one, and at the end the adversary names any
// language containing every reveal. Elements come from a pool wide enough that
// no periodic residue runs dry within `depth` steps.
class NaiveMinimax {
 public:
  NaiveMinimax(const LanguageClass& cls, std::size_t depth) : cls_(cls), depth_(depth) {
    const Periodicity p = periodicity(cls);
    pool_size_ = static_cast<std::size_t>(p.threshold + p.period * (depth + 1));
    for (Element x = 0; x < pool_size_; ++x) {
      std::uint32_t mask = 0;
      for (std::size_t i = 1; i <= cls.size(); ++i) mask |= cls.at(i).contains(x) ? (1U << (i - 1)) : 0U;
      masks_.push_back(mask);
    }
  }

  std::size_t pool_size() const { return pool_size_; }

  std::uint64_t solve() {
    std::vector<std::uint64_t> mistakes(cls_.size(), 0);
    std::vector<bool> revealed(pool_size_, false);
    return value(revealed, (1U << cls_.size()) - 1, mistakes, depth_);
  }

 private:
  using Key = std::tuple<std::vector<bool>, std::uint32_t, std::vector<std::uint64_t>, std::size_t>;

  std::uint64_t value(std::vector<bool>& revealed, std::uint32_t consistent, std::vector<std::uint64_t>& mistakes,
                      std::size_t remaining) {
    if (remaining == 0) {
      std::uint64_t worst = 0;
      for (std::size_t l = 0; l < cls_.size(); ++l) {
        if ((consistent >> l) & 1U) worst = std::max(worst, mistakes[l]);
      }
      return worst;
    }
    Key key{revealed, consistent, mistakes, remaining};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::uint64_t best = UINT64_MAX;
    for (Element g = 0; g < pool_size_; ++g) {
      if (revealed[g]) continue;
      for (std::size_t l = 0; l < cls_.size(); ++l) mistakes[l] += ((masks_[g] >> l) & 1U) ? 0 : 1;
      std::uint64_t worst = 0;
      for (Element x = 0; x < pool_size_; ++x) {
        const std::uint32_t next = consistent & masks_[x];
        if (revealed[x] || next == 0) continue;
        revealed[x] = true;
        worst = std::max(worst, value(revealed, next, mistakes, remaining - 1));
        revealed[x] = false;
      }
      for (std::size_t l = 0; l < cls_.size(); ++l) mistakes[l] -= ((masks_[g] >> l) & 1U) ? 0 : 1;
      best = std::min(best, worst);
    }
    memo_.emplace(std::move(key), best);
    return best;
  }

  const LanguageClass& cls_;
  std::size_t depth_;
  std::size_t pool_size_ = 0;
  std::vector<std::uint32_t> masks_;
  std::map<Key, std::uint64_t> memo_;
};

}  // namespace oracle
