#include "genlimit/lang_algebra.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "genlimit/errors.hpp"

namespace genlimit {

namespace {

__extension__ using i128 = __int128;

// Returns (g, x) with a*x == g (mod m), g = gcd(a, m).
std::pair<i128, i128> extended_gcd(i128 a, i128 b) {
  i128 old_r = a, r = b;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    const i128 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  return {old_r, old_s};
}

i128 floor_mod(i128 a, i128 m) {
  const i128 r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

bool Progression::subset_of(const Progression& other) const {
  return stride % other.stride == 0 && other.contains(start);
}

FiniteSet make_finite(std::vector<Element> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return FiniteSet{std::move(values)};
}

Progression make_progression(Element start, std::uint64_t stride) {
  if (stride == 0) throw std::invalid_argument("progression stride must be >= 1");
  return Progression{start, stride};
}

SetExpr::SetExpr(const std::vector<Atom>& atoms) {
  for (const Atom& atom : atoms) {
    if (const auto* f = std::get_if<FiniteSet>(&atom)) {
      finite_.insert(finite_.end(), f->values.begin(), f->values.end());
    } else {
      const auto& p = std::get<Progression>(atom);
      progressions_.push_back(make_progression(p.start, p.stride));
    }
  }
  canonicalize();
}

SetExpr::SetExpr(std::vector<Progression> progressions, std::vector<Element> finite)
    : progressions_(std::move(progressions)), finite_(std::move(finite)) {
  canonicalize();
}

void SetExpr::canonicalize() {
  auto by_stride = [](const Progression& a, const Progression& b) {
    return std::tie(a.stride, a.start) < std::tie(b.stride, b.start);
  };
  std::sort(progressions_.begin(), progressions_.end(), by_stride);
  progressions_.erase(std::unique(progressions_.begin(), progressions_.end()), progressions_.end());

  std::vector<Progression> kept;
  kept.reserve(progressions_.size());
  for (std::size_t i = 0; i < progressions_.size(); ++i) {
    bool subsumed = false;
    for (std::size_t j = 0; j < progressions_.size() && !subsumed; ++j) {
      subsumed = i != j && progressions_[i].subset_of(progressions_[j]);
    }
    if (!subsumed) kept.push_back(progressions_[i]);
  }
  progressions_ = std::move(kept);

  std::sort(finite_.begin(), finite_.end());
  finite_.erase(std::unique(finite_.begin(), finite_.end()), finite_.end());
  if (!progressions_.empty()) {
    std::erase_if(finite_, [this](Element x) {
      return std::any_of(progressions_.begin(), progressions_.end(),
                         [x](const Progression& p) { return p.contains(x); });
    });
  }
}

std::vector<Atom> SetExpr::atoms() const {
  std::vector<Atom> out;
  if (!finite_.empty()) out.emplace_back(FiniteSet{finite_});
  for (const auto& p : progressions_) out.emplace_back(p);
  return out;
}

bool SetExpr::contains(Element x) const {
  if (std::binary_search(finite_.begin(), finite_.end(), x)) return true;
  return std::any_of(progressions_.begin(), progressions_.end(),
                     [x](const Progression& p) { return p.contains(x); });
}

Language::Language(const std::vector<Atom>& atoms, std::string label)
    : Language(SetExpr(atoms), std::move(label)) {}

Language::Language(SetExpr set, std::string label) : set_(std::move(set)), label_(std::move(label)) {
  if (set_.progressions().empty()) {
    throw std::invalid_argument("language '" + label_ + "' has no progression atom (must be infinite)");
  }
}

bool contains(const Language& language, Element x) { return language.contains(x); }
bool contains(const SetExpr& set, Element x) { return set.contains(x); }

std::optional<Progression> intersect(const Progression& a, const Progression& b) {
  const i128 d = a.stride, e = b.stride;
  const auto [g, inv] = extended_gcd(d, e);
  const i128 diff = static_cast<i128>(b.start) - static_cast<i128>(a.start);
  if (diff % g != 0) return std::nullopt;
  const i128 lcm = d / g * e;
  if (lcm > static_cast<i128>(std::numeric_limits<std::int64_t>::max())) {
    throw std::overflow_error("progression intersection stride exceeds 2^63");
  }
  // a.start + d*k with d*k == diff (mod e)  =>  k == (diff/g) * inv (mod e/g)
  const i128 eg = e / g;
  const i128 k = floor_mod(floor_mod(diff / g, eg) * floor_mod(inv, eg), eg);
  const i128 residue = floor_mod(static_cast<i128>(a.start) + d * k, lcm);
  const i128 lo = std::max<i128>(a.start, b.start);
  const i128 start = lo + floor_mod(residue - lo, lcm);
  if (start > static_cast<i128>(std::numeric_limits<Element>::max())) {
    throw std::overflow_error("progression intersection start exceeds 2^64");
  }
  return Progression{static_cast<Element>(start), static_cast<std::uint64_t>(lcm)};
}

SetExpr intersect(const SetExpr& a, const SetExpr& b) {
  std::vector<Progression> progs;
  for (const auto& p : a.progressions_) {
    for (const auto& q : b.progressions_) {
      if (auto r = intersect(p, q)) progs.push_back(*r);
    }
  }
  std::vector<Element> finite;
  std::set_intersection(a.finite_.begin(), a.finite_.end(), b.finite_.begin(), b.finite_.end(),
                        std::back_inserter(finite));
  auto covered_by = [](const std::vector<Progression>& ps, Element x) {
    return std::any_of(ps.begin(), ps.end(), [x](const Progression& p) { return p.contains(x); });
  };
  for (Element x : a.finite_) {
    if (covered_by(b.progressions_, x)) finite.push_back(x);
  }
  for (Element x : b.finite_) {
    if (covered_by(a.progressions_, x)) finite.push_back(x);
  }
  return SetExpr(std::move(progs), std::move(finite));
}

Size classify_size(const SetExpr& set) {
  if (!set.progressions().empty()) return Size::unbounded();
  return Size::finite(set.finite_part().size());
}

std::optional<Element> smallest_unseen(const SetExpr& set, const ElementSet& seen) {
  std::optional<Element> best;
  for (Element x : set.finite_part()) {
    if (!seen.contains(x)) {
      best = x;
      break;
    }
  }
  for (const auto& p : set.progressions()) {
    // At most |seen| + 1 candidates before an unseen one turns up.
    Element x = p.start;
    while (seen.contains(x)) {
      if (x > std::numeric_limits<Element>::max() - p.stride) {
        throw std::overflow_error("progression scan passed 2^64");
      }
      x += p.stride;
    }
    if (!best || x < *best) best = x;
  }
  return best;
}

Element smallest_unseen_element(const ElementSet& seen) {
  Element x = 0;
  while (seen.contains(x)) ++x;
  return x;
}

struct LanguageClass::Impl {
  std::string name;
  bool finite = true;
  std::size_t size = 0;
  Constructor constructor;
  std::mutex mutex;
  std::vector<std::unique_ptr<Language>> cache;
};

LanguageClass LanguageClass::finite(std::vector<Language> languages, std::string name) {
  if (languages.empty()) throw std::invalid_argument("a finite class needs at least one language");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->finite = true;
  impl->size = languages.size();
  for (auto& l : languages) impl->cache.push_back(std::make_unique<Language>(std::move(l)));
  return LanguageClass(std::move(impl));
}

LanguageClass LanguageClass::stream(Constructor constructor, std::size_t max_index,
                                    std::string name) {
  if (max_index == 0) throw std::invalid_argument("a stream needs max_index >= 1");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->finite = false;
  impl->size = max_index;
  impl->constructor = std::move(constructor);
  impl->cache.resize(max_index);
  return LanguageClass(std::move(impl));
}

bool LanguageClass::is_finite() const { return impl_->finite; }
std::size_t LanguageClass::size() const { return impl_->size; }
const std::string& LanguageClass::name() const { return impl_->name; }

const Language& LanguageClass::at(std::size_t index) const {
  if (index == 0 || index > impl_->size) {
    throw IndexOutOfRange("language index " + std::to_string(index) + " outside [1, " +
                          std::to_string(impl_->size) + "]");
  }
  std::lock_guard<std::mutex> lock(impl_->mutex);
  auto& slot = impl_->cache[index - 1];
  if (!slot) slot = std::make_unique<Language>(impl_->constructor(index));
  return *slot;
}

namespace {

// Walks subcollections of `members` in index order, extending only while the
// running intersection stays infinite: once finite, every superset is no larger.
void max_finite_intersection(const std::vector<const Language*>& members, std::size_t pos,
                             const SetExpr* current, std::uint64_t& best) {
  for (std::size_t j = pos; j < members.size(); ++j) {
    SetExpr next = current ? intersect(*current, members[j]->set()) : members[j]->set();
    const Size size = classify_size(next);
    if (size.infinite) {
      max_finite_intersection(members, j + 1, &next, best);
    } else {
      best = std::max(best, size.count);
    }
  }
}

}  // namespace

std::uint64_t closure_dimension(const LanguageClass& cls) {
  if (!cls.is_finite()) throw std::invalid_argument("closure_dimension needs a finite class");
  if (cls.size() > kBruteForceCap) {
    throw ClassTooLarge("closure_dimension: class has " + std::to_string(cls.size()) +
                        " languages, cap is " + std::to_string(kBruteForceCap));
  }
  std::vector<const Language*> members;
  for (std::size_t i = 1; i <= cls.size(); ++i) members.push_back(&cls.at(i));
  std::uint64_t best = 0;
  max_finite_intersection(members, 0, nullptr, best);
  return best;
}

std::uint64_t nonuniform_complexity(const LanguageClass& cls, std::size_t i) {
  if (i == 0 || i > cls.size()) {
    throw IndexOutOfRange("nonuniform_complexity: index " + std::to_string(i) + " outside [1, " +
                          std::to_string(cls.size()) + "]");
  }
  if (i > kBruteForceCap) {
    throw ClassTooLarge("nonuniform_complexity: index " + std::to_string(i) + " exceeds cap " +
                        std::to_string(kBruteForceCap));
  }
  std::vector<const Language*> predecessors;
  for (std::size_t j = 1; j < i; ++j) predecessors.push_back(&cls.at(j));
  std::uint64_t best = 0;
  // The empty subcollection leaves L_i itself, which is infinite.
  max_finite_intersection(predecessors, 0, &cls.at(i).set(), best);
  return best;
}

Element PairCode::encode(std::uint64_t i, std::uint64_t j) const {
  if (i == 0 || j == 0 || i > row_cap) {
    throw std::out_of_range("PairCode::encode: (" + std::to_string(i) + "," + std::to_string(j) +
                            ") outside row cap " + std::to_string(row_cap));
  }
  return (j - 1) * row_cap + (i - 1);
}

std::pair<std::uint64_t, std::uint64_t> PairCode::decode(Element x) const {
  return {x % row_cap + 1, x / row_cap + 1};
}

std::string describe(const SetExpr& set) {
  std::ostringstream out;
  bool first = true;
  if (!set.finite_part().empty()) {
    out << '{';
    const auto& f = set.finite_part();
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i == 8 && f.size() > 10) {
        out << ",...," << f.back();
        break;
      }
      out << (i ? "," : "") << f[i];
    }
    out << '}';
    first = false;
  }
  for (const auto& p : set.progressions()) {
    out << (first ? "" : " u ") << '{' << p.start << '+' << p.stride << "k}";
    first = false;
  }
  if (first) out << "{}";
  return out.str();
}

}  // namespace genlimit
