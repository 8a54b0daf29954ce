#pragma once

// Computable languages over the naturals: finite unions of explicit finite
// sets and unbounded arithmetic progressions. The carrier is closed under
// intersection, which is all the generators and dimension measures need.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

namespace genlimit {

using Element = std::uint64_t;
using ElementSet = std::unordered_set<Element>;

struct FiniteSet {
  std::vector<Element> values;  // strictly increasing

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;
};

// {start + k * stride : k >= 0}, stride >= 1.
struct Progression {
  Element start = 0;
  std::uint64_t stride = 1;

  bool contains(Element x) const { return x >= start && (x - start) % stride == 0; }
  bool subset_of(const Progression& other) const;

  friend auto operator<=>(const Progression&, const Progression&) = default;
};

using Atom = std::variant<FiniteSet, Progression>;

FiniteSet make_finite(std::vector<Element> values);
Progression make_progression(Element start, std::uint64_t stride);

struct Size {
  bool infinite = false;
  std::uint64_t count = 0;  // meaningful only when !infinite

  static Size finite(std::uint64_t n) { return {false, n}; }
  static Size unbounded() { return {true, 0}; }
  friend bool operator==(const Size&, const Size&) = default;
};

// Canonical union of atoms: no progression is a subset of another, the finite
// atoms are merged into one sorted list, and finite elements already covered
// by a progression are dropped.
class SetExpr {
 public:
  SetExpr() = default;
  explicit SetExpr(const std::vector<Atom>& atoms);

  static SetExpr universe() { return SetExpr({make_progression(0, 1)}); }

  const std::vector<Progression>& progressions() const { return progressions_; }
  const std::vector<Element>& finite_part() const { return finite_; }
  std::vector<Atom> atoms() const;

  bool empty() const { return progressions_.empty() && finite_.empty(); }
  bool contains(Element x) const;

  friend bool operator==(const SetExpr&, const SetExpr&) = default;

 private:
  SetExpr(std::vector<Progression> progressions, std::vector<Element> finite);
  void canonicalize();

  std::vector<Progression> progressions_;
  std::vector<Element> finite_;

  friend SetExpr intersect(const SetExpr& a, const SetExpr& b);
};

// An infinite language; at least one atom is a progression.
class Language {
 public:
  Language(const std::vector<Atom>& atoms, std::string label = {});
  explicit Language(SetExpr set, std::string label = {});

  const SetExpr& set() const { return set_; }
  const std::string& label() const { return label_; }
  bool contains(Element x) const { return set_.contains(x); }

 private:
  SetExpr set_;
  std::string label_;
};

bool contains(const Language& language, Element x);
bool contains(const SetExpr& set, Element x);

// Progression pairs are intersected by solving the congruence system.
SetExpr intersect(const SetExpr& a, const SetExpr& b);
std::optional<Progression> intersect(const Progression& a, const Progression& b);

Size classify_size(const SetExpr& set);

// Minimum of set \ seen, or nullopt when that difference is empty.
std::optional<Element> smallest_unseen(const SetExpr& set, const ElementSet& seen);

// Smallest natural number not in `seen`.
Element smallest_unseen_element(const ElementSet& seen);

// A class is either an explicit finite list or an indexed stream that is
// materialized lazily up to a declared maximum index. Indices are 1-based.
// Copies share the (thread-safe) materialization cache.
class LanguageClass {
 public:
  using Constructor = std::function<Language(std::size_t)>;

  static LanguageClass finite(std::vector<Language> languages, std::string name = {});
  static LanguageClass stream(Constructor constructor, std::size_t max_index,
                              std::string name = {});

  bool is_finite() const;
  // Number of materializable languages.
  std::size_t size() const;
  const Language& at(std::size_t index) const;
  const std::string& name() const;

 private:
  struct Impl;
  explicit LanguageClass(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

// Upper limit on brute-force subcollection enumeration.
inline constexpr std::size_t kBruteForceCap = 25;

// Largest finite intersection over nonempty subcollections; 0 if none is finite.
std::uint64_t closure_dimension(const LanguageClass& cls);

// Largest finite |L_1' ∩ ... ∩ L_k' ∩ L_i| over subcollections of L_1..L_{i-1}.
std::uint64_t nonuniform_complexity(const LanguageClass& cls, std::size_t i);

// N x N embedding: (i, j) -> (j - 1) * row_cap + (i - 1), with 1 <= i <= row_cap.
// Row i is then the progression {i - 1 + k * row_cap}.
struct PairCode {
  std::uint64_t row_cap = 1;

  Element encode(std::uint64_t i, std::uint64_t j) const;
  std::pair<std::uint64_t, std::uint64_t> decode(Element x) const;
  Progression row(std::uint64_t i) const { return make_progression(i - 1, row_cap); }
};

std::string describe(const SetExpr& set);

}  // namespace genlimit
