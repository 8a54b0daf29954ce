#pragma once

// Parametric language classes used by the lower-bound constructions, plus
// loading of classes from JSON.

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "genlimit/lang_algebra.hpp"

namespace genlimit {

// Two languages sharing exactly {0, ..., n-1}; private tails {n + 3k} and
// {n + 1 + 3k}. Residue n + 2 (mod 3) is left free.
LanguageClass venn_class(std::uint64_t n);

// Prefix-coded class of size n: m = floor(log2 n) levels of points x_p, one
// language per bit string v of length m holding x_p for every prefix p of v,
// dummy languages padding the class to n. Every language owns the private
// tail {|B| + r + k (n + 1)}; residue |B| + n is free.
struct LittlestoneLayout {
  std::uint64_t n = 2;
  unsigned m = 1;

  std::uint64_t prefix_points() const { return (std::uint64_t{2} << m) - 2; }
  // Point x_p for the bit string given by the low `length` bits of `bits`
  // (most significant bit first).
  Element point(std::uint64_t bits, unsigned length) const;
  // Inverse of point(); nullopt for elements outside the prefix block.
  std::optional<std::pair<std::uint64_t, unsigned>> prefix_of(Element x) const;
  // 0-based owner of a tail element (a leaf string when < 2^m, else a dummy).
  std::optional<std::uint64_t> tail_owner(Element x) const;
  std::uint64_t leaves() const { return std::uint64_t{1} << m; }
  Progression tail(std::uint64_t owner) const;
};

LittlestoneLayout littlestone_layout(std::uint64_t n);
LanguageClass littlestone_class(std::uint64_t n);

// Nested-prefix stream on N x N (PairCode with row_cap):
//   L_i = {(i, j) : j >= 1}  u  {(k, j) : k < i, j <= n^k}.
struct TradeoffLayout {
  std::uint64_t n = 2;
  std::size_t max_index = 1;
  PairCode code;

  // 1 + sum_{j < i} n^j: the step at which (i, 1) would be enumerated.
  std::uint64_t boundary(std::size_t i) const;
  std::uint64_t row_length(std::size_t k) const;  // n^k
};

TradeoffLayout tradeoff_layout(std::uint64_t n, std::size_t max_index, std::uint64_t row_cap = 0);
LanguageClass tradeoff_class(const TradeoffLayout& layout);

// `languages` random languages, each a few explicit values in [0, bound] plus
// one progression with start in [0, bound] and stride in {1, 2, 3, 4, 6}.
LanguageClass random_class(std::size_t languages, std::uint64_t bound, std::uint64_t seed);

// A progression disjoint from every language of the class (searched over
// residues modulo the lcm of all strides), if one exists.
std::optional<Progression> find_disjoint_progression(const LanguageClass& cls);

// Builds a class from JSON. Explicit form:
//   {"name": "...", "languages": [{"label": "A", "atoms": [{"finite": [1, 2]},
//                                  {"progression": {"start": 0, "stride": 3}}]}]}
// Builder form: {"builder": "venn", "n": 6}, {"builder": "littlestone", "n": 8},
//   {"builder": "tradeoff", "n": 3, "max_index": 8, "row_cap": 9},
//   {"builder": "random", "languages": 5, "bound": 64, "seed": 7}.
// `key_path` prefixes ConfigError messages; `default_seed` feeds "random".
LanguageClass class_from_json(const nlohmann::json& config, const std::string& key_path = "class",
                              std::uint64_t default_seed = 0);

}  // namespace genlimit
