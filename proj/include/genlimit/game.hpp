#pragma once

// The online generation game. At every step t the generator moves first and
// outputs x̂_t, which may not repeat any element the adversary revealed
// earlier; the adversary then reveals x_t. Mistakes are scored post hoc
// against the target the adversary declares (possibly mid-game).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "genlimit/lang_algebra.hpp"

namespace genlimit {

class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::string id() const = 0;
  // `revealed` is x_1..x_{t-1}. Must return an element outside it.
  virtual Element propose(std::span<const Element> revealed) = 0;
  virtual void observe(Element generated, Element revealed) = 0;
};

struct GameView {
  std::size_t t = 0;                    // current step, 1-based
  std::span<const Element> generated;   // x̂_1..x̂_t
  std::span<const Element> revealed;    // x_1..x_{t-1}
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string id() const = 0;
  virtual Element reveal(const GameView& view) = 0;
  // 1-based index of the declared target, once committed. Never changes afterwards.
  virtual std::optional<std::size_t> target() const = 0;
};

struct StepRecord {
  std::size_t t = 0;
  Element generated = 0;
  Element revealed = 0;
  bool generator_mistake = false;  // generated ∉ target
  bool adversary_noise = false;    // revealed ∉ target

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct Transcript {
  std::vector<StepRecord> steps;
  std::size_t target_index = 0;
  std::size_t horizon = 0;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

struct GameResult {
  Transcript transcript;
  std::size_t total_mistakes = 0;
  std::size_t last_mistake_time = 0;  // 0 when no mistakes
  std::size_t noise_count = 0;
};

struct GameOptions {
  std::size_t horizon = 1;
  // Reject repeated reveals. When off, a repeated reveal is recorded but adds
  // nothing to the history the players see.
  bool enforce_unique_reveals = true;
  // Used when the adversary never declares a target.
  std::optional<std::size_t> static_target;
};

GameResult run_game(const LanguageClass& cls, Generator& generator, Adversary& adversary,
                    const GameOptions& options);

std::size_t total_mistakes(const GameResult& result);
std::size_t last_mistake_time(const GameResult& result);
std::size_t total_mistakes(const Transcript& transcript);
std::size_t last_mistake_time(const Transcript& transcript);

// CSV with header "t,generated,revealed,generator_mistake,adversary_noise";
// flags are written as 0/1.
void write_transcript_csv(std::ostream& out, const Transcript& transcript);
std::string transcript_csv(const Transcript& transcript);

}  // namespace genlimit
