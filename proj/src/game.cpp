#include "genlimit/game.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "genlimit/errors.hpp"

namespace genlimit {

GameResult run_game(const LanguageClass& cls, Generator& generator, Adversary& adversary,
                    const GameOptions& options) {
  if (options.horizon == 0) throw std::invalid_argument("run_game: horizon must be >= 1");

  std::vector<Element> generated;
  std::vector<Element> history;  // distinct reveals, in order
  std::vector<Element> raw_reveals;
  ElementSet seen;
  generated.reserve(options.horizon);
  history.reserve(options.horizon);

  for (std::size_t t = 1; t <= options.horizon; ++t) {
    const Element guess = generator.propose(history);
    if (seen.contains(guess)) {
      throw GameError(GameError::Kind::kGeneratorRepeatedElement,
                      generator.id() + " repeated revealed element " + std::to_string(guess) +
                          " at t=" + std::to_string(t));
    }
    generated.push_back(guess);

    const GameView view{t, generated, history};
    const Element shown = adversary.reveal(view);
    raw_reveals.push_back(shown);
    if (seen.contains(shown)) {
      if (options.enforce_unique_reveals) {
        throw GameError(GameError::Kind::kAdversaryRepeatedElement,
                        adversary.id() + " repeated element " + std::to_string(shown) + " at t=" +
                            std::to_string(t));
      }
      continue;  // duplicates carry no information; the generator never sees them
    }
    generator.observe(guess, shown);
    seen.insert(shown);
    history.push_back(shown);
  }

  const std::optional<std::size_t> declared = adversary.target() ? adversary.target() : options.static_target;
  if (!declared) {
    throw GameError(GameError::Kind::kTargetNeverDeclared,
                    adversary.id() + " never declared a target within horizon " +
                        std::to_string(options.horizon));
  }
  const Language& target = cls.at(*declared);

  GameResult result;
  result.transcript.target_index = *declared;
  result.transcript.horizon = options.horizon;
  for (std::size_t t = 1; t <= options.horizon; ++t) {
    StepRecord step;
    step.t = t;
    step.generated = generated[t - 1];
    step.revealed = raw_reveals[t - 1];
    step.generator_mistake = !target.contains(step.generated);
    step.adversary_noise = !target.contains(step.revealed);
    result.transcript.steps.push_back(step);
    if (step.adversary_noise) ++result.noise_count;
  }
  result.total_mistakes = total_mistakes(result.transcript);
  result.last_mistake_time = last_mistake_time(result.transcript);
  return result;
}

std::size_t total_mistakes(const Transcript& transcript) {
  std::size_t n = 0;
  for (const auto& s : transcript.steps) n += s.generator_mistake ? 1 : 0;
  return n;
}

std::size_t last_mistake_time(const Transcript& transcript) {
  std::size_t last = 0;
  for (const auto& s : transcript.steps) {
    if (s.generator_mistake) last = s.t;
  }
  return last;
}

std::size_t total_mistakes(const GameResult& result) { return total_mistakes(result.transcript); }
std::size_t last_mistake_time(const GameResult& result) { return last_mistake_time(result.transcript); }

void write_transcript_csv(std::ostream& out, const Transcript& transcript) {
  out << "t,generated,revealed,generator_mistake,adversary_noise\n";
  for (const auto& s : transcript.steps) {
    out << s.t << ',' << s.generated << ',' << s.revealed << ',' << (s.generator_mistake ? 1 : 0)
        << ',' << (s.adversary_noise ? 1 : 0) << '\n';
  }
}

std::string transcript_csv(const Transcript& transcript) {
  std::ostringstream out;
  write_transcript_csv(out, transcript);
  return out.str();
}

}  // namespace genlimit
