#pragma once

#include <stdexcept>
#include <string>

namespace genlimit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ClassTooLarge : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class ActiveSetTooLarge : public Error {
 public:
  using Error::Error;
};

class NoiseSourceCollision : public Error {
 public:
  using Error::Error;
};

class InvalidGamma : public Error {
 public:
  using Error::Error;
};

class UnboundedBound : public Error {
 public:
  using Error::Error;
};

class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Protocol violations detected by the game engine.
class GameError : public Error {
 public:
  enum class Kind { kGeneratorRepeatedElement, kAdversaryRepeatedElement, kTargetNeverDeclared };

  GameError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Bad scenario / class configuration. `key_path` names the offending JSON key,
// e.g. "adversary.base.steps[2]".
class ConfigError : public Error {
 public:
  ConfigError(std::string key_path, const std::string& message)
      : Error(key_path + ": " + message), key_path_(std::move(key_path)) {}
  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

}  // namespace genlimit
