#pragma once

// Small typed accessors over nlohmann::json that report failures as
// ConfigError with the offending key path.

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "genlimit/errors.hpp"

namespace genlimit::config {

inline std::uint64_t as_uint(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ConfigError(path, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

inline std::uint64_t require_uint(const nlohmann::json& obj, const std::string& key,
                                  const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(path + "." + key, "missing key");
  return as_uint(obj.at(key), path + "." + key);
}

inline std::optional<std::uint64_t> optional_uint(const nlohmann::json& obj, const std::string& key,
                                                  const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) return std::nullopt;
  return as_uint(obj.at(key), path + "." + key);
}

inline std::string require_string(const nlohmann::json& obj, const std::string& key,
                                  const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(path + "." + key, "missing key");
  if (!obj.at(key).is_string()) throw ConfigError(path + "." + key, "expected a string");
  return obj.at(key).get<std::string>();
}

}  // namespace genlimit::config
