#pragma once

// Typed access into a parsed JSON document that reports violations as
// ConfigError with the offending line.

#include "tlo/config.hpp"

#include <initializer_list>
#include <string>
#include <string_view>

namespace tlo::detail {

using nlohmann::json;

class JsonReader {
public:
  explicit JsonReader(std::string_view text) : text_(text) {}

  /// Parses the document; syntax errors carry nlohmann's line number.
  json parse() const;

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    throw ConfigError(locate_line(text_, pointer), message + " (at " + (pointer.empty() ? "/" : pointer) + ")");
  }

  const json& object(const json& j, const std::string& ptr) const;
  const json& array(const json& j, const std::string& ptr, std::size_t min_size = 0) const;
  const json& member(const json& obj, const std::string& ptr, const std::string& key) const;
  const json* optional(const json& obj, const std::string& key) const;
  void only_keys(const json& obj, const std::string& ptr, std::initializer_list<std::string_view> keys) const;

  double number(const json& j, const std::string& ptr) const;
  long long integer(const json& j, const std::string& ptr) const;
  std::string string(const json& j, const std::string& ptr) const;
  Vec2 vec2(const json& j, const std::string& ptr) const;

private:
  std::string_view text_;
};

inline std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
inline std::string child(const std::string& ptr, std::size_t index) { return ptr + "/" + std::to_string(index); }

} // namespace tlo::detail
