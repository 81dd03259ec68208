#pragma once

#include <stdexcept>
#include <string>

namespace nds {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

struct LevelRangeError : std::runtime_error {
  explicit LevelRangeError(const std::string& m) : std::runtime_error(m) {}
};

struct OverlapError : std::runtime_error {
  explicit OverlapError(const std::string& m) : std::runtime_error(m) {}
};

struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& m) : std::runtime_error(m) {}
};

struct BracketError : std::runtime_error {
  explicit BracketError(const std::string& m) : std::runtime_error(m) {}
};

struct DegenerateError : std::runtime_error {
  explicit DegenerateError(const std::string& m) : std::runtime_error(m) {}
};

struct UnsupportedError : std::runtime_error {
  explicit UnsupportedError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace nds
