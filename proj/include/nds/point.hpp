#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace nds {

using Word = std::vector<std::uint8_t>;

// A point in some level carrier. Grid and point-cloud levels address points by
// carrier index; symbolic levels carry the (truncated) word itself so that
// levels with astronomically many words never need a dense index space.
struct Point {
  std::int64_t idx = 0;
  Word word;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

inline Point grid_point(std::int64_t i) { return Point{i, {}}; }

inline Point word_point(Word w) { return Point{0, std::move(w)}; }

inline Point word_point(std::initializer_list<int> digits) {
  Word w;
  w.reserve(digits.size());
  for (int d : digits) w.push_back(static_cast<std::uint8_t>(d));
  return Point{0, std::move(w)};
}

std::string to_string(const Point& p);

}  // namespace nds
