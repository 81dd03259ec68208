#include "nds/point.hpp"

namespace nds {

std::string to_string(const Point& p) {
  if (p.word.empty()) return std::to_string(p.idx);
  std::string s;
  s.reserve(p.word.size() * 2);
  for (size_t i = 0; i < p.word.size(); ++i) {
    if (i) s.push_back('.');
    s += std::to_string(int(p.word[i]));
  }
  return s;
}

}  // namespace nds
