#include "nds/net.hpp"

namespace nds {

NetReport separated_set(const NdSystem& sys, std::span<const Point> Z, int k,
                        int n, double eps) {
  if (Z.empty()) throw ConfigError("separated_set needs a non-empty set");
  NetReport rep;
  for (const Point& z : Z) {
    bool ok = true;
    for (const Point& c : rep.points)
      if (bowen_distance(sys, k, n, z, c) < eps) {
        ok = false;
        break;
      }
    if (ok) rep.points.push_back(z);
  }
  rep.certified = true;
  for (const Point& z : Z) {
    bool near = false;
    for (const Point& c : rep.points)
      if (bowen_distance(sys, k, n, z, c) < eps) {
        near = true;
        break;
      }
    if (!near) rep.certified = false;
  }
  return rep;
}

NetReport spanning_set(const NdSystem& sys, std::span<const Point> Z, int k,
                       int n, double eps) {
  if (Z.empty()) throw ConfigError("spanning_set needs a non-empty set");
  NetReport rep;
  for (const Point& z : Z) {
    bool covered = false;
    for (const Point& c : rep.points)
      if (bowen_distance(sys, k, n, c, z) < eps) {
        covered = true;
        break;
      }
    if (!covered) rep.points.push_back(z);
  }
  rep.certified = true;
  for (const Point& z : Z) {
    bool covered = false;
    for (const Point& c : rep.points)
      if (bowen_distance(sys, k, n, c, z) < eps) {
        covered = true;
        break;
      }
    if (!covered) rep.certified = false;
  }
  return rep;
}

}  // namespace nds
