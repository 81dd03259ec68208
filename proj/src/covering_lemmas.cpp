#include "nds/covering_lemmas.hpp"

#include <algorithm>
#include <numeric>

namespace nds {

namespace {

bool in_ball(const NdSystem& sys, const BowenBallSpec& b, const Point& y,
             double radius) {
  double d = bowen_distance(sys, b.k, b.n, b.center, y);
  return b.closed ? d <= radius : d < radius;
}

// Membership bitmaps of every family ball over the carrier.
std::vector<std::vector<char>> memberships(
    const NdSystem& sys, std::span<const BowenBallSpec> family,
    std::span<const Point> carrier) {
  std::vector<std::vector<char>> in(family.size(),
                                    std::vector<char>(carrier.size(), 0));
  for (size_t i = 0; i < family.size(); ++i) {
    validate(sys, family[i]);
    for (size_t p = 0; p < carrier.size(); ++p)
      in[i][p] = in_ball(sys, family[i], carrier[p], family[i].eps) ? 1 : 0;
  }
  return in;
}

SubfamilyReport select_and_verify(const NdSystem& sys,
                                  std::span<const BowenBallSpec> family,
                                  std::span<const Point> carrier,
                                  std::vector<std::size_t> order,
                                  double expansion) {
  SubfamilyReport rep;
  rep.expansion = expansion;
  auto in = memberships(sys, family, carrier);

  std::vector<char> taken(carrier.size(), 0);
  for (std::size_t i : order) {
    bool hits = false;
    for (size_t p = 0; p < carrier.size() && !hits; ++p)
      if (in[i][p] && taken[p]) hits = true;
    if (hits) continue;
    rep.picked.push_back(i);
    for (size_t p = 0; p < carrier.size(); ++p)
      if (in[i][p]) taken[p] = 1;
  }

  rep.disjoint = true;
  for (size_t a = 0; a < rep.picked.size(); ++a)
    for (size_t b = a + 1; b < rep.picked.size(); ++b)
      for (size_t p = 0; p < carrier.size(); ++p)
        if (in[rep.picked[a]][p] && in[rep.picked[b]][p]) rep.disjoint = false;

  rep.covers = true;
  for (size_t p = 0; p < carrier.size(); ++p) {
    bool in_union = false;
    for (size_t i = 0; i < family.size() && !in_union; ++i)
      if (in[i][p]) in_union = true;
    if (!in_union) continue;
    ++rep.checked_points;
    bool covered = false;
    for (std::size_t i : rep.picked) {
      const BowenBallSpec& b = family[i];
      if (in_ball(sys, b, carrier[p], expansion * b.eps)) {
        covered = true;
        break;
      }
    }
    if (!covered) rep.covers = false;
  }
  return rep;
}

}  // namespace

SubfamilyReport disjoint_subfamily_5r(const NdSystem& sys,
                                      std::span<const BowenBallSpec> family,
                                      std::span<const Point> carrier) {
  if (family.empty()) throw ConfigError("empty ball family");
  for (const auto& b : family)
    if (b.k != family[0].k || b.n != family[0].n)
      throw ConfigError("5r selection needs a common (level, depth)");
  std::vector<std::size_t> order(family.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return family[a].eps > family[b].eps;
  });
  return select_and_verify(sys, family, carrier, std::move(order), 5.0);
}

SubfamilyReport disjoint_subfamily_bowen_3eps(
    const NdSystem& sys, std::span<const BowenBallSpec> family,
    std::span<const Point> carrier) {
  if (family.empty()) throw ConfigError("empty ball family");
  for (const auto& b : family)
    if (b.k != family[0].k || b.eps != family[0].eps)
      throw ConfigError("3eps selection needs a common (level, radius)");
  std::vector<std::size_t> order(family.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(
      order.begin(), order.end(),
      [&](std::size_t a, std::size_t b) { return family[a].n < family[b].n; });
  return select_and_verify(sys, family, carrier, std::move(order), 3.0);
}

}  // namespace nds
