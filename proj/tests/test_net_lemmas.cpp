#include <doctest.h>

#include <random>

#include "nds/covering_lemmas.hpp"
#include "nds/net.hpp"
#include "nds/value.hpp"
#include "nds/zoo.hpp"

using namespace nds;

namespace {

std::vector<Point> carrier_of(const NdSystem& sys, int k) {
  std::vector<Point> pts;
  const auto& lv = sys.level(k);
  for (std::int64_t i = 0; i < lv.size(); ++i) pts.push_back(lv.point(i));
  return pts;
}

}  // namespace

TEST_CASE("separated set on the 2-shift picks one point per cylinder") {
  auto sys = make_shift_2(7);
  auto Z = carrier_of(*sys, 0);
  auto rep = separated_set(*sys, Z, 0, 3, 0.99);
  CHECK(rep.points.size() == 8);
  CHECK(rep.certified);
  auto span = spanning_set(*sys, Z, 0, 3, 0.99);
  CHECK(span.points.size() == 8);
  CHECK(span.certified);
}

TEST_CASE("radius past the diameter leaves a single point") {
  auto sys = make_shift_2(5);
  auto Z = carrier_of(*sys, 0);
  CHECK(separated_set(*sys, Z, 0, 1, 1.5).points.size() == 1);
  CHECK(spanning_set(*sys, Z, 0, 1, 1.5).points.size() == 1);
}

TEST_CASE("scaled doubling metric gives depth-free net sizes") {
  auto sys = make_doubling_chain({GridMetric::Scaled, 1e-3, 12, "du"});
  auto Z = carrier_of(*sys, 0);
  auto c2 = separated_set(*sys, Z, 0, 2, 0.3).points.size();
  auto c6 = separated_set(*sys, Z, 0, 6, 0.3).points.size();
  auto c10 = separated_set(*sys, Z, 0, 10, 0.3).points.size();
  CHECK(c2 == c6);
  CHECK(c6 == c10);
}

TEST_CASE("net sizes bracket each other across radii") {
  auto sys = make_shift_24(7);
  auto Z = carrier_of(*sys, 0);
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    int n = 1 + int(rng() % 4);
    double eps = 0.06 + 0.4 * double(rng() % 1000) / 1000.0;
    auto sep = separated_set(*sys, Z, 0, n, eps).points.size();
    auto span = spanning_set(*sys, Z, 0, n, eps).points.size();
    auto sep2 = separated_set(*sys, Z, 0, n, 2 * eps).points.size();
    // maximal eps-separated sets eps-span, and 2eps-separated points cannot
    // share a spanning ball
    CHECK(span <= sep);
    CHECK(sep2 <= span);
  }
}

TEST_CASE("vitali selection keeps the largest of nested balls") {
  auto sys = make_shift_2(7);
  auto carrier = carrier_of(*sys, 0);
  Point c = word_point({0, 0, 0, 0, 0, 0, 0});
  std::vector<BowenBallSpec> fam = {
      {0, c, 2, 0.99, false},   // depth-2 cylinder around c
      {0, c, 2, 0.40, false},   // strictly smaller ball, same center
      {0, c, 2, 0.10, false},
  };
  auto rep = disjoint_subfamily_5r(*sys, fam, carrier);
  REQUIRE(rep.picked.size() == 1);
  CHECK(rep.picked[0] == 0);
  CHECK(rep.disjoint);
  CHECK(rep.covers);
}

TEST_CASE("vitali selection keeps disjoint families whole") {
  auto sys = make_shift_2(7);
  auto carrier = carrier_of(*sys, 0);
  std::vector<BowenBallSpec> fam = {
      {0, word_point({0, 0, 0, 0, 0, 0, 0}), 1, 0.7, false},
      {0, word_point({1, 1, 0, 0, 0, 0, 0}), 1, 0.7, false},
  };
  auto rep = disjoint_subfamily_5r(*sys, fam, carrier);
  CHECK(rep.picked.size() == 2);
  CHECK(rep.disjoint);
  CHECK(rep.covers);
}

TEST_CASE("bowen 3eps selection covers mixed depths") {
  auto sys = make_shift_24(7);
  auto carrier = carrier_of(*sys, 0);
  std::mt19937_64 rng(17);
  for (int it = 0; it < 50; ++it) {
    std::vector<BowenBallSpec> fam;
    double eps = 0.1 + 0.5 * double(rng() % 1000) / 1000.0;
    int count = 3 + int(rng() % 5);
    for (int i = 0; i < count; ++i)
      fam.push_back({0, carrier[rng() % carrier.size()], 1 + int(rng() % 5),
                     eps, false});
    auto rep = disjoint_subfamily_bowen_3eps(*sys, fam, carrier);
    CHECK(rep.disjoint);
    CHECK(rep.covers);
    CHECK(rep.expansion == doctest::Approx(3.0));
    CHECK(rep.checked_points > 0);
  }
}

TEST_CASE("five-r expansion factor is reported") {
  auto sys = make_doubling_chain({GridMetric::Euclidean, 1e-2, 6, "d"});
  auto carrier = carrier_of(*sys, 0);
  std::vector<BowenBallSpec> fam = {
      {0, grid_point(30), 2, 0.05, false},
      {0, grid_point(40), 2, 0.08, false},
      {0, grid_point(70), 2, 0.02, false},
  };
  auto rep = disjoint_subfamily_5r(*sys, fam, carrier);
  CHECK(rep.expansion == doctest::Approx(5.0));
  CHECK(rep.disjoint);
  CHECK(rep.covers);
}
