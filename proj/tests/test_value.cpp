#include <doctest.h>

#include <cmath>
#include <random>

#include "nds/value.hpp"
#include "nds/zoo.hpp"

using namespace nds;

namespace {
const double kLog2 = std::log(2.0);
}

TEST_CASE("symbolic ball depth resolves radii to cylinder depths") {
  CHECK(symbolic_ball_depth(3, 0.99, false) == 3);
  CHECK(symbolic_ball_depth(3, 0.80, false) == 3);
  CHECK(symbolic_ball_depth(3, 0.72, false) == 3);
  CHECK(symbolic_ball_depth(3, 0.12, false) == 6);
  CHECK(symbolic_ball_depth(1, 0.12, false) == 4);
  CHECK(symbolic_ball_depth(3, 0.5, false) == 4);
  CHECK(symbolic_ball_depth(3, 0.5, true) == 3);
  CHECK(symbolic_ball_depth(3, 1.5, false) == 0);
}

TEST_CASE("a wide bowen ball is exactly a cylinder") {
  auto sys = make_shift_2(6);
  std::vector<Point> carrier;
  for (std::int64_t i = 0; i < sys->level(0).size(); ++i)
    carrier.push_back(sys->level(0).point(i));
  BowenBallSpec ball{0, word_point({0, 1, 0, 0, 0, 0}), 3, 0.99, false};
  auto inside = bowen_ball_points(*sys, ball, carrier);
  CHECK(inside.size() == 8);
  for (const auto& p : inside) {
    CHECK(p.word[0] == 0);
    CHECK(p.word[1] == 1);
    CHECK(p.word[2] == 0);
  }
}

TEST_CASE("closed-form cover value equals cylinder counting") {
  auto sys = make_shift_2(10);
  auto dv = depth_cover_value(*sys, zero_potential(), full_target(), 4, 0.99,
                              WeightMode::Center);
  CHECK(dv.m == 4);
  CHECK(dv.count == 16);
  CHECK(dv.log_value == doctest::Approx(4 * kLog2).epsilon(1e-12));
  CHECK(dv.exact);
  CHECK_FALSE(dv.saturated);
}

TEST_CASE("closed form and enumeration agree on the same target") {
  auto sys = make_shift_24(8);
  auto f = symbol_value_potential({0.2, -0.1, 0.05, 0.3});
  std::vector<Point> pts;
  for (std::int64_t i = 0; i < sys->level(0).size(); ++i)
    pts.push_back(sys->level(0).point(i));
  for (int n = 1; n <= 4; ++n) {
    auto closed = depth_cover_value(*sys, f, full_target(), n, 0.80,
                                    WeightMode::Center);
    auto enumerated = depth_cover_value(*sys, f, point_target(pts, "all"), n,
                                        0.80, WeightMode::Center);
    CHECK(closed.count == enumerated.count);
    CHECK(closed.log_value ==
          doctest::Approx(enumerated.log_value).epsilon(1e-12));
  }
}

TEST_CASE("cylinder targets restrict the count") {
  auto sys = make_shift_2(8);
  auto dv = depth_cover_value(*sys, zero_potential(),
                              cylinder_target({{0}}, "half"), 3, 0.99,
                              WeightMode::Center);
  CHECK(dv.count == 4);
  auto dv2 = depth_cover_value(*sys, zero_potential(),
                               cylinder_target({{0}, {1}}, "both"), 3, 0.99,
                               WeightMode::Center);
  CHECK(dv2.count == 8);
}

TEST_CASE("nested cylinders are rejected") {
  CHECK_THROWS_AS(cylinder_target({{0}, {0, 1}}, "nested"), ConfigError);
}

TEST_CASE("target point enumeration expands cylinders") {
  auto sys = make_shift_2(4);
  auto pts = target_points(*sys, cylinder_target({{1}}, "c1"));
  CHECK(pts.size() == 8);
  for (const auto& p : pts) CHECK(p.word[0] == 1);
  auto all = target_points(*sys, full_target());
  CHECK(all.size() == 16);
}

TEST_CASE("grid values are invariant under ball closure off-lattice") {
  auto sys = make_doubling_chain({GridMetric::Euclidean, 1e-2, 8, "d"});
  // radius strictly between reachable bowen distances, so < and <= select
  // the same cells
  auto open = depth_cover_value(*sys, zero_potential(), full_target(), 3,
                                0.045, WeightMode::Center);
  auto closed = depth_packing_value(*sys, zero_potential(), full_target(), 3,
                                    0.045);
  CHECK(open.extent == 1);
  CHECK(closed.extent == 1);
  CHECK(open.count == closed.count);
}

TEST_CASE("cover value at the entropy exponent is one on the full shift") {
  auto sys = make_shift_2(8);
  std::vector<Point> Z = target_points(*sys, full_target());
  auto rep = cover_value(*sys, zero_potential(), Z, 0, kLog2, 2, 3, 0.99,
                         CoverMode::SupWeight);
  CHECK(rep.exact);
  CHECK(rep.upper_bound == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.lower_bound == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.lower_bound <= rep.upper_bound + 1e-12);
}

TEST_CASE("cover value decreases in s and grows as the radius shrinks") {
  auto sys = make_shift_2(8);
  std::vector<Point> Z = target_points(*sys, full_target());
  auto at = [&](double s, double eps) {
    return cover_value(*sys, zero_potential(), Z, 0, s, 1, 3, eps,
                       CoverMode::SupWeight)
        .upper_bound;
  };
  CHECK(at(0.2, 0.99) >= at(0.5, 0.99) - 1e-12);
  CHECK(at(0.5, 0.99) >= at(1.0, 0.99) - 1e-12);
  CHECK(at(0.5, 0.12) >= at(0.5, 0.99) - 1e-12);
}

TEST_CASE("subsets never cost more to cover") {
  auto sys = make_shift_2(6);
  std::vector<Point> Z = target_points(*sys, full_target());
  std::vector<Point> half = target_points(*sys, cylinder_target({{0}}, "h"));
  auto vz = cover_value(*sys, zero_potential(), Z, 0, 0.4, 1, 3, 0.99,
                        CoverMode::SupWeight)
                .upper_bound;
  auto vh = cover_value(*sys, zero_potential(), half, 0, 0.4, 1, 3, 0.99,
                        CoverMode::SupWeight)
                .upper_bound;
  CHECK(vh <= vz + 1e-12);
}

TEST_CASE("bad and unreachable depth windows are distinguished") {
  auto sys = make_shift_2(6);
  std::vector<Point> Z = target_points(*sys, full_target());
  CHECK_THROWS_AS(cover_value(*sys, zero_potential(), Z, 0, 0.5, 3, 2, 0.99,
                              CoverMode::SupWeight),
                  ConfigError);
  CHECK_THROWS_AS(cover_value(*sys, zero_potential(), Z, 0, 0.5, 7, 9, 0.99,
                              CoverMode::SupWeight),
                  InfeasibleError);
}

TEST_CASE("weighted relaxation never exceeds the integral cover") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int it = 0; it < 10; ++it) {
    int trunc = 6 + int(rng() % 2);
    std::vector<int> ab;
    for (int j = 0; j < trunc; ++j) ab.push_back(2 + int(rng() % 2));
    auto sys = make_na_shift({ab, false, trunc, "w"});
    std::vector<Point> Z;
    for (int i = 0; i < 5; ++i) {
      Word w(static_cast<std::size_t>(trunc));
      for (int j = 0; j < trunc; ++j)
        w[size_t(j)] = std::uint8_t(rng() % std::uint64_t(ab[size_t(j)]));
      Z.push_back(word_point(std::move(w)));
    }
    double s = 0.2 + unit(rng);
    auto exact = cover_value(*sys, zero_potential(), Z, 0, s, 1, 2, 0.12,
                             CoverMode::SupWeight);
    auto relaxed =
        weighted_cover_value(*sys, zero_potential(), Z, 0, s, 1, 2, 0.12);
    REQUIRE(exact.exact);
    CHECK(relaxed.upper_bound <= exact.upper_bound + 1e-9);
    CHECK(relaxed.witness_coeffs.size() == relaxed.witness.size());
  }
}

TEST_CASE("ball disjointness matches word prefixes") {
  auto sys = make_shift_2(8);
  BowenBallSpec a{0, word_point({0, 0, 0, 0, 0, 0, 0, 0}), 2, 0.99, true};
  BowenBallSpec b{0, word_point({0, 0, 1, 1, 0, 0, 0, 0}), 3, 0.99, true};
  BowenBallSpec c{0, word_point({0, 1, 0, 0, 0, 0, 0, 0}), 3, 0.99, true};
  CHECK_FALSE(balls_disjoint(*sys, a, b));  // b's cylinder refines a's
  CHECK(balls_disjoint(*sys, a, c));        // differ inside the shared prefix
}

TEST_CASE("packing value finds the dense cylinder family") {
  auto sys = make_shift_2(8);
  std::vector<Point> Z = target_points(*sys, full_target());
  auto rep = packing_value(*sys, zero_potential(), Z, 0, kLog2, 3, 3, 0.99);
  // eight depth-3 cylinders, each of weight 2^-3
  CHECK(rep.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.witness.size() == 8);
  REQUIRE(rep.part_sizes.size() == 1);
  CHECK(rep.part_sizes[0] == Z.size());
}

TEST_CASE("packing value respects a target decomposition") {
  auto sys = make_shift_2(7);
  std::vector<Point> Z = target_points(*sys, full_target());
  std::vector<std::vector<int>> parts(2);
  for (int i = 0; i < int(Z.size()); ++i)
    parts[size_t(Z[size_t(i)].word[0])].push_back(i);
  auto joint = packing_value(*sys, zero_potential(), Z, 0, 0.8, 2, 3, 0.99);
  auto split =
      packing_value(*sys, zero_potential(), Z, 0, 0.8, 2, 3, 0.99, parts);
  REQUIRE(split.part_sizes.size() == 2);
  CHECK(split.part_sizes[0] + split.part_sizes[1] == Z.size());
  // a split family is a union of per-part packings, never smaller
  CHECK(split.value >= joint.value - 1e-9);
}
