#include <doctest.h>

#include <cmath>
#include <random>

#include "nds/value.hpp"
#include "nds/zoo.hpp"

using namespace nds;

namespace {
const double kLog2 = std::log(2.0);
}

TEST_CASE("symbolic metric decays with the first differing position") {
  auto sys = make_shift_2(8);
  const auto& lv = sys->level(0);
  Point a = word_point({0, 0, 0, 0, 0, 0, 0, 0});
  Point b = word_point({0, 0, 1, 0, 0, 0, 0, 0});
  Point c = word_point({1, 0, 0, 0, 0, 0, 0, 0});
  CHECK(lv.metric(a, b) == doctest::Approx(0.25));
  CHECK(lv.metric(a, c) == doctest::Approx(1.0));
  CHECK(lv.metric(a, a) == 0.0);
  CHECK(lv.metric(a, b) == lv.metric(b, a));
}

TEST_CASE("bowen distance on the 2-shift pulls differences forward") {
  auto sys = make_shift_2(8);
  Point a = word_point({0, 0, 0, 0, 0, 0, 0, 0});
  Point b = word_point({0, 0, 1, 0, 0, 0, 0, 0});
  CHECK(bowen_distance(*sys, 0, 1, a, b) == doctest::Approx(0.25));
  CHECK(bowen_distance(*sys, 0, 2, a, b) == doctest::Approx(0.5));
  CHECK(bowen_distance(*sys, 0, 3, a, b) == doctest::Approx(1.0));
  // deeper windows cannot see past the difference
  CHECK(bowen_distance(*sys, 0, 5, a, b) == doctest::Approx(1.0));
}

TEST_CASE("shift map drops the leading symbol") {
  auto sys = make_shift_24(6);
  Point x = word_point({1, 3, 0, 2, 1, 0});
  Point y = sys->apply(0, x);
  CHECK(y == word_point({3, 0, 2, 1, 0}));
  CHECK(sys->level(1).contains(y));
  Point z = compose(*sys, 0, 3, x);
  CHECK(z == word_point({2, 1, 0}));
  CHECK(compose(*sys, 0, 0, x) == x);
}

TEST_CASE("doubling chain doubles exactly on the grid") {
  DoublingChainSpec spec;
  spec.delta = 1e-4;
  spec.levels = 8;
  spec.label = "d";
  auto sys = make_doubling_chain(spec);
  Point x = grid_point(0);
  Point y = grid_point(100);  // coordinate 0.01
  CHECK(sys->level(0).metric(x, y) == doctest::Approx(0.01));
  CHECK(bowen_distance(*sys, 0, 3, x, y) == doctest::Approx(0.04));
  CHECK(sys->snap_slack() == 0.0);

  // 0.1 -> 0.8 after three doublings
  Point a = grid_point(1000);
  Point b = compose(*sys, 0, 3, a);
  CHECK(b.idx == 8000);
}

TEST_CASE("scaled doubling metric makes bowen distance depth-free") {
  DoublingChainSpec spec;
  spec.metric = GridMetric::Scaled;
  spec.delta = 1e-3;
  spec.levels = 12;
  spec.label = "du";
  auto sys = make_doubling_chain(spec);
  Point x = grid_point(17);
  Point y = grid_point(401);
  double d2 = bowen_distance(*sys, 0, 2, x, y);
  CHECK(bowen_distance(*sys, 0, 6, x, y) == doctest::Approx(d2).epsilon(1e-12));
  CHECK(bowen_distance(*sys, 0, 10, x, y) ==
        doctest::Approx(d2).epsilon(1e-12));
  CHECK(d2 == doctest::Approx(sys->level(0).metric(x, y)));
}

TEST_CASE("metric axioms hold on sampled triples for every backend") {
  auto shift = make_shift_24(7);
  auto grid = make_doubling_chain({GridMetric::Bounded, 1e-3, 8, "db"});
  auto cloud = make_nifs_cantor(7).system;
  for (int k = 0; k <= 2; ++k) {
    CHECK_NOTHROW(validate_metric(shift->level(k), 7 + k, 200));
    CHECK_NOTHROW(validate_metric(grid->level(k), 7 + k, 200));
    CHECK_NOTHROW(validate_metric(cloud->level(k), 7 + k, 200));
  }
}

TEST_CASE("birkhoff sums add the potential along the orbit") {
  auto sys = make_shift_2(8);
  Point x = word_point({0, 1, 0, 1, 1, 0, 0, 1});
  auto f = symbol_value_potential({0.5, -0.25});
  CHECK(birkhoff_sum(*sys, f, 0, 1, x) == doctest::Approx(0.5));
  CHECK(birkhoff_sum(*sys, f, 0, 4, x) == doctest::Approx(0.5));
  CHECK(birkhoff_sum(*sys, f, 1, 2, sys->apply(0, x)) ==
        doctest::Approx(-0.25 + 0.5));
  auto c = constant_potential(0.3);
  CHECK(birkhoff_sum(*sys, c, 0, 6, x) == doctest::Approx(1.8));
  CHECK(birkhoff_sum(*sys, zero_potential(), 0, 5, x) == 0.0);
}

TEST_CASE("ball membership agrees between running-max and intersection") {
  std::mt19937_64 rng(11);
  auto run = [&](const NdSystem& sys, double eps_lo, double eps_hi) {
    std::vector<Point> carrier;
    const auto& lv = sys.level(0);
    for (std::int64_t i = 0; i < lv.size(); ++i) carrier.push_back(lv.point(i));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int it = 0; it < 200; ++it) {
      BowenBallSpec ball;
      ball.k = 0;
      ball.center = carrier[rng() % carrier.size()];
      ball.n = 1 + int(rng() % 4);
      ball.eps = eps_lo + (eps_hi - eps_lo) * unit(rng);
      ball.closed = bool(rng() & 1);
      auto a = bowen_ball_points(sys, ball, carrier);
      auto b = bowen_ball_points_intersection(sys, ball, carrier);
      REQUIRE(a == b);
    }
  };
  run(*make_shift_24(7), 0.05, 0.99);
  run(*make_doubling_chain({GridMetric::Euclidean, 1e-2, 8, "d"}), 0.01, 0.3);
  run(*make_nifs_cantor(6).system, 0.02, 0.4);
}

TEST_CASE("potential norm and flags") {
  auto sys = make_shift_24(10);
  CHECK(potential_norm(*sys, zero_potential()).value == 0.0);
  CHECK(potential_norm(*sys, constant_potential(-0.5)).value ==
        doctest::Approx(0.5));
  auto tbl = potential_norm(*sys, symbol_value_potential({0.1, -0.7, 0.2, 0.3}));
  CHECK(tbl.value == doctest::Approx(0.7));
  CHECK_FALSE(tbl.unbounded);
  CHECK(potential_norm(*sys, level_index_potential()).unbounded);
}

TEST_CASE("equicontinuity modulus exists for symbol potentials") {
  auto sys = make_shift_2(10);
  auto f = symbol_value_potential({0.0, 1.0});
  auto rep = equicontinuity_modulus(*sys, f, 0.5);
  CHECK(rep.ok);
  // points at distance < 1 share the leading symbol, so f cannot move
  CHECK(rep.delta > 0.0);
}

TEST_CASE("level range violations throw") {
  auto sys = make_shift_2(5);
  Point x = word_point({0, 0, 0, 0, 0});
  CHECK_THROWS_AS(compose(*sys, 0, 50, x), LevelRangeError);
  CHECK_THROWS_AS((void)sys->level(99), LevelRangeError);
}
