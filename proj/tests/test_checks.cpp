#include <doctest.h>

#include <cmath>
#include <set>

#include "nds/checks.hpp"

using namespace nds;

TEST_CASE("check verdicts honor the tolerance band") {
  CHECK(make_check("a", "i", 1.0, 1.0, 1.0, 0.0).pass);
  CHECK(make_check("a", "i", 1.04, 1.0, 1.0, 0.05).pass);
  CHECK(make_check("a", "i", 0.96, 1.0, 1.0, 0.05).pass);
  CHECK_FALSE(make_check("a", "i", 1.06, 1.0, 1.0, 0.05).pass);
  CHECK_FALSE(make_check("a", "i", 0.94, 1.0, 1.0, 0.05).pass);
  // one-sided bands
  CHECK(make_check("a", "i", -3.0, kNoLowerBound, 0.0, 0.0).pass);
  CHECK_FALSE(make_check("a", "i", 0.1, kNoLowerBound, 0.0, 0.0).pass);
  CHECK(make_check("a", "i", 7.0, 0.5, kNoUpperBound, 0.0).pass);
}

TEST_CASE("check lines are grep-friendly") {
  auto ok = make_check("entropy/match", "shift_2", 0.693, 0.693, 0.693, 0.01);
  auto line = to_line(ok);
  CHECK(line.find("[PASS]") == 0);
  CHECK(line.find("entropy/match") != std::string::npos);
  CHECK(line.find("shift_2") != std::string::npos);
  auto bad = make_check("entropy/match", "shift_2", 2.0, 0.693, 0.693, 0.01);
  CHECK(to_line(bad).find("[FAIL]") == 0);
  bad.informative = false;
  CHECK(to_line(bad).find("informational") != std::string::npos);
}

TEST_CASE("the zoo names its instances uniquely") {
  const auto& zoo = zoo_instances();
  REQUIRE(zoo.size() == 8);
  std::set<std::string> names;
  for (const auto& z : zoo) {
    CHECK(z.system != nullptr);
    CHECK_FALSE(z.config.eps_schedule.empty());
    names.insert(z.name);
  }
  CHECK(names.size() == zoo.size());
  CHECK(names.count("shift_2") == 1);
  CHECK(names.count("doubling_de") == 1);
  CHECK(names.count("nifs_cantor") == 1);
}

TEST_CASE("the identity commutes with itself") {
  auto sys = make_shift_2(8);
  ConjugacyMap id;
  id.label = "identity";
  id.forward = [](int, const Point& p) { return p; };
  auto rep = commutation_check(*sys, *sys, id, 1e-12);
  CHECK(rep.pass);
  CHECK(rep.lhs == 0.0);
}

TEST_CASE("a broken map fails commutation") {
  auto sys = make_shift_2(8);
  ConjugacyMap bad;
  bad.label = "flip";
  bad.forward = [](int, const Point& p) {
    Word w = p.word;
    w[0] = std::uint8_t(1 - w[0]);
    return word_point(std::move(w));
  };
  auto rep = commutation_check(*sys, *sys, bad, 1e-12);
  CHECK_FALSE(rep.pass);
  CHECK(rep.lhs > 0.1);
}

TEST_CASE("billingsley brackets require mass on the target") {
  auto sys = make_shift_2(12);
  auto mu = uniform_bernoulli(*sys);
  auto cfg = default_config(*sys);
  cfg.mc_samples = 100;
  auto [lo, hi] =
      billingsley_check(*sys, zero_potential(), full_target(), mu, cfg, 0.02);
  CHECK(lo.pass);
  CHECK(hi.pass);
  auto off = dirac(word_point(Word(12, 1)));
  TargetSet zeros = cylinder_target({{0}}, "zeros");
  CHECK_THROWS_AS(billingsley_check(*sys, zero_potential(), zeros, off, cfg,
                                    0.02),
                  ConfigError);
}

TEST_CASE("variational members must charge the target") {
  auto sys = make_shift_2(10);
  auto cfg = default_config(*sys);
  cfg.mc_samples = 50;
  MeasureFamily fam;
  fam.label = "offside";
  fam.members = {dirac(word_point(Word(10, 1)))};
  TargetSet zeros = cylinder_target({{0}}, "zeros");
  CHECK_THROWS_AS(variational_check(*sys, zero_potential(), zeros, fam,
                                    PressureMode::Bowen, cfg, 0.03),
                  ConfigError);
}

TEST_CASE("suites are registered by name") {
  const auto& names = suite_names();
  CHECK(names.size() == 6);
  CHECK_THROWS_AS(run_suite("nope", {}), ConfigError);
}

TEST_CASE("the algebra suite passes end to end") {
  auto reports = run_suite("algebra", {});
  CHECK(reports.size() >= 10);
  for (const auto& r : reports) {
    INFO(to_line(r));
    CHECK(r.pass);
  }
}

TEST_CASE("the billingsley suite passes end to end") {
  auto reports = run_suite("billingsley", {});
  CHECK(reports.size() >= 6);
  for (const auto& r : reports) {
    INFO(to_line(r));
    CHECK(r.pass);
  }
}
