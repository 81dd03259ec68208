// Release gate: every criterion prints one line and the binary exits
// nonzero when any of them fails. Tolerances are pinned here on purpose;
// loosening them is a release decision, not a test fix.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "nds/checks.hpp"

using namespace nds;

namespace {

using Clock = std::chrono::steady_clock;

const double kLog2 = std::log(2.0);

constexpr double kGridEntropyTol = 0.07;   // doubling chain, d_e and d_b
constexpr double kFlatEntropyTol = 0.05;   // doubling chain, d_u
constexpr double kShiftEntropyTol = 0.02;  // symbolic closed forms
constexpr double kBlocksGap = 0.1;
constexpr double kBlocksOracleTol = 0.02;
constexpr double kAlgebraTol = 1e-9;
constexpr double kBillingsleyTol = 0.02;
constexpr double kVariationalLowerTol = 0.03;
constexpr double kVariationalUpperTol = 0.05;
constexpr double kOrderingTol = 0.02;
constexpr double kInvarianceTol = 0.07;
constexpr double kCantorTol = 0.05;
constexpr double kDoublingBudgetSec = 120.0;
constexpr double kShiftBudgetSec = 10.0;

int failures = 0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void line(int idx, const std::string& name, bool pass,
          const std::string& detail) {
  if (!pass) ++failures;
  std::printf("[%s] C%d %s | %s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

void criterion(int idx, const std::string& name,
               const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [pass, detail] = body();
    line(idx, name, pass, detail);
  } catch (const std::exception& e) {
    line(idx, name, false, std::string("exception: ") + e.what());
  }
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct EntropyPair {
  double hB;
  double hP;
};

EntropyPair both_entropies(const NdSystem& sys, const EstimatorConfig& cfg) {
  return {bowen_entropy(sys, full_target(), cfg),
          packing_entropy(sys, full_target(), cfg)};
}

// Count of suite checks passing/failing, informative rows only.
struct SuiteTally {
  int pass = 0;
  int fail = 0;
  std::string first_fail;
};

SuiteTally tally(const std::vector<CheckReport>& reports,
                 const std::string& prefix) {
  SuiteTally t;
  for (const auto& r : reports) {
    if (r.name.rfind(prefix, 0) != 0 || !r.informative) continue;
    if (r.pass)
      ++t.pass;
    else {
      ++t.fail;
      if (t.first_fail.empty()) t.first_fail = to_line(r);
    }
  }
  return t;
}

}  // namespace

int main() {
  criterion(1, "doubling chain entropies under three metrics", [] {
    auto t0 = Clock::now();
    EstimatorConfig cfg;
    cfg.eps_schedule = {0.1, 0.05, 0.025};
    cfg.n_max = 14;
    auto de = both_entropies(
        *make_doubling_chain({GridMetric::Euclidean, 1e-4, 33, "de"}), cfg);
    auto du = both_entropies(
        *make_doubling_chain({GridMetric::Scaled, 1e-4, 33, "du"}), cfg);
    auto db = both_entropies(
        *make_doubling_chain({GridMetric::Bounded, 1e-4, 33, "db"}), cfg);
    double sec = seconds_since(t0);
    bool pass = std::abs(de.hB - kLog2) <= kGridEntropyTol &&
                std::abs(de.hP - kLog2) <= kGridEntropyTol &&
                std::abs(du.hB) <= kFlatEntropyTol &&
                std::abs(du.hP) <= kFlatEntropyTol &&
                std::abs(db.hB - kLog2) <= kGridEntropyTol &&
                std::abs(db.hP - kLog2) <= kGridEntropyTol &&
                sec < kDoublingBudgetSec;
    return std::pair(pass, "de " + num(de.hB) + "/" + num(de.hP) + ", du " +
                               num(du.hB) + "/" + num(du.hP) + ", db " +
                               num(db.hB) + "/" + num(db.hP) +
                               " vs log2=" + num(kLog2) + " +-" +
                               num(kGridEntropyTol) + " (d_u: 0 +-" +
                               num(kFlatEntropyTol) + "), " + num(sec) + "s");
  });

  criterion(2, "alternating (2,4)-shift entropies", [] {
    auto t0 = Clock::now();
    auto sys = make_shift_24(14);
    auto cfg = default_config(*sys);
    cfg.n_max = 12;
    auto e = both_entropies(*sys, cfg);
    double sec = seconds_since(t0);
    double want = 1.5 * kLog2;
    bool pass = std::abs(e.hB - want) <= kShiftEntropyTol &&
                std::abs(e.hP - want) <= kShiftEntropyTol &&
                sec < kShiftBudgetSec;
    return std::pair(pass, "hB=" + num(e.hB) + " hP=" + num(e.hP) +
                               " vs 1.5*log2=" + num(want) + " +-" +
                               num(kShiftEntropyTol) + ", " + num(sec) + "s");
  });

  criterion(3, "geometric blocks split the two entropies", [] {
    auto sys = make_shift_blocks(66);
    auto cfg = default_config(*sys);
    cfg.n_max = 63;
    auto e = both_entropies(*sys, cfg);

    // independent tail-average oracle: block i repeats its alphabet size
    // 2^i times, sizes alternating 2 and 4; the estimator's liminf/limsup
    // surrogates must land near the window extrema of S(m)/m
    std::vector<double> logm;
    for (int i = 0; int(logm.size()) < (1 << 14); ++i) {
      double lm = std::log(i % 2 == 0 ? 2.0 : 4.0);
      for (int r = 0; r < (1 << i) && int(logm.size()) < (1 << 14); ++r)
        logm.push_back(lm);
    }
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    std::vector<double> prefix(logm.size() + 1, 0.0);
    for (size_t j = 0; j < logm.size(); ++j) {
      sum += logm[j];
      prefix[j + 1] = sum;
    }
    for (int m = 1 << 13; m <= 1 << 14; ++m) {
      double v = prefix[size_t(m)] / double(m);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    bool pass = e.hP - e.hB >= kBlocksGap &&
                std::abs(e.hB - lo) <= kBlocksOracleTol &&
                std::abs(e.hP - hi) <= kBlocksOracleTol;
    return std::pair(pass, "hB=" + num(e.hB) + " hP=" + num(e.hP) +
                               " gap=" + num(e.hP - e.hB) +
                               " oracle=[" + num(lo) + ", " + num(hi) +
                               "] +-" + num(kBlocksOracleTol));
  });

  criterion(4, "constant potentials shift pressure exactly", [] {
    auto sys = make_shift_24(14);
    auto cfg = default_config(*sys);
    double h = bowen_entropy(*sys, full_target(), cfg);
    double worst = 0.0;
    for (double a : {-1.0, 0.0, 0.5, 2.0}) {
      auto f = constant_potential(a);
      double pb = bowen_pressure(*sys, f, full_target(), cfg).value;
      double pp = packing_pressure(*sys, f, full_target(), cfg).value;
      worst = std::max({worst, std::abs(pb - h - a), std::abs(pp - h - a)});
    }
    return std::pair(worst <= kAlgebraTol,
                     "max |P(a*1) - h - a| = " + num(worst) + " over a in "
                     "{-1, 0, 0.5, 2}, both modes, tol " + num(kAlgebraTol));
  });

  std::vector<CheckReport> frostman = frostman_suite({});

  criterion(5, "cover/packing value sandwich on random instances", [&] {
    auto t = tally(frostman, "sandwich/");
    bool pass = t.fail == 0 && t.pass == 60;
    std::string detail = std::to_string(t.pass) + "/60 ordered comparisons "
                         "hold on 20 instances (exhaustive covers vs LP)";
    if (t.fail > 0) detail += "; first: " + t.first_fail;
    return std::pair(pass, detail);
  });

  criterion(6, "frostman duality ties the weighted cover to a measure", [&] {
    auto t = tally(frostman, "frostman/");
    bool pass = t.fail == 0 && t.pass == 40;
    std::string detail = std::to_string(t.pass) +
                         "/40 duality-gap and constraint checks hold";
    if (t.fail > 0) detail += "; first: " + t.first_fail;
    return std::pair(pass, detail);
  });

  criterion(7, "billingsley bracket on the uniform 2-shift", [] {
    auto sys = make_shift_2(14);
    auto mu = uniform_bernoulli(*sys);
    auto cfg = default_config(*sys);
    auto [lo, hi] = billingsley_check(*sys, zero_potential(), full_target(),
                                      mu, cfg, kBillingsleyTol);
    bool band = std::abs(lo.lhs - kLog2) <= kBillingsleyTol &&
                std::abs(hi.lhs - kLog2) <= kBillingsleyTol;
    return std::pair(lo.pass && hi.pass && band,
                     "hB=" + num(lo.lhs) + " hP=" + num(hi.lhs) +
                         " in log2 +-" + num(kBillingsleyTol) +
                         ", local-exponent brackets hold");
  });

  criterion(8, "variational principles over measure families", [] {
    auto reports = variational_suite({});
    auto dir = tally(reports, "variational/direction/");
    auto eqB = tally(reports, "variational/bowen");
    auto eqP = tally(reports, "variational/packing");
    bool pass = dir.fail == 0 && eqB.fail == 0 && eqP.fail == 0 &&
                eqB.pass >= 3 && eqP.pass >= 1;
    std::string detail =
        std::to_string(dir.pass) + " direction checks, " +
        std::to_string(eqB.pass) + " family-sups within " +
        num(kVariationalLowerTol) + " of hB, " + std::to_string(eqP.pass) +
        " within " + num(kVariationalUpperTol) + " of hP";
    for (const auto& t : {dir, eqB, eqP})
      if (!t.first_fail.empty()) {
        detail += "; first: " + t.first_fail;
        break;
      }
    return std::pair(pass, detail);
  });

  criterion(9, "bowen entropy never exceeds packing entropy", [] {
    int ok = 0, total = 0;
    std::string bad;
    for (const auto& inst : zoo_instances()) {
      auto e = both_entropies(*inst.system, inst.config);
      ++total;
      if (e.hB <= e.hP + kOrderingTol)
        ++ok;
      else if (bad.empty())
        bad = inst.name + " hB=" + num(e.hB) + " hP=" + num(e.hP);
    }
    std::string detail = std::to_string(ok) + "/" + std::to_string(total) +
                         " zoo instances ordered, tol " + num(kOrderingTol);
    if (!bad.empty()) detail += "; violated by " + bad;
    return std::pair(ok == total, detail);
  });

  criterion(10, "covering lemmas verified by exhaustive membership", [] {
    auto reports = covering_suite({});
    auto t = tally(reports, "covering/");
    bool pass = t.fail == 0 && t.pass == 6;
    std::string detail = "500 random families x 3 backends x 2 lemmas, " +
                         std::to_string(t.pass) + "/6 zero-violation counts";
    if (t.fail > 0) detail += "; first: " + t.first_fail;
    return std::pair(pass, detail);
  });

  criterion(11, "conjugacy invariance of entropy and pressure", [] {
    auto reports = invariance_suite({});
    auto t = tally(reports, "invariance/");
    bool pass = t.fail == 0 && t.pass >= 10;
    std::string detail = std::to_string(t.pass) +
                         " informative checks: metric change within " +
                         num(kInvarianceTol) + ", symbol permutation exact, "
                         "measure entropy stable under pushforward";
    if (t.fail > 0) detail += "; first: " + t.first_fail;
    return std::pair(pass, detail);
  });

  criterion(12, "cantor repeller entropy matches its box dimension", [] {
    auto rep = make_nifs_cantor(11);
    auto cfg = default_config(*rep.system);
    double hB = bowen_entropy(*rep.system, full_target(), cfg);
    auto box = box_count_dimension(rep.net, 3.0, 1, 7);
    double want_dim = kLog2 / std::log(3.0);
    bool pass = std::abs(hB - kLog2) <= kCantorTol &&
                std::abs(box.dimension - want_dim) <= kCantorTol;
    return std::pair(pass, "hB=" + num(hB) + " vs log2, box dim=" +
                               num(box.dimension) + " vs log2/log3=" +
                               num(want_dim) + ", tol " + num(kCantorTol));
  });

  if (failures == 0) {
    std::printf("acceptance: 12/12 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d/12 criteria FAILED\n", failures);
  return 1;
}
