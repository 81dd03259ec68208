#include "nds/checks.hpp"

#include "nds/covering_lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>

namespace nds {

namespace {

std::string fmt(double v) {
  if (v <= kNoLowerBound) return "-inf";
  if (v >= kNoUpperBound) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<Point> level_sample(const NdSystem& sys, int k, std::int64_t cap) {
  const SpaceLevel& lv = sys.level(k);
  if (!lv.enumerable())
    throw UnsupportedError("level too large to sample exhaustively");
  std::int64_t sz = lv.size();
  std::int64_t stride = std::max<std::int64_t>(1, sz / cap);
  std::vector<Point> pts;
  for (std::int64_t i = 0; i < sz; i += stride) pts.push_back(lv.point(i));
  return pts;
}

bool point_in_target(const NdSystem& sys, const TargetSet& E, const Point& x) {
  if (E.full) return sys.level(E.k).contains(x);
  if (!E.cylinders.empty()) {
    for (const Word& w0 : E.cylinders) {
      if (w0.size() > x.word.size()) continue;
      if (std::equal(w0.begin(), w0.end(), x.word.begin())) return true;
    }
    return false;
  }
  return std::find(E.points.begin(), E.points.end(), x) != E.points.end();
}

double word_mass(const MeasureRep& mu, int k, const Word& w) {
  double m = 1.0;
  for (size_t j = 0; j < w.size(); ++j)
    m *= mu.prob_row(k + int(j))[size_t(w[j])];
  return m;
}

double target_mass(const MeasureRep& mu, const NdSystem& sys,
                   const TargetSet& E) {
  if (mu.kind == MeasureRep::Kind::Atomic) {
    double m = 0.0;
    for (size_t i = 0; i < mu.atoms.size(); ++i)
      if (point_in_target(sys, E, mu.atoms[i])) m += mu.masses[i];
    return m;
  }
  if (E.full) return 1.0;
  double m = 0.0;
  if (!E.cylinders.empty()) {
    for (const Word& w0 : E.cylinders) m += word_mass(mu, E.k, w0);
    return m;
  }
  for (const Point& p : E.points) m += word_mass(mu, E.k, p.word);
  return m;
}

const ZooInstance& zoo_get(const std::string& name) {
  for (const auto& inst : zoo_instances())
    if (inst.name == name) return inst;
  throw ConfigError("unknown zoo instance: " + name);
}

struct EntPair {
  double hB = 0.0;
  double hP = 0.0;
};

const EntPair& entropies(const ZooInstance& inst) {
  static std::map<std::string, EntPair> cache;
  auto it = cache.find(inst.name);
  if (it == cache.end()) {
    EntPair e;
    e.hB = bowen_entropy(*inst.system, full_target(), inst.config);
    e.hP = packing_entropy(*inst.system, full_target(), inst.config);
    it = cache.emplace(inst.name, e).first;
  }
  return it->second;
}

EstimatorConfig symbolic_config(int n_max) {
  EstimatorConfig cfg;
  cfg.eps_schedule = {0.99, 0.80};
  cfg.n_max = n_max;
  return cfg;
}

MeasureRep blocks_biased(const NdSystem& sys) {
  MeasureRep mu;
  mu.kind = MeasureRep::Kind::Bernoulli;
  mu.label = "blocks_biased";
  for (int k = 0; k <= sys.level_limit(); ++k) {
    const auto& lv = static_cast<const SymbolicLevel&>(sys.level(k));
    if (lv.alphabet(0) == 2)
      mu.rows.push_back({0.3, 0.7});
    else
      mu.rows.push_back({0.1, 0.2, 0.3, 0.4});
  }
  return mu;
}

}  // namespace

CheckReport make_check(std::string name, std::string instance, double lhs,
                       double rhs_lo, double rhs_hi, double tol,
                       std::string notes) {
  CheckReport r;
  r.name = std::move(name);
  r.instance = std::move(instance);
  r.lhs = lhs;
  r.rhs_lo = rhs_lo;
  r.rhs_hi = rhs_hi;
  r.tol = tol;
  r.pass = lhs >= rhs_lo - tol && lhs <= rhs_hi + tol;
  r.notes = std::move(notes);
  return r;
}

std::string to_line(const CheckReport& r) {
  std::string line = r.pass ? "[PASS] " : "[FAIL] ";
  line += r.name + " | " + r.instance + " | lhs=" + fmt(r.lhs) + " target=[" +
          fmt(r.rhs_lo) + "," + fmt(r.rhs_hi) + "] tol=" + fmt(r.tol);
  if (!r.informative) line += " (informational)";
  if (!r.notes.empty()) line += " | " + r.notes;
  return line;
}

CheckReport commutation_check(const NdSystem& a, const NdSystem& b,
                              const ConjugacyMap& pi, double tol) {
  int top = std::min({a.level_limit() - 1, b.level_limit() - 1, 6});
  double worst = 0.0;
  std::int64_t checked = 0;
  for (int k = 0; k <= top; ++k) {
    for (const Point& x : level_sample(a, k, 64)) {
      Point lhs = pi.forward(k + 1, a.apply(k, x));
      Point rhs = b.apply(k, pi.forward(k, x));
      worst = std::max(worst, b.level(k + 1).metric(lhs, rhs));
      ++checked;
    }
  }
  return make_check("invariance/commutation", pi.label, worst, 0.0, 0.0, tol,
                    std::to_string(checked) + " sampled points");
}

std::pair<CheckReport, CheckReport> billingsley_check(
    const NdSystem& sys, const PotentialSeq& f, const TargetSet& E,
    const MeasureRep& mu, const EstimatorConfig& cfg, double tol) {
  mu.validate_against(sys);
  if (target_mass(mu, sys, E) <= 1e-12)
    throw ConfigError("measure gives no mass to the target");

  std::vector<Point> pts;
  const SpaceLevel& lv = sys.level(E.k);
  bool small = lv.enumerable() && lv.size() <= 4096;
  if (small) {
    pts = target_points(sys, E);
  } else {
    std::mt19937_64 rng(cfg.seed);
    int want = std::max(cfg.mc_samples, 500);
    for (int tries = 0; int(pts.size()) < want && tries < 100 * want; ++tries) {
      Point x = sample_point(mu, sys, E.k, rng);
      if (point_in_target(sys, E, x)) pts.push_back(std::move(x));
    }
    if (pts.empty()) throw ConfigError("could not sample the target");
  }

  double eps = cfg.eps_schedule.back();
  double lo_low = kNoUpperBound, hi_low = kNoLowerBound;
  double lo_up = kNoUpperBound, hi_up = kNoLowerBound;
  bool infinite = false;
  for (const Point& x : pts) {
    auto rep = local_exponents(mu, sys, f, x, E.k, eps, cfg.n_min, cfg.n_max);
    if (rep.infinite) {
      infinite = true;
      continue;
    }
    lo_low = std::min(lo_low, rep.lower);
    hi_low = std::max(hi_low, rep.lower);
    lo_up = std::min(lo_up, rep.upper);
    hi_up = std::max(hi_up, rep.upper);
  }
  std::string notes = std::to_string(pts.size()) +
                      (small ? " target points" : " sampled points");
  if (infinite) notes += "; zero-mass balls skipped";

  double hB = bowen_pressure(sys, f, E, cfg).value;
  double hP = packing_pressure(sys, f, E, cfg).value;
  auto b = make_check("billingsley/bowen", sys.label() + "/" + mu.label, hB,
                      lo_low, hi_low, tol, notes);
  auto p = make_check("billingsley/packing", sys.label() + "/" + mu.label, hP,
                      lo_up, hi_up, tol, notes);
  return {std::move(b), std::move(p)};
}

CheckReport variational_check(const NdSystem& sys, const PotentialSeq& f,
                              const TargetSet& K, const MeasureFamily& family,
                              PressureMode mode, const EstimatorConfig& cfg,
                              double tol) {
  if (family.members.empty()) throw ConfigError("empty measure family");
  for (const auto& mu : family.members) {
    mu.validate_against(sys);
    if (std::abs(target_mass(mu, sys, K) - 1.0) > 1e-9)
      throw ConfigError("family member does not give full mass to K");
  }
  bool packing = mode == PressureMode::Packing;
  double P = packing ? packing_pressure(sys, f, K, cfg).value
                     : bowen_pressure(sys, f, K, cfg).value;

  double sup = kNoLowerBound;
  double sup_se = 0.0;
  std::string best;
  for (const auto& mu : family.members) {
    auto ie = integrated_exponent(mu, sys, f, K.k, cfg,
                                  packing ? Side::Upper : Side::Lower);
    if (ie.value > sup) {
      sup = ie.value;
      sup_se = ie.std_error;
      best = mu.label;
    }
  }
  std::string notes = "family-sup over " +
                      std::to_string(family.members.size()) + " members at " +
                      best + "; se=" + fmt(sup_se);
  auto rep = make_check(packing ? "variational/packing" : "variational/bowen",
                        sys.label() + "/" + family.label, sup, P, P, tol,
                        notes);
  if (packing) {
    double norm = f.declared_norm ? *f.declared_norm
                                  : potential_norm(sys, f).value;
    if (!(P - tol > norm)) {
      rep.informative = false;
      rep.notes += "; hypothesis margin thin (estimate near the norm)";
    }
  }
  return rep;
}

const std::vector<ZooInstance>& zoo_instances() {
  static const std::vector<ZooInstance> zoo = [] {
    std::vector<ZooInstance> v;
    auto add = [&](std::unique_ptr<NdSystem> sys,
                   std::function<void(EstimatorConfig&)> tweak = {}) {
      ZooInstance inst;
      inst.system = std::shared_ptr<NdSystem>(std::move(sys));
      inst.name = inst.system->label();
      inst.config = default_config(*inst.system);
      if (tweak) tweak(inst.config);
      v.push_back(std::move(inst));
    };
    add(make_doubling_chain({GridMetric::Euclidean, 1e-4, 33, "doubling_de"}));
    add(make_doubling_chain({GridMetric::Scaled, 1e-4, 33, "doubling_du"}));
    add(make_doubling_chain({GridMetric::Bounded, 1e-4, 33, "doubling_db"}));
    add(make_shift_2(14));
    add(make_shift_24(14));
    add(make_shift_blocks(66), [](EstimatorConfig& c) { c.n_max = 63; });
    add(make_nifs_cantor(11).system);
    add(make_nifs_alt23(9).system);
    return v;
  }();
  return zoo;
}

std::vector<CheckReport> algebra_suite(const SuiteOptions& opts) {
  std::vector<CheckReport> out;
  const auto& s24 = zoo_get("shift_24");
  TargetSet full = full_target();

  for (double a : {-1.0, 0.0, 0.5, 2.0}) {
    auto f = constant_potential(a);
    double PB = bowen_pressure(*s24.system, f, full, s24.config).value;
    double PP = packing_pressure(*s24.system, f, full, s24.config).value;
    const auto& e = entropies(s24);
    std::string inst = "shift_24 a=" + fmt(a);
    out.push_back(make_check("algebra/constant_shift/bowen", inst,
                             PB - e.hB - a, 0.0, 0.0, 1e-9));
    out.push_back(make_check("algebra/constant_shift/packing", inst,
                             PP - e.hP - a, 0.0, 0.0, 1e-9));
  }

  for (const auto& inst : zoo_instances()) {
    const auto& e = entropies(inst);
    out.push_back(make_check("algebra/ordering", inst.name, e.hB - e.hP,
                             kNoLowerBound, 0.0, 0.02));
  }

  {
    auto deep = make_na_shift({{2, 4}, true, 30, "shift_24@30"});
    auto cfg = symbolic_config(28);
    TargetSet uni = cylinder_target({{0}, {1}}, "union01");
    TargetSet z0 = cylinder_target({{0}}, "cyl0");
    TargetSet z1 = cylinder_target({{1}}, "cyl1");
    double ub = bowen_entropy(*deep, uni, cfg);
    double pb =
        std::max(bowen_entropy(*deep, z0, cfg), bowen_entropy(*deep, z1, cfg));
    out.push_back(make_check("algebra/union_stability/bowen", "shift_24@30",
                             ub - pb, 0.0, 0.0, opts.grid_tol,
                             "union of two cylinders vs max part"));
    double up = packing_entropy(*deep, uni, cfg);
    double pp = std::max(packing_entropy(*deep, z0, cfg),
                         packing_entropy(*deep, z1, cfg));
    out.push_back(make_check("algebra/union_stability/packing", "shift_24@30",
                             up - pp, 0.0, 0.0, opts.grid_tol,
                             "union of two cylinders vs max part"));
  }

  {
    auto f = symbol_value_potential({-0.1, 0.2, 0.05, -0.2});
    auto g = symbol_value_potential({0.15, 0.45, 0.3, 0.05});
    double PfB = bowen_pressure(*s24.system, f, full, s24.config).value;
    double PgB = bowen_pressure(*s24.system, g, full, s24.config).value;
    double PfP = packing_pressure(*s24.system, f, full, s24.config).value;
    double PgP = packing_pressure(*s24.system, g, full, s24.config).value;
    out.push_back(make_check("algebra/monotone_potential/bowen", "shift_24",
                             PfB - PgB, kNoLowerBound, 0.0, 1e-9,
                             "g = f + 0.25 pointwise"));
    out.push_back(make_check("algebra/monotone_potential/packing", "shift_24",
                             PfP - PgP, kNoLowerBound, 0.0, 1e-9,
                             "g = f + 0.25 pointwise"));
    const auto& e = entropies(s24);
    out.push_back(make_check("algebra/pressure_bounds/bowen", "shift_24", PfB,
                             e.hB - 0.2, e.hB + 0.2, 1e-9,
                             "h + inf f <= P(f) <= h + sup f"));
    out.push_back(make_check("algebra/pressure_bounds/packing", "shift_24",
                             PfP, e.hP - 0.2, e.hP + 0.2, 1e-9,
                             "h + inf f <= P(f) <= h + sup f"));
  }

  for (const auto& inst : zoo_instances()) {
    const auto& e = entropies(inst);
    bool fin = std::isfinite(e.hB) && std::isfinite(e.hP);
    out.push_back(make_check("algebra/finiteness", inst.name, fin ? 0.0 : 1.0,
                             0.0, 0.0, 0.0));
  }
  return out;
}

std::vector<CheckReport> billingsley_suite(const SuiteOptions& opts) {
  std::vector<CheckReport> out;
  TargetSet full = full_target();

  {
    const auto& inst = zoo_get("shift_2");
    EstimatorConfig cfg = inst.config;
    cfg.seed = opts.seed;
    auto [b, p] = billingsley_check(*inst.system, zero_potential(), full,
                                    uniform_bernoulli(*inst.system), cfg, 0.02);
    out.push_back(std::move(b));
    out.push_back(std::move(p));
  }
  {
    const auto& inst = zoo_get("shift_24");
    EstimatorConfig cfg = inst.config;
    cfg.seed = opts.seed;
    auto [b, p] = billingsley_check(*inst.system, zero_potential(), full,
                                    uniform_bernoulli(*inst.system), cfg, 0.02);
    out.push_back(std::move(b));
    out.push_back(std::move(p));
  }
  {
    const auto& inst = zoo_get("doubling_du");
    EstimatorConfig cfg = inst.config;
    cfg.seed = opts.seed;
    Point x = grid_point(5000);
    TargetSet E = point_target({x}, "atom");
    auto [b, p] = billingsley_check(*inst.system, zero_potential(), E,
                                    dirac(x), cfg, 0.05);
    out.push_back(std::move(b));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<CheckReport> variational_suite(const SuiteOptions& opts) {
  std::vector<CheckReport> out;
  TargetSet full = full_target();

  struct Job {
    std::string name;
    MeasureFamily family;
  };
  std::vector<Job> jobs;
  {
    const auto& sys = *zoo_get("shift_2").system;
    jobs.push_back({"shift_2",
                    {"bernoulli_grid",
                     {uniform_bernoulli(sys),
                      bernoulli_measure(sys, {{0.2, 0.8}}, "p=0.2"),
                      bernoulli_measure(sys, {{0.35, 0.65}}, "p=0.35")}}});
  }
  {
    const auto& sys = *zoo_get("shift_24").system;
    jobs.push_back(
        {"shift_24",
         {"bernoulli_grid",
          {uniform_bernoulli(sys),
           bernoulli_measure(sys, {{0.2, 0.8}, {0.1, 0.2, 0.3, 0.4}},
                             "biased_a"),
           bernoulli_measure(sys, {{0.35, 0.65}, {0.4, 0.2, 0.2, 0.2}},
                             "biased_b")}}});
  }
  {
    const auto& sys = *zoo_get("shift_blocks").system;
    jobs.push_back({"shift_blocks",
                    {"block_products",
                     {uniform_bernoulli(sys), blocks_biased(sys)}}});
  }

  for (const auto& job : jobs) {
    const auto& inst = zoo_get(job.name);
    EstimatorConfig cfg = inst.config;
    cfg.seed = opts.seed;
    const auto& e = entropies(inst);
    auto low = variational_check(*inst.system, zero_potential(), full,
                                 job.family, PressureMode::Bowen, cfg, 0.03);
    out.push_back(make_check("variational/direction/bowen", job.name,
                             low.lhs - e.hB, kNoLowerBound, 0.0, 0.03));
    out.push_back(std::move(low));
    auto up = variational_check(*inst.system, zero_potential(), full,
                                job.family, PressureMode::Packing, cfg, 0.05);
    out.push_back(make_check("variational/direction/packing", job.name,
                             up.lhs - e.hP, kNoLowerBound, 0.0, 0.05));
    out.push_back(std::move(up));
  }
  return out;
}

std::vector<CheckReport> invariance_suite(const SuiteOptions& opts) {
  std::vector<CheckReport> out;
  ConjugacyMap id{"identity", [](int, const Point& p) { return p; },
                  [](int, const Point& p) { return p; }, true};

  {
    const auto& de = zoo_get("doubling_de");
    const auto& db = zoo_get("doubling_db");
    out.push_back(commutation_check(*de.system, *db.system, id, 1e-12));
    auto fwd = equicontinuity_modulus_maps(
        *de.system, *db.system, id.forward, 0.1, 12);
    auto back = equicontinuity_modulus_maps(
        *db.system, *de.system, id.forward, 0.1, 12);
    out.push_back(make_check("invariance/equiconjugacy_moduli", "de<->db",
                             fwd.ok && back.ok ? 0.0 : 1.0, 0.0, 0.0, 0.0,
                             "delta fwd=" + fmt(fwd.delta) +
                                 " back=" + fmt(back.delta)));
    const auto& ee = entropies(de);
    const auto& eb = entropies(db);
    out.push_back(make_check("invariance/equiconjugacy/bowen", "de<->db",
                             std::abs(ee.hB - eb.hB), 0.0, 0.0, opts.grid_tol));
    out.push_back(make_check("invariance/equiconjugacy/packing", "de<->db",
                             std::abs(ee.hP - eb.hP), 0.0, 0.0, opts.grid_tol));
  }
  {
    const auto& de = zoo_get("doubling_de");
    const auto& du = zoo_get("doubling_du");
    out.push_back(commutation_check(*de.system, *du.system, id, 1e-12));
    // On a truncated chain a modulus always exists; what marks the missing
    // equiconjugacy is that it shrinks with the level cap instead of
    // stabilizing.
    auto b6 = equicontinuity_modulus_maps(*du.system, *de.system, id.forward,
                                          0.1, 6);
    auto b12 = equicontinuity_modulus_maps(*du.system, *de.system, id.forward,
                                           0.1, 12);
    double ratio = b6.delta > 0.0 ? b12.delta / b6.delta : 1.0;
    out.push_back(make_check("invariance/modulus_collapse", "de<->du", ratio,
                             0.0, 0.25, 0.0,
                             "inverse modulus at level cap 12 vs 6"));
    const auto& ee = entropies(de);
    const auto& eu = entropies(du);
    auto eq = make_check(
        "invariance/equiconjugacy/bowen", "de<->du", std::abs(ee.hB - eu.hB),
        0.0, 0.0, opts.grid_tol,
        "expected failure: identity is a conjugacy but not an equiconjugacy");
    eq.informative = false;
    out.push_back(std::move(eq));
    out.push_back(make_check(
        "invariance/non_equiconjugacy_gap", "de<->du",
        std::abs(ee.hB - eu.hB), 0.3, kNoUpperBound, 0.0,
        "expected difference: conjugacy alone does not carry entropy"));
  }
  {
    const auto& de = zoo_get("doubling_de");
    const auto& db = zoo_get("doubling_db");
    auto b6 = equicontinuity_modulus_maps(*db.system, *de.system, id.forward,
                                          0.1, 6);
    auto b12 = equicontinuity_modulus_maps(*db.system, *de.system, id.forward,
                                           0.1, 12);
    double ratio = b6.delta > 0.0 ? b12.delta / b6.delta : 0.0;
    out.push_back(make_check("invariance/modulus_stable", "de<->db", ratio,
                             0.5, kNoUpperBound, 0.0,
                             "inverse modulus at level cap 12 vs 6"));
  }
  {
    const auto& s24 = zoo_get("shift_24");
    ConjugacyMap flip{"symbol_flip",
                      [](int, const Point& p) {
                        Point q = p;
                        for (auto& d : q.word) d = std::uint8_t(d ^ 1);
                        return q;
                      },
                      {},
                      true};
    flip.inverse = flip.forward;
    out.push_back(
        commutation_check(*s24.system, *s24.system, flip, 1e-12));
    TargetSet full = full_target();
    auto f = symbol_value_potential({0.25, -0.15, 0.05, 0.2});
    auto g = symbol_value_potential({-0.15, 0.25, 0.2, 0.05});
    double dB = bowen_pressure(*s24.system, f, full, s24.config).value -
                bowen_pressure(*s24.system, g, full, s24.config).value;
    double dP = packing_pressure(*s24.system, f, full, s24.config).value -
                packing_pressure(*s24.system, g, full, s24.config).value;
    out.push_back(make_check("invariance/permutation/bowen", "shift_24",
                             std::abs(dB), 0.0, 0.0, 1e-9,
                             "potential composed with the flip"));
    out.push_back(make_check("invariance/permutation/packing", "shift_24",
                             std::abs(dP), 0.0, 0.0, 1e-9,
                             "potential composed with the flip"));
  }
  {
    const auto& s2 = zoo_get("shift_2");
    EstimatorConfig cfg = s2.config;
    cfg.seed = opts.seed;
    cfg.mc_samples = 4000;
    auto mu = bernoulli_measure(*s2.system, {{0.2, 0.8}}, "p=0.2");
    auto nu = permute_bernoulli(mu, *s2.system, {{1, 0}});
    auto a = integrated_exponent(mu, *s2.system, zero_potential(), 0, cfg,
                                 Side::Lower);
    auto b = integrated_exponent(nu, *s2.system, zero_potential(), 0, cfg,
                                 Side::Lower);
    out.push_back(make_check("invariance/measure_entropy", "shift_2 p=0.2",
                             std::abs(a.value - b.value), 0.0, 0.0, 0.02,
                             "pushforward under the symbol flip; se=" +
                                 fmt(a.std_error + b.std_error)));
  }
  return out;
}

std::vector<CheckReport> covering_suite(const SuiteOptions& opts) {
  std::vector<CheckReport> out;
  struct Backend {
    std::string name;
    std::shared_ptr<NdSystem> sys;
    double eps_hi;
  };
  std::vector<Backend> backends;
  backends.push_back(
      {"symbolic", std::shared_ptr<NdSystem>(
                       make_na_shift({{2, 4}, true, 7, "shift_24@7"})),
       0.9});
  backends.push_back(
      {"grid", std::shared_ptr<NdSystem>(make_doubling_chain(
                   {GridMetric::Euclidean, 1e-3, 12, "doubling@1e-3"})),
       0.2});
  backends.push_back({"cloud", std::shared_ptr<NdSystem>(
                                   make_nifs_cantor(8).system.release()),
                      0.3});

  const int kFamilies = 500;
  for (const auto& be : backends) {
    auto carrier = target_points(*be.sys, full_target());
    std::mt19937_64 rng(opts.seed * 1000003 + std::hash<std::string>{}(be.name));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto rand_center = [&] {
      return carrier[size_t(rng() % carrier.size())];
    };

    int bad_5r = 0, bad_3e = 0;
    std::size_t checked = 0;
    for (int it = 0; it < kFamilies; ++it) {
      int n = 1 + int(rng() % 4);
      int count = 4 + int(rng() % 5);
      std::vector<BowenBallSpec> fam;
      for (int i = 0; i < count; ++i) {
        double eps = 0.05 * std::pow(be.eps_hi / 0.05, unit(rng));
        fam.push_back({0, rand_center(), n, eps, bool(rng() & 1)});
      }
      auto rep = disjoint_subfamily_5r(*be.sys, fam, carrier);
      checked += rep.checked_points;
      if (!rep.disjoint || !rep.covers) ++bad_5r;

      double eps = 0.1 + 0.6 * unit(rng);
      std::vector<BowenBallSpec> fam3;
      for (int i = 0; i < count; ++i)
        fam3.push_back({0, rand_center(), 1 + int(rng() % 5), eps, false});
      auto rep3 = disjoint_subfamily_bowen_3eps(*be.sys, fam3, carrier);
      checked += rep3.checked_points;
      if (!rep3.disjoint || !rep3.covers) ++bad_3e;
    }
    std::string notes = std::to_string(kFamilies) + " random families, " +
                        std::to_string(carrier.size()) +
                        " carrier points each";
    out.push_back(make_check("covering/vitali_5r", be.name, double(bad_5r),
                             0.0, 0.0, 0.0, notes));
    out.push_back(make_check("covering/bowen_3eps", be.name, double(bad_3e),
                             0.0, 0.0, 0.0, notes));
  }
  return out;
}

std::vector<CheckReport> frostman_suite(const SuiteOptions& opts) {
  std::vector<CheckReport> out;
  std::mt19937_64 rng(opts.seed * 7919 + 0xf05);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double alpha = 0.05;
  const double s_pool[3] = {0.3, std::log(2.0), 1.0};

  for (int i = 0; i < 20; ++i) {
    int trunc = 6 + int(rng() % 3);
    std::vector<int> alphabet;
    for (int k = 0; k < trunc; ++k) alphabet.push_back(2 + int(rng() % 2));
    ShiftSpec spec{alphabet, false, trunc, "rand_shift_" + std::to_string(i)};
    auto sys = make_na_shift(spec);

    int nz = 3 + int(rng() % 4);
    std::set<Word> seen;
    std::vector<Point> Z;
    while (int(Z.size()) < nz) {
      Word w(static_cast<std::size_t>(trunc));
      for (int j = 0; j < trunc; ++j)
        w[size_t(j)] = std::uint8_t(rng() % std::uint64_t(alphabet[size_t(j)]));
      if (seen.insert(w).second) Z.push_back(word_point(w));
    }

    int N = 1 + int(rng() % 2);
    int n_max = N + 1;
    double s = s_pool[rng() % 3];
    std::vector<double> table{0.6 * unit(rng) - 0.3, 0.6 * unit(rng) - 0.3,
                              0.6 * unit(rng) - 0.3};
    auto f = symbol_value_potential(table);
    std::string inst = spec.label + " s=" + fmt(s) + " N=" + std::to_string(N);

    auto M = cover_value(*sys, f, Z, 0, s, N, n_max, 0.12,
                         CoverMode::SupWeight);
    auto W = weighted_cover_value(*sys, f, Z, 0, s, N, n_max, 0.12);
    auto R = cover_value(*sys, f, Z, 0, s + alpha, N, n_max, 0.72,
                         CoverMode::CenterWeight);
    out.push_back(make_check("sandwich/exact_cover", inst,
                             M.exact && R.exact ? 0.0 : 1.0, 0.0, 0.0, 0.0,
                             std::to_string(M.witness.size()) +
                                 " balls in the optimal cover"));
    out.push_back(make_check("sandwich/left", inst,
                             R.upper_bound - W.upper_bound, kNoLowerBound, 0.0,
                             1e-9, "center-weight cover at (s+a, 6eps)"));
    out.push_back(make_check("sandwich/right", inst,
                             W.upper_bound - M.upper_bound, kNoLowerBound, 0.0,
                             1e-9, "relaxation below the exact cover"));

    auto fr = frostman_dual(*sys, f, Z, 0, s, N, n_max, 0.12);
    out.push_back(make_check("frostman/duality", inst, fr.gap, 0.0, 0.0,
                             1e-6));
    out.push_back(make_check("frostman/constraints", inst,
                             fr.max_constraint_violation, 0.0, 0.0, 1e-9));
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "algebra", "billingsley", "variational",
      "invariance", "covering", "frostman"};
  return names;
}

std::vector<CheckReport> run_suite(const std::string& name,
                                   const SuiteOptions& opts) {
  if (name == "algebra") return algebra_suite(opts);
  if (name == "billingsley") return billingsley_suite(opts);
  if (name == "variational") return variational_suite(opts);
  if (name == "invariance") return invariance_suite(opts);
  if (name == "covering") return covering_suite(opts);
  if (name == "frostman") return frostman_suite(opts);
  throw ConfigError("unknown suite: " + name);
}

}  // namespace nds
