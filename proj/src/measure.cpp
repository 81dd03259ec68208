#include "nds/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const SymbolicLevel& symbolic_level(const NdSystem& sys, int k) {
  const SpaceLevel& lv = sys.level(k);
  if (lv.kind() != SpaceKind::SymbolicLevel)
    throw UnsupportedError("product measures need a symbolic level");
  return static_cast<const SymbolicLevel&>(lv);
}

void check_row(const std::vector<double>& row) {
  double sum = 0.0;
  for (double p : row) {
    if (!(p >= 0.0)) throw ConfigError("negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ConfigError("probability row does not sum to 1");
}

}  // namespace

const std::vector<double>& MeasureRep::prob_row(int level) const {
  if (kind != Kind::Bernoulli)
    throw ConfigError("prob_row only applies to product measures");
  if (level < 0 || level >= int(rows.size()))
    throw LevelRangeError("no probability row at this level");
  return rows[size_t(level)];
}

void MeasureRep::validate_against(const NdSystem& sys) const {
  if (kind == Kind::Atomic) {
    if (atoms.size() != masses.size() || atoms.empty())
      throw ConfigError("atomic measure needs matching atoms and masses");
    double sum = 0.0;
    for (double m : masses) {
      if (!(m >= 0.0)) throw ConfigError("negative mass");
      sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ConfigError("atomic masses do not sum to 1");
    return;
  }
  if (int(rows.size()) < sys.level_limit() + 1)
    throw ConfigError("product measure misses levels of the system");
  for (int k = 0; k <= sys.level_limit(); ++k) {
    const SymbolicLevel& lv = symbolic_level(sys, k);
    if (int(rows[size_t(k)].size()) != lv.alphabet(0))
      throw ConfigError("probability row does not match the alphabet");
    check_row(rows[size_t(k)]);
  }
}

MeasureRep bernoulli_measure(const NdSystem& sys,
                             std::vector<std::vector<double>> cycle,
                             std::string label) {
  if (cycle.empty()) throw ConfigError("empty probability cycle");
  for (const auto& row : cycle) check_row(row);
  MeasureRep mu;
  mu.kind = MeasureRep::Kind::Bernoulli;
  mu.label = label.empty() ? "bernoulli" : std::move(label);
  for (int k = 0; k <= sys.level_limit(); ++k) {
    const SymbolicLevel& lv = symbolic_level(sys, k);
    const auto& row = cycle[size_t(k) % cycle.size()];
    if (int(row.size()) != lv.alphabet(0))
      throw ConfigError("probability row does not match the alphabet");
    mu.rows.push_back(row);
  }
  return mu;
}

MeasureRep uniform_bernoulli(const NdSystem& sys) {
  MeasureRep mu;
  mu.kind = MeasureRep::Kind::Bernoulli;
  mu.label = "uniform";
  for (int k = 0; k <= sys.level_limit(); ++k) {
    const SymbolicLevel& lv = symbolic_level(sys, k);
    mu.rows.emplace_back(size_t(lv.alphabet(0)),
                         1.0 / double(lv.alphabet(0)));
  }
  return mu;
}

MeasureRep atomic_measure(std::vector<Point> atoms, std::vector<double> masses,
                          std::string label) {
  MeasureRep mu;
  mu.kind = MeasureRep::Kind::Atomic;
  mu.label = std::move(label);
  mu.atoms = std::move(atoms);
  mu.masses = std::move(masses);
  if (mu.atoms.size() != mu.masses.size() || mu.atoms.empty())
    throw ConfigError("atomic measure needs matching atoms and masses");
  return mu;
}

MeasureRep dirac(Point x, std::string label) {
  return atomic_measure({std::move(x)}, {1.0}, std::move(label));
}

double ball_mass(const MeasureRep& mu, const NdSystem& sys,
                 const BowenBallSpec& ball) {
  validate(sys, ball);
  if (mu.kind == MeasureRep::Kind::Atomic) {
    double mass = 0.0;
    for (size_t i = 0; i < mu.atoms.size(); ++i) {
      double d = bowen_distance(sys, ball.k, ball.n, ball.center, mu.atoms[i]);
      if (ball.closed ? d <= ball.eps : d < ball.eps) mass += mu.masses[i];
    }
    return mass;
  }
  const SymbolicLevel& lv = symbolic_level(sys, ball.k);
  int m = std::min(symbolic_ball_depth(ball.n, ball.eps, ball.closed),
                   lv.word_len());
  double mass = 1.0;
  for (int j = 0; j < m; ++j)
    mass *= mu.prob_row(ball.k + j)[size_t(ball.center.word[size_t(j)])];
  return mass;
}

LocalExponentReport local_exponents(const MeasureRep& mu, const NdSystem& sys,
                                    const PotentialSeq& f, const Point& x,
                                    int k, double eps, int n_min, int n_max) {
  LocalExponentReport rep;
  rep.x = x;
  rep.eps = eps;
  int depth_cap = sys.level_limit() - k + 1;
  rep.grid = tail_depth_grid(n_min, std::min(n_max, depth_cap));
  rep.lower = kInf;
  rep.upper = -kInf;
  for (int n : rep.grid) {
    double mass = ball_mass(mu, sys, {k, x, n, eps, false});
    double v;
    if (mass <= 0.0) {
      rep.infinite = true;
      v = kInf;
    } else {
      v = (birkhoff_sum(sys, f, k, n, x) - std::log(mass)) / double(n);
      rep.lower = std::min(rep.lower, v);
      rep.upper = std::max(rep.upper, v);
    }
    rep.per_n.push_back(v);
  }
  if (rep.upper == -kInf) {
    rep.lower = kInf;
    rep.upper = kInf;
  }
  return rep;
}

Point sample_point(const MeasureRep& mu, const NdSystem& sys, int k,
                   std::mt19937_64& rng) {
  if (mu.kind == MeasureRep::Kind::Atomic) {
    std::discrete_distribution<size_t> pick(mu.masses.begin(),
                                            mu.masses.end());
    return mu.atoms[pick(rng)];
  }
  const SymbolicLevel& lv = symbolic_level(sys, k);
  Word w(size_t(lv.word_len()));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int j = 0; j < lv.word_len(); ++j) {
    const auto& row = mu.prob_row(k + j);
    double u = unit(rng);
    double acc = 0.0;
    std::uint8_t digit = std::uint8_t(row.size() - 1);
    for (size_t a = 0; a < row.size(); ++a) {
      acc += row[a];
      if (u < acc) {
        digit = std::uint8_t(a);
        break;
      }
    }
    w[size_t(j)] = digit;
  }
  return word_point(std::move(w));
}

IntegratedExponent integrated_exponent(const MeasureRep& mu,
                                       const NdSystem& sys,
                                       const PotentialSeq& f, int k,
                                       const EstimatorConfig& cfg, Side side) {
  if (cfg.eps_schedule.empty()) throw ConfigError("empty radius schedule");
  if (cfg.mc_samples < 1) throw ConfigError("sample count must be positive");
  double eps = cfg.eps_schedule.back();
  std::mt19937_64 rng(cfg.seed);
  int samples = std::max(cfg.mc_samples, 500);

  double sum = 0.0, sumsq = 0.0;
  int used = 0, excluded = 0;
  for (int i = 0; i < samples; ++i) {
    Point x = sample_point(mu, sys, k, rng);
    LocalExponentReport rep =
        local_exponents(mu, sys, f, x, k, eps, cfg.n_min, cfg.n_max);
    double v = side == Side::Lower ? rep.lower : rep.upper;
    if (!std::isfinite(v)) {
      ++excluded;
      continue;
    }
    sum += v;
    sumsq += v * v;
    ++used;
  }
  IntegratedExponent out;
  out.samples = used;
  out.excluded_fraction = double(excluded) / double(samples);
  if (used == 0) throw DegenerateError("every sample hit a zero-mass ball");
  out.value = sum / double(used);
  if (used > 1) {
    double var = (sumsq - sum * sum / double(used)) / double(used - 1);
    out.std_error = std::sqrt(std::max(0.0, var) / double(used));
  }
  return out;
}

MeasureRep pushforward(const MeasureRep& mu, const NdSystem& target, int k,
                       const std::function<Point(const Point&)>& pi) {
  if (mu.kind != MeasureRep::Kind::Atomic)
    throw UnsupportedError(
        "pushforward of a product measure needs a symbol permutation");
  const SpaceLevel& lv = target.level(k);
  std::vector<Point> atoms;
  std::vector<double> masses;
  for (size_t i = 0; i < mu.atoms.size(); ++i) {
    Point y = pi(mu.atoms[i]);
    if (!lv.contains(y)) throw ConfigError("image atom not in the target level");
    auto it = std::find(atoms.begin(), atoms.end(), y);
    if (it == atoms.end()) {
      atoms.push_back(y);
      masses.push_back(mu.masses[i]);
    } else {
      masses[size_t(it - atoms.begin())] += mu.masses[i];
    }
  }
  MeasureRep out = atomic_measure(std::move(atoms), std::move(masses),
                                  mu.label + "#pushforward");
  return out;
}

MeasureRep permute_bernoulli(const MeasureRep& mu, const NdSystem& sys,
                             const std::vector<std::vector<int>>& perms) {
  if (mu.kind != MeasureRep::Kind::Bernoulli)
    throw ConfigError("symbol permutation applies to product measures");
  if (perms.empty()) throw ConfigError("empty permutation list");
  MeasureRep out = mu;
  out.label = mu.label + "#permuted";
  for (int k = 0; k <= sys.level_limit(); ++k) {
    const auto& perm = perms[size_t(k) % perms.size()];
    const auto& row = mu.prob_row(k);
    if (perm.size() != row.size())
      throw ConfigError("permutation does not match the alphabet");
    std::vector<char> seen(perm.size(), 0);
    for (int p : perm) {
      if (p < 0 || size_t(p) >= perm.size() || seen[size_t(p)])
        throw ConfigError("not a permutation");
      seen[size_t(p)] = 1;
    }
    // image measure: mass of new symbol perm[a] is the mass of a
    for (size_t a = 0; a < row.size(); ++a)
      out.rows[size_t(k)][size_t(perm[a])] = row[a];
  }
  return out;
}

}  // namespace nds
