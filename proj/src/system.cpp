#include "nds/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace nds {

void validate(const NdSystem& sys, const BowenBallSpec& b) {
  if (b.n < 1) throw ConfigError("ball depth must be >= 1");
  if (!(b.eps > 0.0)) throw ConfigError("ball radius must be positive");
  if (b.k < 0 || b.k + b.n - 1 > sys.level_limit())
    throw LevelRangeError("ball depth exceeds available levels");
  if (!sys.level(b.k).contains(b.center))
    throw ConfigError("ball center not in carrier");
}

PotentialSeq zero_potential() {
  PotentialSeq f;
  f.name = "zero";
  f.eval = [](const NdSystem&, int, const Point&) { return 0.0; };
  f.declared_norm = 0.0;
  f.modulus = [](double eps) { return eps; };
  f.symbol_term = [](int, int) { return 0.0; };
  f.constant_only = true;
  return f;
}

PotentialSeq constant_potential(double a) {
  PotentialSeq f;
  f.name = "const(" + std::to_string(a) + ")";
  f.eval = [a](const NdSystem&, int, const Point&) { return a; };
  f.declared_norm = std::abs(a);
  f.modulus = [](double eps) { return eps; };
  f.symbol_term = [a](int, int) { return a; };
  f.constant_only = true;
  return f;
}

PotentialSeq symbol_value_potential(std::vector<double> table) {
  PotentialSeq f;
  f.name = table.empty() ? "symbol" : "symbol_table";
  auto shared = std::make_shared<std::vector<double>>(std::move(table));
  f.eval = [shared](const NdSystem& sys, int k, const Point& x) {
    if (sys.level(k).kind() != SpaceKind::SymbolicLevel)
      throw UnsupportedError("symbol potential needs a symbolic level");
    int a = int(x.word.at(0));
    if (!shared->empty()) return shared->at(size_t(a));
    return double(a);
  };
  f.symbol_term = [shared](int, int a) {
    if (!shared->empty()) return shared->at(size_t(a));
    return double(a);
  };
  if (!shared->empty()) {
    double m = 0.0;
    for (double v : *shared) m = std::max(m, std::abs(v));
    f.declared_norm = m;
  }
  f.modulus = [](double) { return 0.999; };
  return f;
}

PotentialSeq sin_decay_potential() {
  PotentialSeq f;
  f.name = "sin_decay";
  f.eval = [](const NdSystem& sys, int k, const Point& x) {
    const SpaceLevel& lv = sys.level(k);
    if (lv.kind() == SpaceKind::SymbolicLevel)
      throw UnsupportedError("sin_decay potential needs a coordinate level");
    return std::ldexp(std::sin(level_coordinate(lv, x)), -k);
  };
  f.modulus = [](double eps) { return eps; };
  return f;
}

PotentialSeq level_index_potential() {
  PotentialSeq f;
  f.name = "level_index";
  f.eval = [](const NdSystem&, int k, const Point&) { return double(k); };
  f.modulus = [](double eps) { return eps; };
  return f;
}

Point compose(const NdSystem& sys, int k, int j, Point x) {
  if (k < 0 || j < 0 || k + j > sys.level_limit())
    throw LevelRangeError("compose past available levels (k=" +
                          std::to_string(k) + ", j=" + std::to_string(j) + ")");
  for (int i = 0; i < j; ++i) x = sys.apply(k + i, x);
  return x;
}

double bowen_distance(const NdSystem& sys, int k, int n, const Point& x,
                      const Point& y) {
  if (n < 1) throw ConfigError("bowen distance needs n >= 1");
  if (k < 0 || k + n - 1 > sys.level_limit())
    throw LevelRangeError("bowen distance past available levels");
  Point u = x, v = y;
  double d = 0.0;
  for (int j = 0; j < n; ++j) {
    d = std::max(d, sys.level(k + j).metric(u, v));
    if (j + 1 < n) {
      u = sys.apply(k + j, u);
      v = sys.apply(k + j, v);
    }
  }
  return d;
}

std::vector<Point> bowen_ball_points(const NdSystem& sys,
                                     const BowenBallSpec& ball,
                                     std::span<const Point> domain) {
  validate(sys, ball);
  std::vector<Point> out;
  for (const Point& y : domain) {
    double d = bowen_distance(sys, ball.k, ball.n, ball.center, y);
    if (ball.closed ? d <= ball.eps : d < ball.eps) out.push_back(y);
  }
  return out;
}

std::vector<Point> bowen_ball_points_intersection(
    const NdSystem& sys, const BowenBallSpec& ball,
    std::span<const Point> domain) {
  validate(sys, ball);
  std::vector<Point> survivors(domain.begin(), domain.end());
  std::vector<Point> images = survivors;
  Point cimg = ball.center;
  for (int j = 0; j < ball.n; ++j) {
    const SpaceLevel& lv = sys.level(ball.k + j);
    std::vector<Point> keep, keep_img;
    for (size_t i = 0; i < survivors.size(); ++i) {
      double d = lv.metric(cimg, images[i]);
      if (ball.closed ? d <= ball.eps : d < ball.eps) {
        keep.push_back(survivors[i]);
        keep_img.push_back(images[i]);
      }
    }
    survivors.swap(keep);
    images.swap(keep_img);
    if (j + 1 < ball.n) {
      cimg = sys.apply(ball.k + j, cimg);
      for (Point& p : images) p = sys.apply(ball.k + j, p);
    }
  }
  return survivors;
}

double birkhoff_sum(const NdSystem& sys, const PotentialSeq& f, int k, int n,
                    const Point& x) {
  if (n < 0 || k < 0 || (n > 0 && k + n - 1 > sys.level_limit()))
    throw LevelRangeError("birkhoff sum past available levels");
  double s = 0.0;
  Point p = x;
  for (int j = 0; j < n; ++j) {
    s += f(sys, k + j, p);
    if (j + 1 < n) p = sys.apply(k + j, p);
  }
  return s;
}

std::vector<int> doubling_level_schedule(int limit) {
  std::vector<int> ks{0};
  for (int k = 1; k <= limit; k *= 2) ks.push_back(k);
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

namespace {

// Up to `cap` carrier points spread over the level (all of them when small).
std::vector<Point> sample_carrier(const SpaceLevel& lv, std::int64_t cap,
                                  std::uint64_t seed) {
  std::vector<Point> pts;
  std::int64_t n = lv.size();
  if (n >= 0 && lv.enumerable() && n <= cap) {
    pts.reserve(size_t(n));
    for (std::int64_t i = 0; i < n; ++i) pts.push_back(lv.point(i));
    return pts;
  }
  if (lv.kind() != SpaceKind::SymbolicLevel) {
    std::int64_t stride = std::max<std::int64_t>(1, n / cap);
    for (std::int64_t i = 0; i < n; i += stride) pts.push_back(lv.point(i));
    if (pts.empty() || pts.back().idx != n - 1) pts.push_back(lv.point(n - 1));
    return pts;
  }
  const auto& sl = static_cast<const SymbolicLevel&>(lv);
  std::mt19937_64 rng(seed);
  for (std::int64_t i = 0; i < cap; ++i) {
    Word w(size_t(sl.word_len()));
    for (int j = 0; j < sl.word_len(); ++j)
      w[size_t(j)] = std::uint8_t(rng() % std::uint64_t(sl.alphabet(j)));
    pts.push_back(word_point(std::move(w)));
  }
  return pts;
}

}  // namespace

NormReport potential_norm(const NdSystem& sys, const PotentialSeq& f,
                          int level_cap) {
  NormReport rep;
  if (f.declared_unbounded) {
    rep.unbounded = true;
    return rep;
  }
  int limit = level_cap >= 0 ? std::min(level_cap, sys.level_limit())
                             : sys.level_limit();
  auto ks = doubling_level_schedule(limit);
  for (int k : ks) {
    double mx = 0.0;
    for (const Point& p : sample_carrier(sys.level(k), 2048, 17 + unsigned(k)))
      mx = std::max(mx, std::abs(f(sys, k, p)));
    rep.level_maxima.push_back(mx);
    rep.value = std::max(rep.value, mx);
  }
  size_t m = rep.level_maxima.size();
  if (m >= 4) {
    bool increasing = true;
    for (size_t i = m - 4; i + 1 < m; ++i)
      if (!(rep.level_maxima[i + 1] > rep.level_maxima[i])) increasing = false;
    if (increasing &&
        rep.level_maxima[m - 1] > 1.5 * (rep.level_maxima[m / 2] + 1e-12))
      rep.unbounded = true;
  }
  if (f.declared_norm && !rep.unbounded) rep.value = *f.declared_norm;
  return rep;
}

namespace {

// Pairs (x, y) with d(x, y) <= delta, sampled across the carrier.
std::vector<std::pair<Point, Point>> near_pairs(const SpaceLevel& lv,
                                                double delta,
                                                std::uint64_t seed) {
  std::vector<std::pair<Point, Point>> pairs;
  if (lv.kind() == SpaceKind::SymbolicLevel) {
    const auto& sl = static_cast<const SymbolicLevel&>(lv);
    std::mt19937_64 rng(seed);
    int p = 0;
    while (p < sl.word_len() && std::ldexp(1.0, -p) > delta) ++p;
    for (int t = 0; t < 48; ++t) {
      Word a(size_t(sl.word_len())), b;
      for (int j = 0; j < sl.word_len(); ++j)
        a[size_t(j)] = std::uint8_t(rng() % std::uint64_t(sl.alphabet(j)));
      b = a;
      for (int j = p; j < sl.word_len(); ++j)
        b[size_t(j)] = std::uint8_t(rng() % std::uint64_t(sl.alphabet(j)));
      pairs.emplace_back(word_point(std::move(a)), word_point(std::move(b)));
    }
    return pairs;
  }
  std::int64_t n = lv.size();
  std::int64_t stride = std::max<std::int64_t>(1, n / 48);
  for (std::int64_t i = 0; i < n; i += stride) {
    Point x = lv.point(i);
    for (std::int64_t g = 1; i + g < n; g *= 4) {
      Point y = lv.point(i + g);
      if (lv.metric(x, y) <= delta) pairs.emplace_back(x, y);
    }
    // far pair probing distances that stay small only under some metrics
    if (i == 0 && n > 1) {
      Point y = lv.point(n - 1);
      if (lv.metric(x, y) <= delta) pairs.emplace_back(x, y);
    }
  }
  return pairs;
}

template <typename GapFn>
ModulusReport modulus_search(const NdSystem& sys, double eps, int level_cap,
                             GapFn&& gap) {
  int limit = level_cap >= 0 ? std::min(level_cap, sys.level_limit())
                             : sys.level_limit();
  auto ks = doubling_level_schedule(limit);
  for (int t = 0; t <= 24; ++t) {
    double delta = eps * std::ldexp(1.0, -t);
    bool ok = true;
    for (int k : ks) {
      for (auto& [x, y] : near_pairs(sys.level(k), delta, 101 + unsigned(k))) {
        if (gap(k, x, y) >= eps) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return {true, delta};
  }
  return {false, 0.0};
}

}  // namespace

ModulusReport equicontinuity_modulus(const NdSystem& sys,
                                     const PotentialSeq& f, double eps,
                                     int level_cap) {
  return modulus_search(
      sys, eps, level_cap, [&](int k, const Point& x, const Point& y) {
        return std::abs(f(sys, k, x) - f(sys, k, y));
      });
}

ModulusReport equicontinuity_modulus_maps(
    const NdSystem& from, const NdSystem& to,
    const std::function<Point(int, const Point&)>& pi, double eps,
    int level_cap) {
  return modulus_search(from, eps, level_cap,
                        [&](int k, const Point& x, const Point& y) {
                          return to.level(k).metric(pi(k, x), pi(k, y));
                        });
}

}  // namespace nds
