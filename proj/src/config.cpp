#include "nds/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nds/errors.hpp"

namespace nds {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
              c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(v);
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!v.empty() && v.back() == ',') out.push_back("");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text, const std::string& where) {
  const char* b = text.data();
  const char* e = b + text.size();
  double v = 0.0;
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc{} || res.ptr != e)
    throw ConfigError(where + ": not a number: '" + text + "'");
  return v;
}

KvConfig KvConfig::parse(const std::string& text) {
  KvConfig cfg;
  cfg.final_newline_ = !text.empty() && text.back() == '\n';
  size_t pos = 0;
  int lineno = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string raw = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
    pos = nl == std::string::npos ? text.size() : nl + 1;
    ++lineno;

    Line line;
    line.raw = raw;
    std::string body = trim(raw);
    if (!body.empty() && body[0] != '#') {
      size_t eq = body.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(lineno) +
                          ": expected 'key = value'");
      line.key = trim(body.substr(0, eq));
      line.value = trim(body.substr(eq + 1));
      if (!valid_key(line.key))
        throw ConfigError("line " + std::to_string(lineno) + ": bad key '" +
                          line.key + "'");
      if (cfg.has(line.key))
        throw ConfigError("line " + std::to_string(lineno) +
                          ": duplicate key '" + line.key + "'");
      line.is_entry = true;
    }
    cfg.lines_.push_back(std::move(line));
  }
  return cfg;
}

KvConfig KvConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string KvConfig::dump() const {
  std::string out;
  for (size_t i = 0; i < lines_.size(); ++i) {
    out += lines_[i].raw;
    if (i + 1 < lines_.size() || final_newline_) out += '\n';
  }
  return out;
}

void KvConfig::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write config file: " + path);
  out << dump();
}

bool KvConfig::has(const std::string& key) const {
  for (const Line& l : lines_)
    if (l.is_entry && l.key == key) return true;
  return false;
}

const std::string& KvConfig::get(const std::string& key) const {
  for (const Line& l : lines_)
    if (l.is_entry && l.key == key) return l.value;
  throw ConfigError("missing key '" + key + "'");
}

std::string KvConfig::get_or(const std::string& key, std::string dflt) const {
  return has(key) ? get(key) : dflt;
}

double KvConfig::get_double(const std::string& key) const {
  return parse_double(get(key), key);
}

double KvConfig::get_double_or(const std::string& key, double dflt) const {
  return has(key) ? get_double(key) : dflt;
}

std::int64_t KvConfig::get_int(const std::string& key) const {
  const std::string& v = get(key);
  std::int64_t out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    throw ConfigError(key + ": not an integer: '" + v + "'");
  return out;
}

std::int64_t KvConfig::get_int_or(const std::string& key,
                                  std::int64_t dflt) const {
  return has(key) ? get_int(key) : dflt;
}

bool KvConfig::get_bool_or(const std::string& key, bool dflt) const {
  if (!has(key)) return dflt;
  const std::string& v = get(key);
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::vector<double> KvConfig::get_doubles(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : split_list(get(key)))
    out.push_back(parse_double(item, key));
  return out;
}

std::vector<std::int64_t> KvConfig::get_ints(const std::string& key) const {
  std::vector<std::int64_t> out;
  for (const std::string& item : split_list(get(key))) {
    std::int64_t v = 0;
    auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc{} || res.ptr != item.data() + item.size())
      throw ConfigError(key + ": not an integer list item: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> KvConfig::keys_with_prefix(
    const std::string& prefix) const {
  std::vector<std::string> out;
  for (const Line& l : lines_)
    if (l.is_entry && l.key.rfind(prefix, 0) == 0) out.push_back(l.key);
  return out;
}

void KvConfig::set(const std::string& key, std::string value) {
  if (!valid_key(key)) throw ConfigError("bad key '" + key + "'");
  if (has(key)) throw ConfigError("duplicate key '" + key + "'");
  Line line;
  line.key = key;
  line.value = std::move(value);
  line.raw = line.key + " = " + line.value;
  line.is_entry = true;
  lines_.push_back(std::move(line));
}

void KvConfig::set_double(const std::string& key, double value) {
  set(key, format_double(value));
}

void KvConfig::set_int(const std::string& key, std::int64_t value) {
  set(key, std::to_string(value));
}

void KvConfig::set_bool(const std::string& key, bool value) {
  set(key, value ? "true" : "false");
}

void KvConfig::set_doubles(const std::string& key,
                           std::span<const double> values) {
  std::string v;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) v += ",";
    v += format_double(values[i]);
  }
  set(key, v);
}

void KvConfig::set_ints(const std::string& key,
                        std::span<const std::int64_t> values) {
  std::string v;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) v += ",";
    v += std::to_string(values[i]);
  }
  set(key, v);
}

void KvConfig::comment(const std::string& text) {
  Line line;
  line.raw = "# " + text;
  lines_.push_back(std::move(line));
}

void KvConfig::blank() { lines_.push_back({}); }

namespace {

GridMetric metric_from(const std::string& name) {
  if (name == "euclidean") return GridMetric::Euclidean;
  if (name == "scaled") return GridMetric::Scaled;
  if (name == "bounded") return GridMetric::Bounded;
  throw ConfigError("unknown metric_kind '" + name + "'");
}

std::vector<int> to_ints(const std::vector<std::int64_t>& v,
                         const std::string& where) {
  std::vector<int> out;
  for (std::int64_t x : v) {
    if (x < 0 || x > 1 << 20) throw ConfigError(where + ": out of range");
    out.push_back(int(x));
  }
  return out;
}

}  // namespace

LoadedSystem load_system(const std::string& path) {
  LoadedSystem out;
  out.config = KvConfig::load(path);
  const KvConfig& cfg = out.config;
  std::string type = cfg.get("type");
  std::string label = cfg.get_or("label", type);
  out.name = label;

  if (type == "shift") {
    ShiftSpec spec;
    spec.alphabet = to_ints(cfg.get_ints("alphabet_sizes"), "alphabet_sizes");
    spec.cycle = cfg.get_bool_or("alphabet_cycle", true);
    spec.truncation = int(cfg.get_int_or("truncation", 14));
    spec.label = label;
    out.system = std::shared_ptr<NdSystem>(make_na_shift(spec));
  } else if (type == "doubling") {
    DoublingChainSpec spec;
    spec.metric = metric_from(cfg.get_or("metric_kind", "euclidean"));
    spec.delta = cfg.get_double_or("delta", 1e-4);
    spec.levels = int(cfg.get_int_or("levels", 33));
    spec.label = label;
    out.system = std::shared_ptr<NdSystem>(make_doubling_chain(spec));
  } else if (type == "nifs") {
    NifsSpec spec;
    spec.depth = int(cfg.get_int_or("depth", 11));
    spec.cycle = cfg.get_bool_or("contractions_cycle", true);
    spec.min_gap = cfg.get_double_or("min_gap", 1e-6);
    spec.label = label;
    for (int lvl = 0;; ++lvl) {
      std::string prefix = "contractions." + std::to_string(lvl) + ".";
      auto keys = cfg.keys_with_prefix(prefix);
      if (keys.empty()) break;
      std::vector<std::pair<double, double>> row;
      for (int br = 0; br < int(keys.size()); ++br) {
        std::string key = prefix + std::to_string(br);
        auto pair = cfg.get_doubles(key);
        if (pair.size() != 2)
          throw ConfigError(key + ": expected 'ratio,offset'");
        row.emplace_back(pair[0], pair[1]);
      }
      spec.branches.push_back(std::move(row));
    }
    if (spec.branches.empty())
      throw ConfigError(path + ": nifs needs contractions.<level>.<branch>");
    auto rep = make_nifs_repeller(spec);
    out.system = std::shared_ptr<NdSystem>(std::move(rep.system));
    out.net = std::move(rep.net);
    out.net_radius = rep.net_radius;
  } else {
    throw ConfigError(path + ": unknown system type '" + type + "'");
  }
  return out;
}

PotentialSeq load_potential(const std::string& path) {
  KvConfig cfg = KvConfig::load(path);
  std::string kind = cfg.get("kind");
  if (kind == "zero") return zero_potential();
  if (kind == "constant") return constant_potential(cfg.get_double("value"));
  if (kind == "symbol_table") {
    auto f = symbol_value_potential(cfg.get_doubles("table"));
    return f;
  }
  if (kind == "sin_decay") return sin_decay_potential();
  throw ConfigError(path + ": unknown potential kind '" + kind + "'");
}

MeasureRep load_measure(const NdSystem& sys, const std::string& path) {
  KvConfig cfg = KvConfig::load(path);
  std::string kind = cfg.get("kind");
  std::string label = cfg.get_or("label", kind);
  if (kind == "bernoulli") {
    std::vector<std::vector<double>> cycle;
    for (int i = 0;; ++i) {
      std::string key = "probs." + std::to_string(i);
      if (!cfg.has(key)) break;
      cycle.push_back(cfg.get_doubles(key));
    }
    if (cycle.empty()) return uniform_bernoulli(sys);
    return bernoulli_measure(sys, std::move(cycle), label);
  }
  if (kind == "atomic") {
    std::vector<Point> atoms;
    std::vector<double> masses;
    for (int i = 0;; ++i) {
      std::string base = "atoms." + std::to_string(i) + ".";
      if (!cfg.has(base + "weight")) break;
      masses.push_back(cfg.get_double(base + "weight"));
      if (cfg.has(base + "word")) {
        Word w;
        for (std::int64_t d : cfg.get_ints(base + "word"))
          w.push_back(std::uint8_t(d));
        atoms.push_back(word_point(std::move(w)));
      } else {
        atoms.push_back(grid_point(cfg.get_int(base + "index")));
      }
    }
    if (atoms.empty()) throw ConfigError(path + ": atomic needs atoms.<i>.*");
    return atomic_measure(std::move(atoms), std::move(masses), label);
  }
  throw ConfigError(path + ": unknown measure kind '" + kind + "'");
}

EstimatorConfig estimator_from(const KvConfig& cfg, const NdSystem& sys) {
  EstimatorConfig out = default_config(sys);
  if (cfg.has("estimator.eps")) out.eps_schedule = cfg.get_doubles("estimator.eps");
  out.n_min = int(cfg.get_int_or("estimator.n_min", out.n_min));
  out.n_max = int(cfg.get_int_or("estimator.n_max", out.n_max));
  out.plateau_tol = cfg.get_double_or("estimator.plateau_tol", out.plateau_tol);
  out.s_tol = cfg.get_double_or("estimator.s_tol", out.s_tol);
  out.seed = std::uint64_t(cfg.get_int_or("estimator.seed",
                                          std::int64_t(out.seed)));
  out.mc_samples = int(cfg.get_int_or("estimator.mc_samples", out.mc_samples));
  return out;
}

namespace {

void write_file(const std::filesystem::path& dir, const std::string& name,
                const KvConfig& cfg, std::vector<std::string>& names) {
  cfg.save((dir / name).string());
  names.push_back(name);
}

KvConfig shift_config(const std::string& label, std::vector<std::int64_t> ab,
                      int truncation) {
  KvConfig c;
  c.comment("nonautonomous full shift");
  c.set("type", "shift");
  c.set("label", label);
  c.set_ints("alphabet_sizes", ab);
  c.set_bool("alphabet_cycle", true);
  c.set_int("truncation", truncation);
  return c;
}

KvConfig doubling_config(const std::string& label, const std::string& metric) {
  KvConfig c;
  c.comment("doubling chain on growing intervals");
  c.set("type", "doubling");
  c.set("label", label);
  c.set("metric_kind", metric);
  c.set_double("delta", 1e-4);
  c.set_int("levels", 33);
  return c;
}

}  // namespace

std::vector<std::string> write_zoo_configs(const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::filesystem::path d(dir);
  std::vector<std::string> names;

  write_file(d, "doubling_de.cfg", doubling_config("doubling_de", "euclidean"),
             names);
  write_file(d, "doubling_du.cfg", doubling_config("doubling_du", "scaled"),
             names);
  write_file(d, "doubling_db.cfg", doubling_config("doubling_db", "bounded"),
             names);
  write_file(d, "shift_2.cfg", shift_config("shift_2", {2}, 14), names);
  write_file(d, "shift_24.cfg", shift_config("shift_24", {2, 4}, 14), names);
  {
    KvConfig c;
    c.comment("alphabets on geometrically growing blocks");
    c.set("type", "shift");
    c.set("label", "shift_blocks");
    std::vector<std::int64_t> ab;
    for (int m : geometric_blocks_alphabet(66)) ab.push_back(m);
    c.set_ints("alphabet_sizes", ab);
    c.set_bool("alphabet_cycle", false);
    c.set_int("truncation", 66);
    c.set_int("estimator.n_max", 63);
    write_file(d, "shift_blocks.cfg", c, names);
  }
  {
    KvConfig c;
    c.comment("middle-third repeller");
    c.set("type", "nifs");
    c.set("label", "nifs_cantor");
    c.set_int("depth", 11);
    c.set("contractions.0.0", format_double(1.0 / 3.0) + ",0");
    c.set("contractions.0.1",
          format_double(1.0 / 3.0) + "," + format_double(2.0 / 3.0));
    write_file(d, "nifs_cantor.cfg", c, names);
  }
  {
    KvConfig c;
    c.comment("alternating 2/3-branch repeller");
    c.set("type", "nifs");
    c.set("label", "nifs_alt23");
    c.set_int("depth", 9);
    c.set("contractions.0.0", "0.25,0");
    c.set("contractions.0.1", "0.25,0.75");
    c.set("contractions.1.0", "0.25,0");
    c.set("contractions.1.1", "0.25,0.375");
    c.set("contractions.1.2", "0.25,0.75");
    write_file(d, "nifs_alt23.cfg", c, names);
  }
  {
    KvConfig c;
    c.set("kind", "zero");
    write_file(d, "potential_zero.cfg", c, names);
  }
  {
    KvConfig c;
    c.set("kind", "symbol_table");
    c.set_doubles("table", std::vector<double>{0.25, -0.15, 0.05, 0.2});
    write_file(d, "potential_symbols.cfg", c, names);
  }
  {
    KvConfig c;
    c.set("kind", "bernoulli");
    c.set("label", "uniform");
    write_file(d, "measure_uniform.cfg", c, names);
  }
  {
    KvConfig c;
    c.set("kind", "bernoulli");
    c.set("label", "p=0.2");
    c.set_doubles("probs.0", std::vector<double>{0.2, 0.8});
    write_file(d, "measure_bernoulli.cfg", c, names);
  }
  return names;
}

}  // namespace nds
