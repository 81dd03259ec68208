#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nds/measure.hpp"
#include "nds/pressure.hpp"
#include "nds/zoo.hpp"

namespace nds {

// Ordered `key = value` store with dotted keys. Comments and blank lines are
// kept verbatim, so parse followed by dump reproduces the input byte for
// byte. Duplicate keys are rejected.
class KvConfig {
 public:
  static KvConfig parse(const std::string& text);
  static KvConfig load(const std::string& path);

  std::string dump() const;
  void save(const std::string& path) const;

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, std::string dflt) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double dflt) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int_or(const std::string& key, std::int64_t dflt) const;
  bool get_bool_or(const std::string& key, bool dflt) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<std::int64_t> get_ints(const std::string& key) const;
  // Entry keys beginning with `prefix`, in file order.
  std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

  void set(const std::string& key, std::string value);
  void set_double(const std::string& key, double value);
  void set_int(const std::string& key, std::int64_t value);
  void set_bool(const std::string& key, bool value);
  void set_doubles(const std::string& key, std::span<const double> values);
  void set_ints(const std::string& key, std::span<const std::int64_t> values);
  void comment(const std::string& text);
  void blank();

 private:
  struct Line {
    std::string raw;
    std::string key;
    std::string value;
    bool is_entry = false;
  };
  std::vector<Line> lines_;
  bool final_newline_ = true;
};

std::string format_double(double v);
double parse_double(const std::string& text, const std::string& where);

struct LoadedSystem {
  std::shared_ptr<NdSystem> system;
  KvConfig config;
  std::string name;
  std::vector<double> net;  // nifs carrier values, empty otherwise
  double net_radius = 0.0;
};

// Builds a system from a config file. Schema (see README): type = shift |
// doubling | nifs plus the type's fields; optional estimator.* overrides.
LoadedSystem load_system(const std::string& path);
PotentialSeq load_potential(const std::string& path);
MeasureRep load_measure(const NdSystem& sys, const std::string& path);

// Estimator settings for `sys`, with defaults overridden by estimator.* keys.
EstimatorConfig estimator_from(const KvConfig& cfg, const NdSystem& sys);

// Writes canonical configs for the zoo instances plus example potential and
// measure files into `dir`. Returns the file names written.
std::vector<std::string> write_zoo_configs(const std::string& dir);

}  // namespace nds
