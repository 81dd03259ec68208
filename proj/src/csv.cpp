#include "nds/csv.hpp"

#include <cstdio>
#include <fstream>

#include "nds/errors.hpp"

namespace nds {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string csv_header() {
  return "instance,quantity,eps,N,n_max,s_star,value,lower,upper,pass,"
         "runtime_ms";
}

std::string csv_format(const CsvRow& r) {
  std::string out = field(r.instance);
  out += ',';
  out += field(r.quantity);
  out += ',';
  out += num(r.eps);
  out += ',';
  out += std::to_string(r.N);
  out += ',';
  out += std::to_string(r.n_max);
  out += ',';
  out += num(r.s_star);
  out += ',';
  out += num(r.value);
  out += ',';
  out += num(r.lower);
  out += ',';
  out += num(r.upper);
  out += ',';
  out += r.pass ? "1" : "0";
  out += ',';
  out += num(r.runtime_ms);
  return out;
}

void csv_write(const std::string& path, const std::vector<CsvRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write CSV file: " + path);
  out << csv_header() << '\n';
  for (const CsvRow& r : rows) out << csv_format(r) << '\n';
}

}  // namespace nds
