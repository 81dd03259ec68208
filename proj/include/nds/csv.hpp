#pragma once

#include <string>
#include <vector>

namespace nds {

// One output row of the CLI; every subcommand writes the same columns.
struct CsvRow {
  std::string instance;
  std::string quantity;
  double eps = 0.0;
  int N = 0;
  int n_max = 0;
  double s_star = 0.0;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
};

std::string csv_header();
std::string csv_format(const CsvRow& row);
void csv_write(const std::string& path, const std::vector<CsvRow>& rows);

}  // namespace nds
