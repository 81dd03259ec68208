#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nds/config.hpp"

using namespace nds;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(bool(in));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

int run_cli(const std::string& args) {
  std::string cmd =
      std::string(NDPRESS_PATH) + " " + args + " >/dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

const std::string kWork = WORK_DIR;

}  // namespace

TEST_CASE("config text survives a parse/dump round trip byte for byte") {
  std::string text =
      "# demo system\n"
      "\n"
      "  type =  shift \n"
      "label=demo\n"
      "alphabet_sizes = 2, 4\n"
      "# trailing note";
  auto cfg = KvConfig::parse(text);
  CHECK(cfg.dump() == text);
  std::string with_nl = text + "\n";
  CHECK(KvConfig::parse(with_nl).dump() == with_nl);
  CHECK(cfg.get("type") == "shift");
  CHECK(cfg.get("label") == "demo");
  CHECK(cfg.get_ints("alphabet_sizes") == std::vector<std::int64_t>{2, 4});
  CHECK(KvConfig::parse("").dump() == "");
}

TEST_CASE("malformed config lines are rejected with their line number") {
  CHECK_THROWS_AS(KvConfig::parse("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(KvConfig::parse("no equals sign\n"), ConfigError);
  CHECK_THROWS_AS(KvConfig::parse("bad key! = 1\n"), ConfigError);
  try {
    KvConfig::parse("ok = 1\nbroken line\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  auto cfg = KvConfig::parse("n = 2.5\nflag = maybe\n");
  CHECK_THROWS_AS(cfg.get("absent"), ConfigError);
  CHECK_THROWS_AS(cfg.get_int("n"), ConfigError);
  CHECK_THROWS_AS(cfg.get_bool_or("flag", true), ConfigError);
}

TEST_CASE("typed accessors round trip through the text form") {
  KvConfig c;
  c.set_double("x", 0.1);
  c.set_int("n", 42);
  c.set_bool("b", true);
  c.set_doubles("xs", std::vector<double>{1.0, -0.5, 1e-9});
  c.set_ints("ns", std::vector<std::int64_t>{2, 4, 2});
  auto back = KvConfig::parse(c.dump());
  CHECK(back.get_double("x") == 0.1);
  CHECK(back.get_int("n") == 42);
  CHECK(back.get_bool_or("b", false));
  CHECK(back.get_doubles("xs") == std::vector<double>{1.0, -0.5, 1e-9});
  CHECK(back.get_ints("ns") == std::vector<std::int64_t>{2, 4, 2});
  CHECK_THROWS_AS(c.set("x", "again"), ConfigError);
  c.set("contractions.0.0", "0.25,0");
  c.set("contractions.0.1", "0.25,0.75");
  CHECK(c.keys_with_prefix("contractions.") ==
        std::vector<std::string>{"contractions.0.0", "contractions.0.1"});
}

TEST_CASE("doubles print and parse without loss") {
  for (double v : {0.1, 1.0 / 3.0, 1e300, 2.2250738585072014e-308, -17.25,
                   0.0, 0.6931471805599453}) {
    CHECK(parse_double(format_double(v), "t") == v);
  }
  CHECK_THROWS_AS(parse_double("1.5x", "t"), ConfigError);
  CHECK_THROWS_AS(parse_double("", "t"), ConfigError);
}

TEST_CASE("canonical configs load back into their systems") {
  std::string dir = kWork + "/zoo_cfg_test";
  auto names = write_zoo_configs(dir);
  REQUIRE(names.size() == 12);
  for (const auto& n : names) {
    std::string path = dir + "/" + n;
    // files round trip byte for byte through the parser
    CHECK(KvConfig::load(path).dump() == slurp(path));
    if (n.rfind("potential_", 0) == 0 || n.rfind("measure_", 0) == 0) continue;
    auto loaded = load_system(path);
    CHECK(loaded.name + ".cfg" == n);
    CHECK(loaded.system != nullptr);
  }
  auto blocks = load_system(dir + "/shift_blocks.cfg");
  CHECK(estimator_from(blocks.config, *blocks.system).n_max == 63);
  auto cantor = load_system(dir + "/nifs_cantor.cfg");
  CHECK_FALSE(cantor.net.empty());
  CHECK(cantor.net_radius > 0.0);

  auto zero = load_potential(dir + "/potential_zero.cfg");
  CHECK(zero.name == "zero");
  auto table = load_potential(dir + "/potential_symbols.cfg");
  REQUIRE(bool(table.symbol_term));
  CHECK(table.symbol_term(0, 1) == -0.15);

  auto shift = load_system(dir + "/shift_2.cfg");
  auto uni = load_measure(*shift.system, dir + "/measure_uniform.cfg");
  CHECK(uni.kind == MeasureRep::Kind::Bernoulli);
  CHECK(uni.rows[0] == std::vector<double>{0.5, 0.5});
  auto ber = load_measure(*shift.system, dir + "/measure_bernoulli.cfg");
  CHECK(ber.rows[0] == std::vector<double>{0.2, 0.8});
}

TEST_CASE("the cli maps argument and config problems to exit 2") {
  CHECK(run_cli("estimate") == 2);                 // missing --system
  CHECK(run_cli("frobnicate") == 2);               // unknown subcommand
  CHECK(run_cli("verify --suite bogus") == 2);     // not a suite
  std::string bad = kWork + "/bad_system.cfg";
  {
    std::ofstream out(bad);
    out << "type = perpetual_motion\n";
  }
  CHECK(run_cli("estimate --system " + bad) == 2);
  std::string dir = kWork + "/cli_cfg";
  CHECK(run_cli("define --out " + dir) == 0);
  CHECK(run_cli("estimate --system " + dir + "/shift_2.cfg --potential " +
                dir + "/potential_symbols.cfg --quantity bowen-entropy" +
                " --out " + kWork + "/cli_err") == 2);
}

TEST_CASE("define then estimate, sweep, and verify succeed end to end") {
  std::string dir = kWork + "/cli_flow";
  std::string out = kWork + "/cli_flow_out";
  REQUIRE(run_cli("define --out " + dir) == 0);
  REQUIRE(run_cli("estimate --system " + dir + "/shift_2.cfg --out " + out) ==
          0);
  auto lines = read_lines(out + "/estimate_shift_2.csv");
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "instance,quantity,eps,N,n_max,s_star,value,lower,upper,pass,"
        "runtime_ms");
  CHECK(lines[1].rfind("shift_2,bowen-entropy,", 0) == 0);

  REQUIRE(run_cli("sweep --system " + dir + "/shift_24.cfg --out " + out) ==
          0);
  auto sweep = read_lines(out + "/sweep_shift_24.csv");
  CHECK(sweep.size() == 5);  // header + 2 radii x {bowen, packing}

  REQUIRE(run_cli("verify --suite algebra --out " + out) == 0);
  auto verify = read_lines(out + "/verify_algebra.csv");
  CHECK(verify.size() >= 10);
  CHECK(verify[1].find("algebra/") != std::string::npos);
}

TEST_CASE("seeded runs are reproducible apart from wall time") {
  std::string dir = kWork + "/cli_flow";
  REQUIRE(run_cli("define --out " + dir) == 0);
  auto once = [&](const std::string& out) {
    REQUIRE(run_cli("estimate --system " + dir +
                    "/shift_2.cfg --quantity measure-lower --measure " + dir +
                    "/measure_bernoulli.cfg --seed 9 --out " + out) == 0);
    auto lines = read_lines(out + "/estimate_shift_2.csv");
    for (auto& l : lines) l = l.substr(0, l.rfind(','));
    return lines;
  };
  CHECK(once(kWork + "/cli_rep_a") == once(kWork + "/cli_rep_b"));
}
