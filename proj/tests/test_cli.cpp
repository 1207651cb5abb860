#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "tropcert/cyclic.hpp"
#include "tropcert/mixed_volume.hpp"
#include "tropcert/polynomial.hpp"

using namespace tropcert;

namespace {

const std::string kBin = CLI_BIN;
const std::string kData = DATA_DIR;

int run_cmd(const std::string& args, const std::string& out_file = "") {
  std::string cmd = kBin + " " + args;
  if (!out_file.empty()) cmd += " > " + out_file;
  cmd += " 2> /dev/null";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("json reports are byte identical across runs") {
  REQUIRE(run_cmd("certify " + kData + "/cyclic4.pol --format json", "cli_a.json") == 0);
  REQUIRE(run_cmd("certify " + kData + "/cyclic4.pol --format json", "cli_b.json") == 0);
  auto a = slurp("cli_a.json");
  CHECK(!a.empty());
  CHECK(a == slurp("cli_b.json"));

  spit("cli_sq.pol", "x1*x2 + 2*x1 + 3;\n2*x1*x2 - x2 + 1;\n");
  REQUIRE(run_cmd("solve cli_sq.pol --format json", "cli_s1.json") == 0);
  REQUIRE(run_cmd("solve cli_sq.pol --format json", "cli_s2.json") == 0);
  CHECK(slurp("cli_s1.json") == slurp("cli_s2.json"));
}

TEST_CASE("exit codes separate input errors from computation failures") {
  CHECK(run_cmd("mixedvol empty-input") == 2);
  CHECK(run_cmd("certify " + kData + "/cyclic4.pol --bogus") == 2);

  spit("cli_wide.pol", "x1 + x2 + x3 - 1;\n");
  CHECK(run_cmd("certify cli_wide.pol") == 2);
  CHECK(run_cmd("solve cli_wide.pol") == 2);

  spit("cli_bad.json", "{ not json");
  CHECK(run_cmd("verify cli_sq.pol cli_bad.json") == 2);

  spit("cli_huge.pol", "x1^101 - 1;\nx2^101 - 1;\n");
  CHECK(run_cmd("solve cli_huge.pol") == 3);
}

TEST_CASE("certificates round trip through verify and degree") {
  REQUIRE(run_cmd("certify " + kData + "/binomial3.pol --format json", "cli_b3.json") == 0);
  auto j = nlohmann::json::parse(slurp("cli_b3.json"));
  CHECK(j["total_degree"] == 8);

  REQUIRE(run_cmd("verify " + kData + "/binomial3.pol cli_b3.json", "cli_v.txt") == 0);
  CHECK(contains(slurp("cli_v.txt"), "exact-zero"));

  REQUIRE(run_cmd("degree " + kData + "/binomial3.pol cli_b3.json", "cli_d.txt") == 0);
  auto d = slurp("cli_d.txt");
  CHECK(contains(d, "agree"));
  CHECK(contains(d, "total degree 8"));
}

TEST_CASE("tropism listing groups orbits") {
  REQUIRE(run_cmd("tropisms " + kData + "/cyclic4.pol --orbits cyclic", "cli_t.txt") == 0);
  auto t = slurp("cli_t.txt");
  CHECK(contains(t, "(1, -1, 1, -1)"));
  CHECK(contains(t, "1 tropism in 1 orbit"));

  // explicit cycles spell out the same group
  REQUIRE(run_cmd("tropisms " + kData + "/cyclic4.pol --orbits '(1 2 3 4)'", "cli_t2.txt") == 0);
  CHECK(contains(slurp("cli_t2.txt"), "1 tropism in 1 orbit"));
}

TEST_CASE("mixed volume agrees with the library") {
  auto s = cyclic_system(4);
  std::vector<std::vector<IntVector>> supports;
  for (const auto& p : s.polys) supports.push_back(support(p));
  Int mv = mixed_volume(supports);

  REQUIRE(run_cmd("mixedvol " + kData + "/cyclic4.pol", "cli_mv.txt") == 0);
  CHECK(contains(slurp("cli_mv.txt"), "mixed volume " + mv.get_str()));

  REQUIRE(run_cmd("mixedvol " + kData + "/cyclic4.pol --tau", "cli_tau.txt") == 0);
  CHECK(contains(slurp("cli_tau.txt"), "(1, -1, 1, -1)"));
}

TEST_CASE("solve tallies endpoints") {
  spit("cli_sq.pol", "x1*x2 + 2*x1 + 3;\n2*x1*x2 - x2 + 1;\n");
  REQUIRE(run_cmd("solve cli_sq.pol --format json", "cli_s.json") == 0);
  auto j = nlohmann::json::parse(slurp("cli_s.json"));
  CHECK(j["finite"] == 2);
  CHECK(j["at_infinity"] == 2);
  CHECK(j["failures"] == 0);
  CHECK(j["roots"].size() == 2);
}
