#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "eismock/lfun.hpp"
#include "eismock/report.hpp"
#include "test_util.hpp"

using namespace eismock;
using testutil::close;
using testutil::tol;

namespace {
struct Init {
  Init() { testutil::init_precision(); }
} init_once;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("EISMOCK_BIN");
  std::string cmd =
      std::string(bin ? bin : "build/eismock") + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buffer[4096];
  size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0)
    out.append(buffer, got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}
}  // namespace

TEST_CASE("character labels parse and reject") {
  CHECK(parse_character_label("trivial:12").modulus() == 12);
  CHECK(parse_character_label("trivial:12").is_trivial());
  auto chi = parse_character_label("kronecker:-8");
  CHECK(chi.modulus() == 8);
  CHECK(chi.is_real());
  CHECK(chi.is_odd());
  auto json_chi =
      parse_character_label(R"({"modulus": 5, "exponents": [2]})");
  CHECK(json_chi.is_real());
  CHECK(json_chi.value(2).as_int() == -1);
  // the canonical label round-trips through the parser
  CHECK(parse_character_label(json_chi.label()) == json_chi);
  CHECK_THROWS_AS(parse_character_label("nonsense"), std::domain_error);
  CHECK_THROWS_AS(parse_character_label("trivial:abc"), std::domain_error);
  CHECK_THROWS_AS(parse_character_label("{\"modulus\": 5}"),
                  std::domain_error);
  CHECK_THROWS_AS(
      parse_character_label(
          R"({"modulus": 5, "exponents": [2], "conductor": 3})"),
      std::domain_error);
}

TEST_CASE("precision configuration defaults and validation") {
  auto cfg = make_precision_config(128, 64, "", "", 9);
  CHECK(cfg.bits == 128);
  CHECK(cfg.n_max == 64);
  CHECK(cfg.seed == 9);
  CHECK(!cfg.tol_given);
  CHECK(close(cfg.tol, pow(Real(2), Real(-128) / 3), tol(120)));
  CHECK(cfg.y_min == Real(1) / 2);
  auto tight = make_precision_config(128, 8, "1e-25", "0.75", 0);
  CHECK(tight.tol_given);
  CHECK(close(tight.tol, pow(Real(10), -25), tol(100)));
  CHECK(tight.y_min == Real(3) / 4);
  CHECK_THROWS_AS(make_precision_config(32, 4, "", "", 0), std::domain_error);
  CHECK_THROWS_AS(make_precision_config(128, 0, "", "", 0), std::domain_error);
  CHECK_THROWS_AS(make_precision_config(128, 4, "-1", "", 0),
                  std::domain_error);
  CHECK_THROWS_AS(make_precision_config(128, 4, "abc", "", 0),
                  std::domain_error);
  CHECK_THROWS_AS(make_precision_config(128, 4, "", "0", 0),
                  std::domain_error);
}

TEST_CASE("sample points are deterministic and in range") {
  Real y_min = Real(1) / 2;
  auto a = sample_points(6, y_min, 42);
  auto b = sample_points(6, y_min, 42);
  auto c = sample_points(6, y_min, 43);
  REQUIRE(a.size() == 6);
  bool identical = true, shifted = false;
  for (size_t i = 0; i < a.size(); ++i) {
    identical = identical && a[i].re == b[i].re && a[i].im == b[i].im;
    shifted = shifted || a[i].re != c[i].re;
    CHECK(abs(a[i].re) <= Real(1) / 2);
    CHECK(a[i].im >= y_min + Real(3) / 10);
    CHECK(a[i].im <= y_min + Real(3) / 2);
  }
  CHECK(identical);
  CHECK(shifted);
}

TEST_CASE("report serialization shapes") {
  ReportTable table;
  table.columns = {"n", "text", "flag"};
  std::ostringstream empty_csv, empty_json;
  write_report(empty_csv, table, ReportFormat::csv);
  CHECK(empty_csv.str() == "n,text,flag\n");
  write_report(empty_json, table, ReportFormat::ndjson);
  CHECK(empty_json.str().empty());

  table.add_row({int64_t(1), "plain", true});
  table.add_row({int64_t(2), "comma, \"quote\"", false});
  CHECK_THROWS_AS(table.add_row({int64_t(3)}), std::logic_error);

  std::ostringstream csv;
  write_report(csv, table, ReportFormat::csv);
  CHECK(csv.str() ==
        "n,text,flag\n"
        "1,plain,true\n"
        "2,\"comma, \"\"quote\"\"\",false\n");

  std::ostringstream ndjson;
  write_report(ndjson, table, ReportFormat::ndjson);
  auto rows = lines_of(ndjson.str());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == R"({"n":1,"text":"plain","flag":true})");
  auto parsed = nlohmann::json::parse(rows[1]);
  CHECK(parsed["n"] == 2);
  CHECK(parsed["flag"] == false);

  CHECK(cell_real(Real(1) / 2).get<std::string>().substr(0, 6) == "5.0000");
  CHECK_THROWS_AS(parse_report_format("xml"), std::domain_error);
}

TEST_CASE("binary: coefficient stream carries the exact constant term") {
  auto result = run_cli("mock --k 4 --n-max 2 --format json");
  CHECK(result.exit_code == 0);
  auto rows = lines_of(result.out);
  REQUIRE(rows.size() == 3);
  auto first = nlohmann::json::parse(rows[0]);
  CHECK(first["n"] == 0);
  // byte-for-byte the same rendering as an in-process computation at the
  // same working precision
  Real expect = -pi() * zeta_value(3) / 12;
  CHECK(first["re"].get<std::string>() == decimal_string(expect));
  CHECK(first["im"].get<std::string>() == decimal_string(Real(0)));
}

TEST_CASE("binary: exit codes") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("eisenstein --k 4 --n-max 2").exit_code == 0);
  CHECK(run_cli("bogus").exit_code == 2);
  CHECK(run_cli("mock --k 5").exit_code == 2);           // parity violation
  CHECK(run_cli("mock --psi nonsense").exit_code == 2);  // unknown label
  CHECK(run_cli("hecke -D -12").exit_code == 2);  // non-fundamental
  CHECK(run_cli("eisenstein --bits 16").exit_code == 2);
  CHECK(run_cli("theta --k 5 --n-max 4").exit_code == 2);
  // a failing check exits 1 but still emits the report
  auto failing = run_cli(
      "verify modularity --k 4 --points 3 --tol 1e-60 --format csv");
  CHECK(failing.exit_code == 1);
  CHECK(failing.out.find("false") != std::string::npos);
}

TEST_CASE("binary: determinism and seed sensitivity") {
  std::string args =
      "verify shadow --k 3 --psi kronecker:-4 --points 2 --seed 7";
  auto first = run_cli(args);
  auto second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(!first.out.empty());
  auto other_seed = run_cli(
      "verify shadow --k 3 --psi kronecker:-4 --points 2 --seed 8");
  CHECK(other_seed.exit_code == 0);
  CHECK(other_seed.out != first.out);
}

TEST_CASE("binary: hecke comparison table") {
  auto result = run_cli("hecke -D -8 --n-max 10 --compare --format csv");
  CHECK(result.exit_code == 0);
  auto rows = lines_of(result.out);
  REQUIRE(rows.size() == 12);  // header + constant row + n = 1..10
  CHECK(rows[0] == "n,R,Rplus_def,Rplus_prop,equal");
  for (size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].substr(rows[i].size() - 5) == ",true");
}

TEST_CASE("binary: theta audit separates the two scalings") {
  auto four = run_cli("theta --k 4 --audit --points 3 --format csv");
  CHECK(four.exit_code == 0);
  auto rows = lines_of(four.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].find("closed-formula scaling") != std::string::npos);
  CHECK(rows[1].find(",true,") != std::string::npos);
  CHECK(rows[2].find("as-printed table") != std::string::npos);
  CHECK(rows[2].find(",false,") != std::string::npos);
  CHECK(rows[2].find(",5.0000") != std::string::npos);  // ratio one half

  auto six = run_cli("theta --k 6 --audit --points 3 --format csv");
  CHECK(six.exit_code == 0);
  auto six_rows = lines_of(six.out);
  REQUIRE(six_rows.size() == 3);
  CHECK(six_rows[2].find(",true,") != std::string::npos);
  CHECK(six_rows[2].find(",1.0000") != std::string::npos);  // same scaling
}
