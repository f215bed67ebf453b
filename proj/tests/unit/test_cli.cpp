#include <doctest.h>

#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "phasedetect/cli.hpp"
#include "phasedetect/csv.hpp"

using namespace phasedetect;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    FAIL("missing column " << name);
    return 0;
  }
  double number(std::size_t row, const std::string& name) const { return std::stod(rows.at(row).at(column(name))); }
};

Table parse(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  t.header = csv::split_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    t.rows.push_back(csv::split_line(line));
    REQUIRE(t.rows.back().size() == t.header.size());
  }
  return t;
}

}  // namespace

TEST_CASE("csv number formatting") {
  CHECK(csv::format_number(1.0) == "1.0000000000000000e+00");
  CHECK(csv::format_number(-0.0) == "0.0000000000000000e+00");
  CHECK(std::stod(csv::format_number(0.1)) == 0.1);
  CHECK(std::stod(csv::format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(csv::split_line("a,b,,c") == std::vector<std::string>{"a", "b", "", "c"});
}

TEST_CASE("overlap: single photon on a 300-point grid") {
  auto r = run({"overlap", "--family", "fock", "--n", "1", "--delta-max", "3", "--steps", "300"});
  REQUIRE(r.code == 0);
  auto t = parse(r.out);
  REQUIRE(t.rows.size() == 300);
  bool found = false;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (std::abs(t.number(i, "delta") - 1.0) < 1e-12) {
      found = true;
      CHECK(std::abs(t.number(i, "analytic")) < 1e-12);
      CHECK(std::abs(t.number(i, "numeric")) < 1e-8);
    }
    CHECK(t.number(i, "abs_diff") < 1e-8);
  }
  CHECK(found);
}

TEST_CASE("overlap: cat crosses zero near the first overlap zero") {
  auto r = run({"overlap", "--family", "cat", "--alpha", "2", "--delta-max", "1", "--steps", "1000"});
  REQUIRE(r.code == 0);
  auto t = parse(r.out);
  const double zero = std::acos(-std::exp(-8.0)) / 4.0;
  int crossings = 0;
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    double a = t.number(i - 1, "analytic"), b = t.number(i, "analytic");
    if ((a > 0) != (b > 0)) {
      ++crossings;
      if (crossings == 1) {
        CHECK(t.number(i - 1, "delta") <= zero);
        CHECK(t.number(i, "delta") >= zero);
      }
    }
  }
  CHECK(crossings >= 1);
}

TEST_CASE("validation errors exit with 1 and print usage") {
  auto missing = run({"overlap", "--family", "fock"});
  CHECK(missing.code == cli::kValidationError);
  CHECK(missing.err.find("delta-max") != std::string::npos);
  CHECK(missing.out.empty());

  CHECK(run({"evaluate", "--family", "cat", "--eta", "0"}).code == cli::kValidationError);
  CHECK(run({"evaluate", "--family", "cat", "--eta", "1.5"}).code == cli::kValidationError);
  CHECK(run({"figure", "9"}).code == cli::kValidationError);
  CHECK(run({"bogus"}).code == cli::kValidationError);
  CHECK(run({"verify", "--check", "no_such_check"}).code == cli::kValidationError);
}

TEST_CASE("computation errors exit with 2") {
  auto r = run({"evaluate", "--family", "fock", "--n", "2", "--eta", "0.9", "--phi", "1e-3", "--no-oracle"});
  CHECK(r.code == cli::kComputationError);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("help exits with 0") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sweep") != std::string::npos);
}

TEST_CASE("evaluate and optimize") {
  auto r = run({"evaluate", "--family", "fock", "--n", "1", "--eta", "0.98", "--delta", "1.0101525445522108", "--oracle"});
  REQUIRE(r.code == 0);
  auto t = parse(r.out);
  CHECK(std::abs(t.number(0, "p_fp") - 0.02) < 1e-12);
  CHECK(std::abs(t.number(0, "p_fn") - 0.02 / std::exp(1.0)) < 1e-12);
  CHECK(std::abs(t.number(0, "discrepancy")) < 1e-8);

  auto o = run({"optimize", "--family", "cat", "--alpha", "2"});
  REQUIRE(o.code == 0);
  auto ot = parse(o.out);
  CHECK(ot.rows[0][ot.column("source")] == "parity_minimized");
  CHECK(std::abs(ot.number(0, "delta") - 0.371) < 0.005);
}

TEST_CASE("sweep") {
  auto r = run({"sweep", "--family", "cat", "--axis", "alpha", "--from", "1", "--to", "3", "--steps", "5",
                "--eta", "1", "--oracle"});
  REQUIRE(r.code == 0);
  auto t = parse(r.out);
  REQUIRE(t.rows.size() == 5);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.number(i, "p_fp") == 0.0);
    CHECK(t.number(i, "discrepancy") < 1e-6);
  }
  CHECK(r.err.find("max_discrepancy") != std::string::npos);
  CHECK(run({"sweep", "--family", "cat", "--axis", "eta", "--values", "0.9,1.4"}).code == cli::kValidationError);
}

TEST_CASE("figures") {
  SUBCASE("figure 2: the displaced single photon leaves n = 1 empty") {
    auto t = parse(run({"figure", "2"}).out);
    CHECK(t.number(1, "p_initial") == 1.0);
    CHECK(t.number(1, "p_displaced") < 1e-12);
    CHECK(std::abs(t.number(0, "p_displaced") - std::exp(-1.0)) < 1e-12);
  }
  SUBCASE("figure 3 starts at parity 1") {
    auto t = parse(run({"figure", "3"}).out);
    CHECK(t.number(0, "delta") == 0.0);
    CHECK(t.number(0, "parity_alpha_1.5") == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("figure 4 p_even + p_odd = 1") {
    auto t = parse(run({"figure", "4", "--steps", "20"}).out);
    REQUIRE(t.rows.size() == 20);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      CHECK(t.number(i, "p_even") + t.number(i, "p_odd") == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("figure 5: no false positives without loss") {
    auto t = parse(run({"figure", "5"}).out);
    for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(t.number(i, "p_fp_eta_1") == 0.0);
  }
  SUBCASE("figure 6 columns follow --etas") {
    auto t = parse(run({"figure", "--id", "6", "--etas", "0.9,0.5", "--steps", "10"}).out);
    CHECK(t.header == std::vector<std::string>{"alpha", "p_fn_eta_0.9", "p_fn_eta_0.5"});
  }
}

TEST_CASE("output is deterministic") {
  auto a = run({"figure", "3"});
  auto b = run({"figure", "3"});
  CHECK(a.out == b.out);
  auto s1 = run({"sweep", "--family", "cat", "--axis", "eta", "--from", "0.5", "--to", "1", "--steps", "6",
                 "--threads", "1"});
  auto s4 = run({"sweep", "--family", "cat", "--axis", "eta", "--from", "0.5", "--to", "1", "--steps", "6",
                 "--threads", "4"});
  CHECK(s1.out == s4.out);
}

TEST_CASE("verify") {
  SUBCASE("small grid passes quickly") {
    auto start = std::chrono::steady_clock::now();
    auto r = run({"verify", "--grid", "small"});
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(r.code == 0);
    CHECK(seconds < 10.0);
    auto t = parse(r.out);
    for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(t.rows[i][t.column("status")] == "pass");
  }
  SUBCASE("an impossible tolerance reports failures with exit code 3") {
    auto r = run({"verify", "--tolerance", "1e-15", "--check", "fock1_operating_point_kraus"});
    CHECK(r.code == cli::kVerificationFailure);
    auto t = parse(r.out);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][t.column("status")] == "fail");
    CHECK(t.number(0, "max_discrepancy") > 1e-15);
  }
}
