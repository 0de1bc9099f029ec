#include "doctest.h"

#include "fockeig/f1.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

using fockeig::Complex;
using nlohmann::json;

namespace {

int run(const std::string& args, const std::string& out = "cli_stdout.txt") {
  const std::string cmd = std::string("\"") + FOCKEIG_CLI + "\" " + args + " > " + out + " 2> cli_stderr.txt";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Complex coeff(const json& doc, std::size_t i) {
  const auto& c = doc.at("coeffs").at(i);
  return {c[0].get<double>(), c[1].get<double>()};
}

std::vector<std::vector<double>> read_csv(const std::string& path, std::string& header) {
  std::istringstream in(slurp(path));
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("state writes the gauged coefficient table") {
  REQUIRE(run("state --model f1 --beta-re 0.04 --lambda-re 0.7 --dim 256") == 0);
  const auto doc = json::parse(slurp("cli_stdout.txt"));
  CHECK(doc.at("dim") == 256);
  CHECK(doc.at("modes") == 1);
  CHECK(coeff(doc, 0) == Complex(1.0));
  CHECK(std::abs(coeff(doc, 2) - 0.7 / std::sqrt(2.0)) < 1e-14);
  CHECK(doc.at("metadata").at("interior_residual").get<double>() < 1e-8);
  CHECK(doc.at("metadata").at("truncation").at("guard") == 16);
}

TEST_CASE("state at beta = lambda = 0 is the vacuum") {
  REQUIRE(run("state --model f1 --beta-re 0 --lambda-re 0") == 0);
  const auto doc = json::parse(slurp("cli_stdout.txt"));
  CHECK(coeff(doc, 0) == Complex(1.0));
  for (std::size_t i = 1; i < doc.at("coeffs").size(); ++i) CHECK(coeff(doc, i) == Complex(0.0));
}

TEST_CASE("two-mode state stays on its family") {
  REQUIRE(run("state --model f2 --beta-re 0.04 --lambda-re 0.7 --family 3:0 --dim 16 --format csv") == 0);
  std::string header;
  const auto rows = read_csv("cli_stdout.txt", header);
  CHECK(header == "n_a,n_b,re,im");
  CHECK(rows.size() == 256);
  for (const auto& r : rows) {
    if (r[0] - r[1] != 3) CHECK((r[2] == 0.0 && r[3] == 0.0));
  }
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("state --model f1 --beta-re abc") == 2);
  CHECK(run("state --model f3") == 2);
  CHECK(run("state --model f2 --family 1:2") == 2);
  CHECK(run("state --model f2 --family zero") == 2);
  CHECK(run("state --dim 4") == 2);
  CHECK(run("qfunc --model f1 --grid 1:2") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("") == 2);
}

TEST_CASE("qfunc on a single point and on a grid") {
  REQUIRE(run("qfunc --model f1 --beta-re 0.04 --lambda-re 0.7 --grid 0:0:1") == 0);
  std::string header;
  auto rows = read_csv("cli_stdout.txt", header);
  CHECK(header == "alpha_re,alpha_im,q");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][2] == doctest::Approx(1.0).epsilon(1e-15));

  REQUIRE(run("qfunc --model f1 --beta-re 0.04 --lambda-re 0.7 --grid -2:2:11") == 0);
  rows = read_csv("cli_stdout.txt", header);
  CHECK(rows.size() == 121);
  for (const auto& r : rows) CHECK(std::isfinite(r[2]));
  CHECK(rows[0][0] == -2.0);
  CHECK(rows[1][1] == doctest::Approx(-1.6));

  REQUIRE(run("qfunc --model f2 --beta-re 0.04 --lambda-re 0.7 --family 0:1 --delta-im 0.3 --grid -1:1:3") == 0);
  rows = read_csv("cli_stdout.txt", header);
  CHECK(header == "gamma_re,gamma_im,delta_re,delta_im,q");
  CHECK(rows.size() == 9);
}

TEST_CASE("closed-form qfunc refuses beta = 0 and points to the series route") {
  CHECK(run("qfunc --model f1 --beta-re 0 --lambda-re 0.7 --grid -1:1:3") == 2);
  CHECK(slurp("cli_stderr.txt").find("--method series") != std::string::npos);
  CHECK(run("qfunc --model f1 --beta-re 0 --lambda-re 0.7 --grid -1:1:3 --method series") == 0);
}

TEST_CASE("overlap closed form and series route agree") {
  const std::string base = "overlap --model f1 --beta-re 0.04 --beta-im 0.02 --lambda-re 0.7 ";
  for (const std::string kind : {"--kind coherent --alpha-re 0.8 --alpha-im 0.3", "--kind squeezed --mu-re 0.5",
                                 "--kind number --n 10"}) {
    REQUIRE(run(base + kind) == 0);
    const auto closed = json::parse(slurp("cli_stdout.txt"));
    REQUIRE(run(base + kind + " --method series") == 0);
    const auto series = json::parse(slurp("cli_stdout.txt"));
    const Complex a(closed["value"][0], closed["value"][1]), b(series["value"][0], series["value"][1]);
    CHECK(std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(a)));
    CHECK(closed.at("valid") == true);
  }
  const std::string base2 = "overlap --model f2 --beta-re 0.04 --lambda-re 0.7 --family 0:2 ";
  for (const std::string kind : {"--kind coherent --gamma-re 0.5 --delta-im 0.4", "--kind caves-schumaker --mu-re 0.5",
                                 "--kind number --n 3"}) {
    REQUIRE(run(base2 + kind) == 0);
    const auto closed = json::parse(slurp("cli_stdout.txt"));
    REQUIRE(run(base2 + kind + " --method series") == 0);
    const auto series = json::parse(slurp("cli_stdout.txt"));
    const Complex a(closed["value"][0], closed["value"][1]), b(series["value"][0], series["value"][1]);
    CHECK(std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(a)));
  }
  CHECK(run(base2 + "--kind squeezed") == 2);
}

TEST_CASE("wavefunction ratios") {
  REQUIRE(run("wavefunction --beta-re 0.04 --lambda-re 0.7 --grid -1:1:5 --x0 0.5") == 0);
  std::string header;
  const auto rows = read_csv("cli_stdout.txt", header);
  CHECK(header == "x,ratio_re,ratio_im");
  REQUIRE(rows.size() == 5);
  const fockeig::f1::F1Problem prob{0.04, 0.7, 1.0, 0.0, fockeig::TruncationSpec(256, 16)};
  const Complex expected = fockeig::f1::f1_wavefunction(prob, 1.0, fockeig::f1::Parity::even) /
                           fockeig::f1::f1_wavefunction(prob, 0.5, fockeig::f1::Parity::even);
  CHECK(rows[4][1] == expected.real());
  CHECK(rows[4][2] == expected.imag());
  // even state: symmetric in x
  CHECK(rows[0][1] == doctest::Approx(rows[4][1]).epsilon(1e-14));
  CHECK(run("wavefunction --model f2 --beta-re 0.04 --grid -1:1:5") == 2);
  CHECK(run("wavefunction --beta-re -1 --grid -1:1:5") == 2);
}

TEST_CASE("verify exit codes") {
  CHECK(run("verify --expect-fail") == 0);
  CHECK(slurp("cli_stdout.txt").find("all checks passed") != std::string::npos);
  CHECK(run("verify --dim 8 --out cli_small_report.json") == 1);
  const auto report = json::parse(slurp("cli_small_report.json"));
  CHECK(report.at("all_pass") == false);
}
