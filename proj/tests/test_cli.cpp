// End-to-end checks of the command-line tool: each case launches the real
// binary (path via SPINSIM_BIN) against the shipped fixture.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

std::string bin_path() {
  const char* p = std::getenv("SPINSIM_BIN");
  REQUIRE(p != nullptr);
  return p;
}

std::string fixture_path() {
  const char* p = std::getenv("SPINSIM_FIXTURE");
  REQUIRE(p != nullptr);
  return p;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = bin_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("spinsim_cli_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("hamiltonian listing and dense export") {
  const auto dir = temp_dir("ham");
  const auto res = run("hamiltonian --input " + fixture_path() + " --dense h.csv --out " +
                       dir.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("ZI") != std::string::npos);
  CHECK(res.output.find("XX") != std::string::npos);

  // dense entries match the reference matrix within the input-rounding band
  const auto csv = slurp(dir / "h.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header comment
  double m[4][4];
  for (int r = 0; r < 4; ++r) {
    std::getline(lines, line);
    std::istringstream row(line);
    std::string cell;
    for (int c = 0; c < 4; ++c) {
      std::getline(row, cell, ',');
      m[r][c] = std::stod(cell);
    }
  }
  const double reference[4][4] = {{1062.215, 0, 0, 0},
                                {0, -4970.921, 7.288, 0},
                                {0, 7.288, 4963.633, 0},
                                {0, 0, 0, -1054.927}};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(std::abs(m[r][c] - reference[r][c]) < 10.0);
}

TEST_CASE("thirteen-spin file lists terms without densifying") {
  const auto dir = temp_dir("big");
  std::ostringstream spec;
  spec << "{\"field_mhz\": 400, \"offset_ppm\": 5, \"nuclei\": [";
  for (int i = 0; i < 13; ++i) spec << (i ? "," : "") << "{\"shift_ppm\": " << 1 + i * 0.3 << "}";
  spec << "]}";
  const auto file = dir / "big.json";
  std::ofstream(file) << spec.str();
  const auto res = run("hamiltonian --input " + file.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("hamiltonian terms") != std::string::npos);

  // asking for the dense form hits the resource cap
  const auto dense = run("hamiltonian --input " + file.string() + " --dense h.csv --out " +
                         dir.string());
  CHECK(dense.exit_code == 4);
}

TEST_CASE("malformed input names the offending field and exits 2") {
  const auto dir = temp_dir("bad");
  const auto file = dir / "bad.json";
  std::ofstream(file) << R"({"field_mhz": 400, "offset_ppm": 0,
    "nuclei": [{"shift_ppm": 1}, {"shift_ppm": 2}],
    "couplings": [{"i": 1, "j": 5, "j_hz": 1.0}]})";
  const auto res = run("eig --input " + file.string() + " --backend exact");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("couplings[1]") != std::string::npos);
}

TEST_CASE("exact backend prints the oracle eigenvalues") {
  const auto res = run("eig --input " + fixture_path() + " --backend exact");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("-4979.93") != std::string::npos);
  CHECK(res.output.find("4972.64") != std::string::npos);
}

TEST_CASE("same seed and config give byte-identical CSVs") {
  const auto dir_a = temp_dir("rep_a");
  const auto dir_b = temp_dir("rep_b");
  const std::string args = "spectrum --input " + fixture_path() +
                           " --d 512 --sw 2048 --seed 42 --out ";
  CHECK(run(args + dir_a.string()).exit_code == 0);
  CHECK(run(args + dir_b.string()).exit_code == 0);
  for (const char* name : {"fid.csv", "spectrum.csv", "peaks.csv"})
    CHECK(slurp(dir_a / name) == slurp(dir_b / name));
}

TEST_CASE("coarse spectrum smoke test") {
  const auto dir = temp_dir("coarse");
  const auto res = run("spectrum --input " + fixture_path() +
                       " --d 8 --sw 64 --seed 1 --out " + dir.string());
  CHECK(res.exit_code == 0);
  const auto csv = slurp(dir / "spectrum.csv");
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 10);  // header comment + column row + 8 bins
}

TEST_CASE("qpe backend reports phases and verification flags") {
  const auto res = run("eig --input " + fixture_path() +
                       " --backend qpe --ancillas 8 --trotter 5 --seed 7 --states 4 "
                       "--max-attempts 6");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("raw_bin") != std::string::npos);
  CHECK(res.output.find("yes") != std::string::npos);
}
