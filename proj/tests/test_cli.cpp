// End-to-end checks of the installed binary: every assertion here goes
// through process spawn, argv parsing, and exit-code mapping, not the library.
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CliResult run_cli(const std::string& args) {
  static int invocation = 0;
  const auto dir = std::filesystem::temp_directory_path();
  const auto out_path =
      dir / ("qca_cli_out_" + std::to_string(invocation) + ".txt");
  const auto err_path =
      dir / ("qca_cli_err_" + std::to_string(invocation) + ".txt");
  ++invocation;
  const std::string command = std::string(QCASIM_BINARY) + " " + args + " > " +
                              out_path.string() + " 2> " + err_path.string();
  const int status = std::system(command.c_str());
  CliResult result;
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  result.exit_code = WEXITSTATUS(status);
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return result;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("the binary reports its version and help") {
  const CliResult version = run_cli("--version");
  CHECK(version.exit_code == 0);
  CHECK(contains(version.out, "qcasim 1.0.0"));

  const CliResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(contains(help.out, "curve"));
  CHECK(contains(help.out, "tirr-sweep"));
  CHECK(contains(help.out, "oracle-check"));
}

TEST_CASE("a curve run prints CSV on stdout") {
  const CliResult result = run_cli("curve --n 4 --t-max 8");
  CHECK(result.exit_code == 0);
  const auto lines = split_lines(result.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "n,p,q,phi1,phi2,xi,eta,T,p1");
  CHECK(lines[1].substr(0, 2) == "4,");
}

TEST_CASE("usage errors exit with code two") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("sweep").exit_code == 2);
  CHECK(run_cli("curve --wat 3").exit_code == 2);
}

TEST_CASE("validation failures exit with code two and name the field") {
  const CliResult bad_p = run_cli("fixed-point --n 4 --p 1.5");
  CHECK(bad_p.exit_code == 2);
  CHECK(contains(bad_p.err, "p:"));

  const CliResult degenerate = run_cli("curve --n 4 --p 1 --q 0 --t-max 8");
  CHECK(degenerate.exit_code == 2);
  CHECK(contains(degenerate.err, "1 - p + q"));

  const CliResult too_wide = run_cli("oracle-check --n 10");
  CHECK(too_wide.exit_code == 2);
  CHECK(contains(too_wide.err, "at most 8"));
}

TEST_CASE("results can be redirected to a file with --out") {
  const auto path = std::filesystem::temp_directory_path() / "qca_cli_run.csv";
  const CliResult result =
      run_cli("fixed-point --n 4 --xi 0.25 --out " + path.string());
  CHECK(result.exit_code == 0);
  CHECK(result.out.empty());
  const auto lines = split_lines(slurp(path));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "n,p,q,phi1,phi2,xi,eta,residual");
  std::filesystem::remove(path);
}

TEST_CASE("an unwritable output path exits with code three") {
  const CliResult result =
      run_cli("fixed-point --n 4 --out /no/such/directory/output.csv");
  CHECK(result.exit_code == 3);
  CHECK(contains(result.err, "error:"));
}

TEST_CASE("explicit flags override config file entries") {
  const auto path = std::filesystem::temp_directory_path() / "qca_cli_cfg.cfg";
  {
    std::ofstream out(path);
    out << "# base settings\n"
        << "n = 6\n"
        << "t_max = 100\n";
  }
  const CliResult result =
      run_cli("curve --config " + path.string() + " --t-max 8");
  CHECK(result.exit_code == 0);
  const auto lines = split_lines(result.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[1].substr(0, 2) == "6,");
  CHECK(contains(lines[5], ",8,"));
  std::filesystem::remove(path);

  const CliResult missing = run_cli("curve --config /no/such/file.cfg");
  CHECK(missing.exit_code == 3);
}

TEST_CASE("repeated invocations are byte-identical regardless of job count") {
  const std::string args = "tirr-sweep --n 4,6 --xi 0.3,0.6 --t-max 200";
  const CliResult first = run_cli(args);
  CHECK(first.exit_code == 0);
  const CliResult second = run_cli(args);
  CHECK(second.out == first.out);
  const CliResult parallel = run_cli(args + " --jobs 3");
  CHECK(parallel.exit_code == 0);
  CHECK(parallel.out == first.out);
  REQUIRE(split_lines(first.out).size() == 5);
}
