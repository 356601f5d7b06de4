// Golden runs of the installed command-line binary: output values and the
// exit-code contract (0 clean, 1 violations, 2 usage errors).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(REPI_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) res.out.append(buf.data(), n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

TEST_CASE("entropy subcommand prints the closed-form value") {
  const auto res = run("entropy --family gaussian --sigma 1 --p 2");
  CHECK(res.exit_code == 0);
  CHECK(res.out == "1.26551\n");
}

TEST_CASE("entropy power and sup order") {
  auto res = run("entropy --family gaussian --sigma 1 --p 1 --power");
  CHECK(res.exit_code == 0);
  CHECK(res.out.rfind("17.079", 0) == 0);
  res = run("entropy --family uniform --lo 0 --hi 2 --p inf");
  CHECK(res.exit_code == 0);
  CHECK(res.out.rfind("0.693147", 0) == 0);
}

TEST_CASE("convolve subcommand reports the summed variance") {
  const auto res = run(
      "convolve --x-family gaussian --x-variance 1 "
      "--y-family gaussian --y-variance 2 --n 4096");
  CHECK(res.exit_code == 0);
  const auto pos = res.out.find("variance ");
  REQUIRE(pos != std::string::npos);
  const double var = std::strtod(res.out.c_str() + pos + 9, nullptr);
  CHECK(var == doctest::Approx(3.0).epsilon(1e-4));
}

TEST_CASE("young-constant and lemma-search print certified values") {
  auto res = run("young-constant --p 2 --q 1.3333333333333333 --r 1.3333333333333333");
  CHECK(res.exit_code == 0);
  CHECK(res.out.rfind("0.7698", 0) == 0);

  res = run("lemma-search --a 0.25 --b 0.25 --p 2");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("certified yes") != std::string::npos);
}

TEST_CASE("thermo-check agrees across both routes") {
  const auto res = run("thermo-check --t-ratio 2 --n 129");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("kT0 0.159154") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("entropy --family gaussian --bogus-flag 1").exit_code == 2);
  CHECK(run("sweep --config /nonexistent/path.json").exit_code == 2);
  CHECK(run("young-constant --p 2 --q 2 --r 2").exit_code == 2);
  CHECK(run("").exit_code == 2);
}

TEST_CASE("sweep subcommand runs a config file end to end") {
  const std::string cfg_path = "/tmp/repi_cli_test_config.json";
  FILE* f = fopen(cfg_path.c_str(), "w");
  REQUIRE(f != nullptr);
  fputs(R"({
    "experiment": "classical_weighted",
    "seed": 3,
    "families": [{"family":"gaussian","variance":1}],
    "p_grid": [2.0],
    "t_grid": [0.5],
    "n_grid": [1024]
  })",
        f);
  fclose(f);
  const auto res = run("sweep --config " + cfg_path + " --csv -");
  CHECK(res.exit_code == 0);
  CHECK(res.out.rfind("experiment,", 0) == 0);
  CHECK(res.out.find("classical_weighted,0,2,") != std::string::npos);
  std::remove(cfg_path.c_str());
}

TEST_CASE("pinf-search exhibits the sup-order breakdown without failing") {
  const auto res = run("pinf-search --mode alpha_one --csv -");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("pinf_search") != std::string::npos);
}
