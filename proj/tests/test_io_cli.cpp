#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "alphaleak/errors.hpp"
#include "alphaleak/io.hpp"

using namespace alphaleak;

#ifndef ALPHALEAK_CLI_PATH
#error "ALPHALEAK_CLI_PATH must point at the command-line binary"
#endif

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "alphaleak-cli-tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& body) {
  const fs::path p = scratch_dir() / name;
  std::ofstream f(p);
  f << body;
  return p;
}

struct RunResult {
  int exit_code;
  std::string out;  // stdout only; stderr goes to a side file
};

RunResult run_cli(const std::string& args) {
  const fs::path errfile = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string(ALPHALEAK_CLI_PATH) + " " + args + " 2>" +
                          errfile.string();
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) {
    out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string read_stderr() {
  std::ifstream f(scratch_dir() / "stderr.txt");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("distribution files load and round-trip") {
  const fs::path p = write_file(
      "dist.json", R"({"pmf": [0.75, 0.25], "labels": ["a", "b"]})");
  const ProbVec d = load_distribution(p.string());
  CHECK(d[0] == 0.75);
  CHECK(d.labels()[1] == "b");

  // Lossless at 15 significant digits.
  const fs::path rt = write_file("rt.json", serialize_distribution(d));
  const ProbVec d2 = load_distribution(rt.string());
  CHECK(d2[0] == d[0]);
  CHECK(d2[1] == d[1]);
  CHECK(d2.labels() == d.labels());

  CHECK_THROWS_WITH_AS(load_distribution("/nonexistent/x.json"),
                       doctest::Contains("InputFile"), InvalidInput);
  const fs::path bad = write_file("bad.json", "{nope");
  CHECK_THROWS_WITH_AS(load_distribution(bad.string()),
                       doctest::Contains("ParseError"), InvalidInput);
  const fs::path neg = write_file("neg.json", R"({"pmf": [1.5, -0.5]})");
  CHECK_THROWS_WITH_AS(load_distribution(neg.string()),
                       doctest::Contains("NegativeMass"), InvalidInput);
}

TEST_CASE("channel files load with uniform default prior") {
  const fs::path p = write_file(
      "chan.json", R"({"transition": [[0.9, 0.1], [0.1, 0.9]]})");
  const ChannelFile cf = load_channel(p.string());
  CHECK(cf.input_pmf_defaulted);
  CHECK(cf.input_pmf[0] == 0.5);
  CHECK(cf.channel.at(0, 0) == 0.9);

  const fs::path q = write_file(
      "chan2.json",
      R"({"transition": [[0.9, 0.1], [0.1, 0.9]], "input_pmf": [0.7, 0.3]})");
  const ChannelFile cf2 = load_channel(q.string());
  CHECK_FALSE(cf2.input_pmf_defaulted);
  CHECK(cf2.input_pmf[0] == 0.7);

  const fs::path ragged = write_file(
      "ragged.json", R"({"transition": [[0.5, 0.5], [1.0]]})");
  CHECK_THROWS_WITH_AS(load_channel(ragged.string()),
                       doctest::Contains("DimensionMismatch"), InvalidInput);
}

TEST_CASE("joint files factor into prior and channel") {
  const fs::path p = write_file(
      "joint.json", R"({"joint": [[0.45, 0.05], [0.05, 0.45]]})");
  const ChannelFile cf = load_joint(p.string());
  CHECK(cf.input_pmf[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cf.channel.at(0, 0) == doctest::Approx(0.9).epsilon(1e-12));

  const fs::path bad = write_file(
      "joint_bad.json", R"({"joint": [[0.9, 0.05], [0.05, 0.45]]})");
  CHECK_THROWS_WITH_AS(load_joint(bad.string()),
                       doctest::Contains("SumOutOfTolerance"), InvalidInput);
}

TEST_CASE("value formatting") {
  CHECK(format_value(0.5) == "0.5");
  CHECK(format_value(std::log(1.6)) == "0.470003629245736");
  CHECK(format_value(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_value(1.18897931921775e-53) == "1.18897931921775e-53");
}

TEST_CASE("cli entropy and tilt") {
  const fs::path dist = write_file("cli_dist.json", R"({"pmf": [0.75, 0.25]})");
  RunResult r = run_cli("entropy " + dist.string() + " --alpha 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "alpha,value\n2,0.470003629245735\n");

  r = run_cli("tilt " + dist.string() + " --alpha 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "x,mass\n0,0.9\n1,0.1\n");

  // Multiple orders, one row each, deterministic order.
  r = run_cli("entropy " + dist.string() + " --alpha 0 --alpha 1 --alpha inf");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, 12) == "alpha,value\n");
  CHECK(r.out.find("0,0.693147180559945\n") != std::string::npos);
  CHECK(r.out.find("inf,0.287682072451781\n") != std::string::npos);
}

TEST_CASE("cli base conversion") {
  const fs::path dist = write_file("cli_dist2.json", R"({"pmf": [0.5, 0.5]})");
  RunResult nats = run_cli("entropy " + dist.string() + " --alpha 1");
  RunResult bits = run_cli("--base bits entropy " + dist.string() +
                           " --alpha 1");
  CHECK(nats.out == "alpha,value\n1,0.693147180559945\n");
  CHECK(bits.out == "alpha,value\n1,1\n");
  // Probabilities are not unit-bearing: tilt output is identical.
  CHECK(run_cli("--base bits tilt " + dist.string() + " --alpha 2").out ==
        run_cli("tilt " + dist.string() + " --alpha 2").out);
}

TEST_CASE("cli json output") {
  const fs::path dist = write_file("cli_dist3.json", R"({"pmf": [0.5, 0.5]})");
  RunResult r = run_cli("--format json entropy " + dist.string() +
                        " --alpha 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "[{\"alpha\":\"2\",\"value\":0.693147180559945}]\n");

  // Infinite values serialize as the string "inf" in both formats.
  const fs::path zero = write_file("cli_zero.json", R"({"pmf": [1.0, 0.0]})");
  const fs::path full = write_file("cli_full.json", R"({"pmf": [0.5, 0.5]})");
  RunResult csv = run_cli("cross-entropy " + full.string() + " " +
                          zero.string() + " --alpha 1");
  CHECK(csv.out == "alpha,value\n1,inf\n");
  RunResult js = run_cli("--format json cross-entropy " + full.string() + " " +
                         zero.string() + " --alpha 1");
  CHECK(js.out.find("\"value\":\"inf\"") != std::string::npos);
}

TEST_CASE("cli channel commands and stderr notice") {
  const fs::path ch = write_file(
      "cli_bsc.json", R"({"transition": [[0.9, 0.1], [0.1, 0.9]]})");
  RunResult r = run_cli("maxleak " + ch.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "value\n0.587786664902119\n");
  CHECK(read_stderr().find("uniform") != std::string::npos);

  r = run_cli("leakage " + ch.string() + " --alpha 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("2,0.693147180559945,0.198450938723838,0.494696") !=
        std::string::npos);

  // Joint files are accepted wherever channels are.
  const fs::path joint = write_file(
      "cli_joint.json", R"({"joint": [[0.45, 0.05], [0.05, 0.45]]})");
  RunResult rj = run_cli("maxleak " + joint.string());
  CHECK(rj.exit_code == 0);
  CHECK(rj.out == "value\n0.587786664902119\n");
}

TEST_CASE("cli sweep and fig1") {
  const fs::path ch = write_file(
      "cli_bsc2.json", R"({"transition": [[0.9, 0.1], [0.1, 0.9]]})");
  RunResult r = run_cli("sweep " + ch.string() +
                        " --alphas 1 2 --measures leakage sibson");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, 20) == "alpha,measure,value\n");
  CHECK(r.out.find("2,leakage,0.494696") != std::string::npos);
  CHECK(r.out.find("2,sibson,0.494696") != std::string::npos);

  RunResult f = run_cli("fig1 --n 20 --p 0.5 --alphas 10");
  CHECK(f.exit_code == 0);
  CHECK(f.out.find("10,10,0.55101042022581") != std::string::npos);

  // Identical invocations are byte-identical.
  CHECK(run_cli("fig1").out == run_cli("fig1").out);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("entropy /nonexistent.json --alpha 2").exit_code == 2);
  CHECK(read_stderr().find("InputFile") != std::string::npos);

  const fs::path neg = write_file("cli_neg.json", R"({"pmf": [1.5, -0.5]})");
  CHECK(run_cli("entropy " + neg.string() + " --alpha 2").exit_code == 2);
  CHECK(read_stderr().find("NegativeMass") != std::string::npos);

  // Unknown flags and missing required options are input errors too.
  CHECK(run_cli("entropy --alpha").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);

  // Budget failures surface as exit 3.
  const std::string cmd = std::string("ALPHALEAK_BUDGET=1 ") +
                          ALPHALEAK_CLI_PATH + " verify >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 3);
}
