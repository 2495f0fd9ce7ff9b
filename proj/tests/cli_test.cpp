#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "creal/cli.hpp"

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) { return std::string(CREAL_TEST_DATA_DIR) + "/" + name; }

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cr::cli::dispatch(args, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("creal_cli_test_" + name);
}

}  // namespace

TEST_CASE("rat") {
  CHECK(run({"rat", "1/3 + 1/6"}).out == "1/2\n");
  CHECK(run({"rat", "0.15"}).out == "3/20\n");
  CHECK(run({"rat", "7/10", "--cmp", "2/3"}).out == "greater\n");
  const auto bad = run({"rat", "1/0"});
  CHECK(bad.status == 2);
  CHECK(bad.err.find("zero denominator") != std::string::npos);
}

TEST_CASE("crn approx") {
  CHECK(run({"crn", "approx", "--expr", "1/3 + 1/6", "--prec", "10"}).out == "1/2 ± 2^-10\n");
  const auto bisected = run({"crn", "approx", "--expr", "bisect_limit(step@1/3, 0, 1)", "--prec", "4"});
  CHECK(bisected.status == 0);
  // beta(5) = 6: p_6 of the bisection towards 1/3
  CHECK(bisected.out == "21/64 ± 2^-4\n");
  const auto waiting =
      run({"crn", "approx", "--expr", "waiting(" + data("countdown.cm") + ", 2) * 2", "--prec", "10"});
  CHECK(waiting.status == 0);
  CHECK(waiting.out == "255/128 ± 2^-10\n");
  CHECK(run({"crn", "approx", "--expr", "1/3", "--prec", "x"}).status == 2);
}

TEST_CASE("machine run and dovetail") {
  const auto halt = run({"machine", "run", "--prog", data("halt.cm"), "--input", "0", "--budget", "1"});
  CHECK(halt.status == 0);
  CHECK(halt.out == "halted steps=1\n");
  CHECK(run({"machine", "run", "--prog", data("countdown.cm"), "--input", "2", "--budget", "100"}).out ==
        "halted steps=8\n");
  CHECK(run({"machine", "run", "--prog", data("loop.cm"), "--input", "3", "--budget", "1000"}).out ==
        "running budget=1000\n");
  CHECK(run({"machine", "dovetail", "--prog", data("countdown.cm"), "--inputs", "0..3", "--budget", "1000"}).out ==
        "input=0 steps=2\ninput=1 steps=5\ninput=2 steps=8\ninput=3 steps=11\n");
  const auto bad_range = run({"machine", "dovetail", "--prog", data("countdown.cm"), "--inputs", "3-5", "--budget", "9"});
  CHECK(bad_range.status == 2);
  CHECK(bad_range.err.find("--inputs") != std::string::npos);
  CHECK(run({"machine", "run", "--prog", "/nonexistent.cm", "--input", "0", "--budget", "1"}).status == 2);
}

TEST_CASE("waiting approx and reduce") {
  CHECK(run({"waiting", "approx", "--prog", data("countdown.cm"), "--input", "2", "--targets", "geometric",
             "--prec", "20"})
            .out == "255/256 ± 2^-20\n");
  CHECK(run({"reduce", "--prog", data("countdown.cm"), "--input", "2", "--prec", "20"}).out ==
        "halts steps=8\nprobe 255/256 label=1\n");
  CHECK(run({"reduce", "--prog", data("loop.cm"), "--input", "0", "--prec", "10"}).out ==
        "no-halt-within steps=11\nprobe 2047/2048 label=1\n");
  CHECK(run({"reduce", "--prog", data("loop.cm"), "--input", "0", "--prec", "10", "--targets", "harmonic"})
            .status == 2);
}

TEST_CASE("bisect") {
  const auto path = scratch("transcript.tsv");
  const auto result = run({"bisect", "--oracle", "step@1/3", "--lo", "0", "--hi", "1", "--steps", "3",
                           "--transcript", path.string()});
  CHECK(result.status == 0);
  CHECK(result.out == "p=1/4\nq=3/8\nwidth=1/8\n");
  std::ifstream in(path);
  std::stringstream tsv;
  tsv << in.rdbuf();
  CHECK(tsv.str() == "0\t0/1\t1/1\tinit\n1\t0/1\t1/2\tlower\n2\t1/4\t1/2\tupper\n3\t1/4\t3/8\tlower\n");
  std::filesystem::remove(path);

  const auto unseparated = run({"bisect", "--oracle", "step@1/3", "--lo", "1/2", "--hi", "1", "--steps", "3"});
  CHECK(unseparated.status == 1);
  CHECK(unseparated.err.find("not separated") != std::string::npos);
}

TEST_CASE("cover commands") {
  CHECK(run({"cover", "lebesgue", "--cover", data("two.cov")}).out == "lebesgue=1/10\n");
  const auto gap_lebesgue = run({"cover", "lebesgue", "--cover", data("gap.cov")});
  CHECK(gap_lebesgue.status == 1);
  CHECK(gap_lebesgue.out.empty());

  const auto sub = run({"cover", "subcover", "--cover", data("two.cov"), "--modulus", "lebesgue"});
  CHECK(sub.status == 0);
  CHECK(sub.out.starts_with("r=1/10\n"));
  CHECK(sub.out.ends_with("selected 0,1\n"));

  const auto gap = run({"cover", "verify", "--cover", data("gap.cov"), "--selected", "0,1"});
  CHECK(gap.status == 1);
  CHECK(gap.out == "uncovered 0/1\n");
  CHECK(run({"cover", "verify", "--cover", data("two.cov"), "--selected", "0,1"}).out == "covered\n");
  CHECK(run({"cover", "verify", "--cover", data("two.cov"), "--selected", "0,"}).status == 2);

  const auto too_big = run({"cover", "subcover", "--cover", data("two.cov"), "--modulus", "const:1/5"});
  CHECK(too_big.status == 1);
  CHECK(run({"cover", "subcover", "--cover", data("two.cov"), "--modulus", "const:-1/5"}).status == 1);
  CHECK(run({"cover", "subcover", "--cover", data("two.cov"), "--modulus", "sometimes"}).status == 2);
  CHECK(run({"cover", "subcover", "--cover", data("wide.cov"), "--samples", "0,1/3,1"}).out.ends_with("selected 0\n"));
}

TEST_CASE("subcover output feeds verify-cert") {
  const auto cert = scratch("two.cert");
  CHECK(run({"cover", "subcover", "--cover", data("two.cov"), "--out", cert.string()}).status == 0);
  const auto check = run({"cover", "verify-cert", "--cover", data("two.cov"), "--cert", cert.string()});
  CHECK(check.status == 0);
  CHECK(check.out == "covered\n");

  // the certificate does not hold for a different cover
  const auto mismatch = run({"cover", "verify-cert", "--cover", data("wide.cov"), "--cert", cert.string()});
  CHECK(mismatch.status == 1);
  CHECK(mismatch.out.starts_with("invalid: "));
  std::filesystem::remove(cert);
}

TEST_CASE("usage errors") {
  CHECK(run({}).status == 2);
  CHECK(run({"cover"}).status == 2);
  CHECK(run({"cover", "lebesgue", "--cover", data("two.cov"), "--bogus", "1"}).status == 2);
  CHECK(run({"machine", "run", "--prog", data("halt.cm"), "--input", "-1", "--budget", "1"}).status == 2);
  CHECK(run({"machine", "run", "--prog", data("halt.cm"), "--input", "0.5", "--budget", "1"}).status == 2);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"cover", "subcover", "--cover", data("two.cov")};
  CHECK(run(args).out == run(args).out);
}
