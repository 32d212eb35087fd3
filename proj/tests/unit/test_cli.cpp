#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hsl/cli.hpp"
#include "hsl/errors.hpp"
#include "hsl/io.hpp"

using namespace hsl;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result hsl_run(std::vector<std::string> args) {
  args.insert(args.begin(), "hsl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hsl_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config(const std::string& name) { return std::string(HSL_SOURCE_DIR) + "/configs/" + name; }

}  // namespace

TEST_CASE("kernel JSON round trip") {
  const std::vector<KernelSpec> ks{
      KernelSpec::cesaro({2, 1}),
      KernelSpec::power_cut({-2, 0.5}, 0.5, INFINITY),
      KernelSpec::sampled({1, 2, 3}, {0.0, {1, -1}, 0.25}),
      KernelSpec::atomic({{1.0, 1.0}, {{0, 2}, 3.5}}),
      KernelSpec::truncated(KernelSpec::cesaro(1.0), 0.1),
  };
  for (const auto& k : ks) {
    const json j = kernel_to_json(k);
    CHECK(kernel_to_json(kernel_from_json(j)) == j);
    CHECK(kernel_from_json(json::parse(dump_json(j))).describe() == k.describe());
  }
  CHECK(kernel_from_json(json::parse(R"({"variant":"powercut","exponent":0,"lo":1,"hi":"inf"})")).log_support().second ==
        INFINITY);
  CHECK(kernel_from_json(json::parse(R"({"variant":"cesaro","nu":"2+1i"})")).describe() ==
        KernelSpec::cesaro({2, 1}).describe());

  for (const char* bad : {R"({"variant":"nope"})", R"({"variant":"cesaro"})", R"({"variant":"atomic","atoms":[[1,0]]})",
                          R"([1,2])"}) {
    try {
      kernel_from_json(json::parse(bad));
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConfigError);
    }
  }
}

TEST_CASE("complex literals") {
  CHECK(parse_complex("2") == cplx(2, 0));
  CHECK(parse_complex("-1.5") == cplx(-1.5, 0));
  CHECK(parse_complex("3i") == cplx(0, 3));
  CHECK(parse_complex("2+1i") == cplx(2, 1));
  CHECK(parse_complex("2-0.5i") == cplx(2, -0.5));
  CHECK(parse_complex("1e-3+2e1i") == cplx(1e-3, 20));
  CHECK_THROWS_AS(parse_complex("two"), Error);
  CHECK_THROWS_AS(parse_complex("1+i+"), Error);
}

TEST_CASE("JSON writer prints 17 significant digits and sorted keys") {
  const json j = {{"b", 0.1}, {"a", {1, 2.5}}, {"c", NAN}, {"d", true}};
  const std::string s = dump_json(j);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"a\"") < s.find("\"b\""));
  CHECK(s.find("null") != std::string::npos);
  CHECK(json::parse(s)["a"][1] == 2.5);
}

TEST_CASE("subcommands write their artifacts") {
  SECTION("symbol of the identity atom") {
    const auto dir = scratch("symbol");
    const auto r = hsl_run({"symbol", "--config", config("identity.json"), "--xi-count", "9", "--out", dir.string()});
    REQUIRE(r.code == 0);
    std::istringstream csv(slurp(dir / "symbol.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "xi,re,im,err");
    int rows = 0;
    while (std::getline(csv, line)) {
      ++rows;
      CHECK(line.substr(line.find(',')) == ",1,0,0");
    }
    CHECK(rows == 9);
  }
  SECTION("spectrum of the shipped Cesaro config") {
    const auto dir = scratch("spectrum");
    const auto r = hsl_run({"spectrum", "--config", config("cesaro.json"), "--svg", "--out", dir.string()});
    CHECK(r.code == 0);
    const json rep = json::parse(slurp(dir / "spectrum.json"));
    CHECK(rep["pass"] == true);
    CHECK(rep["hausdorff_distance"].get<double>() < 1e-4);
    CHECK(slurp(dir / "spectrum.svg").find("<svg") != std::string::npos);
  }
  SECTION("cesaro and norm") {
    const auto dir = scratch("cesaro");
    CHECK(hsl_run({"cesaro", "--nu", "1", "--out", dir.string()}).code == 0);
    CHECK(json::parse(slurp(dir / "cesaro.json"))["pass"] == true);
    CHECK(hsl_run({"norm", "--cesaro", "1", "--out", dir.string()}).code == 0);
    const json n = json::parse(slurp(dir / "norm.json"));
    CHECK(std::abs(n["lower_norm_bound"].get<double>() - 2.0) < 1e-9);
    CHECK(std::abs(n["upper_norm_bound"].get<double>() - 2.0) < 1e-9);
  }
  SECTION("apply and residuals") {
    const auto dir = scratch("apply");
    REQUIRE(hsl_run({"apply", "--cesaro", "1", "--epsilon", "0.5", "--x-max", "10", "--x-count", "5", "--out",
                     dir.string()})
                .code == 0);
    const std::string csv = slurp(dir / "apply.csv");
    CHECK(csv.rfind("x,re,im\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);

    std::ofstream(dir / "sweep.json") << R"({"kernel":{"variant":"cesaro","nu":1},"epsilons":[0.1,0.01],"xis":[3]})";
    REQUIRE(hsl_run({"residuals", "--config", (dir / "sweep.json").string(), "--out", dir.string()}).code == 0);
    const std::string res = slurp(dir / "residuals.csv");
    CHECK(res.rfind("epsilon,xi,residual,norm\n", 0) == 0);
    CHECK(std::count(res.begin(), res.end(), '\n') == 3);
  }
}

TEST_CASE("exit codes") {
  const auto dir = scratch("codes");
  const auto on = hsl_run({"resolvent", "--cesaro", "1", "--lambda", "2+0i", "--out", dir.string()});
  CHECK(on.code == 1);
  CHECK(on.err.find("LambdaOnSpectrum") != std::string::npos);

  CHECK(hsl_run({"--help"}).code == 0);
  CHECK(hsl_run({"bogus"}).code == 1);
  CHECK(hsl_run({"spectrum", "--config", "/nonexistent.json"}).code == 1);
  CHECK(hsl_run({"spectrum", "--cesaro", "0.5"}).code == 1);  // unbounded at p = 2, a = 0
  std::ofstream(dir / "bad.json") << R"({"kernel":{"variant":"cesaro","nu":1},"space":{"p":"two"}})";
  const auto bad = hsl_run({"symbol", "--config", (dir / "bad.json").string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("ConfigError") != std::string::npos);

  // A verification failure: an impossible tolerance.
  CHECK(hsl_run({"cesaro", "--nu", "1", "--tol", "1e-300", "--out", dir.string()}).code == 2);

  // The installed binary behaves the same.
  const std::string cmd = std::string(HSL_CLI_PATH) + " resolvent --cesaro 1 --lambda 2+0i --out " + dir.string() +
                          " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 1);
}

TEST_CASE("identical runs produce identical bytes") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  for (const auto& d : {a, b}) {
    REQUIRE(hsl_run({"spectrum", "--cesaro", "1", "--svg", "--out", d.string()}).code == 0);
    REQUIRE(hsl_run({"symbol", "--config", config("bump.json"), "--xi-count", "257", "--out", d.string()}).code == 0);
  }
  for (const char* f : {"spectrum.json", "spectrum.svg", "symbol.csv"}) {
    INFO(f);
    CHECK(slurp(a / f) == slurp(b / f));
  }
}
