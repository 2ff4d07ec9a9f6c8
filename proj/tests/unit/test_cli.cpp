#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "etclosure/serialize.hpp"

using namespace etclosure;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("etclosure_test_" + name);
}

}  // namespace

TEST_CASE("closure tables") {
  const Result r = call({"closure", "--M", "2", "--N", "1", "--hmax", "1"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["rows"].size() == 3);
  const Result csv = call({"closure", "--M", "2", "--N", "3", "--hmax", "1", "--kmax", "2", "--format", "csv"});
  const Result js = call({"closure", "--M", "2", "--N", "3", "--hmax", "1", "--kmax", "2"});
  CHECK(rows_from_csv(csv.out) == rows_from_json(Json::parse(js.out)["rows"]));
  CHECK(call({"closure", "--M", "1"}).code == 2);
  CHECK(call({"closure", "--N", "2"}).code == 2);
  CHECK(call({"closure", "--M", "8", "--N", "3"}).code == 3);
  CHECK(call({"closure", "--bogus"}).code == 2);
  CHECK(call({}).code == 2);
}

TEST_CASE("verify") {
  const Result ok = call({"verify", "--suite", "characteristic"});
  CHECK(ok.code == 0);
  const Json j = Json::parse(ok.out);
  CHECK(j["passed"] == true);
  CHECK(j["suites"][0]["suite"] == "characteristic");
  CHECK(j["suites"][0]["max_residual"] == 0.0);
  CHECK(call({"verify", "--suite", "characteristic", "--mutate", "1"}).code == 1);
  CHECK(call({"verify", "--suite", "nope"}).code == 2);
  const Result eq = call({"verify", "--suite", "equilibrium"});
  CHECK(Json::parse(eq.out)["suites"].size() == 1);
}

TEST_CASE("equilibrium") {
  const Result r = call({"equilibrium", "--lambda", "1", "--gamma", "1", "--m", "1", "--stats", "mb"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  for (const char* key : {"n", "p", "e", "s", "T"}) CHECK(std::isfinite(j[key].get<double>()));
  CHECK(j["gibbs_residual"].get<double>() <= 1e-8);
  CHECK(call({"equilibrium", "--mu0", "0", "--mu1", "1"}).code == 2);
  CHECK(call({"equilibrium", "--stats", "xx"}).code == 2);
}

TEST_CASE("moments") {
  const Result r = call({"moments", "--M", "2", "--N", "1"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  for (const auto& x : j["delta_hprime"]) CHECK(x.get<double>() == 0.0);
  CHECK(j["residuals"].contains("symmetry"));
  CHECK(j["residuals"].contains("traces"));
  CHECK(j["residuals"].contains("orders"));
}

TEST_CASE("deterministic output, atomic file and config merge") {
  const auto path = temp_path("moments.json");
  std::filesystem::remove(path);
  const std::vector<std::string> args = {"moments", "--M", "2", "--N", "3", "--dev-scale", "1e-5", "--seed", "4",
                                         "--out", path.string()};
  CHECK(call(args).code == 0);
  std::ifstream f1(path);
  const std::string first((std::istreambuf_iterator<char>(f1)), {});
  CHECK(call(args).code == 0);
  std::ifstream f2(path);
  const std::string second((std::istreambuf_iterator<char>(f2)), {});
  CHECK_FALSE(first.empty());
  CHECK(first == second);
  for (const auto& e : std::filesystem::directory_iterator(path.parent_path())) {
    CHECK(e.path().filename().string().find("moments.json.tmp") == std::string::npos);
  }
  std::filesystem::remove(path);

  const auto cfg = temp_path("run.cfg");
  {
    std::ofstream c(cfg);
    c << "M = 2\nN = 3\nhmax = 1\n";
  }
  const Json from_file = Json::parse(call({"closure", "--config", cfg.string(), "--hmax", "0"}).out);
  CHECK(from_file["N"] == 3);
  CHECK(from_file["h_max"] == 0);
  std::filesystem::remove(cfg);
}
