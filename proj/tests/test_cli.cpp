#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "rmspec/cli.hpp"

using namespace rmspec;
using namespace rmspec::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rmspec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("moments toeplitz exact order 4") {
  const auto r = run({"moments", "toeplitz", "--order", "4"});
  REQUIRE(r.code == kOk);
  const auto j = Json::parse(r.out);
  CHECK(j["command"] == "moments");
  CHECK(j["schema_version"] == 1);
  const auto& row = j["rows"][4];
  CHECK(row["order"] == 4);
  CHECK(row["numerator"] == "8");
  CHECK(row["denominator"] == "3");
  CHECK(row["exact"] == "8/3");
}

TEST_CASE("csv output") {
  const auto r = run({"moments", "hankel", "--order", "6", "--format", "csv"});
  REQUIRE(r.code == kOk);
  CHECK(first_line(r.out) == "order,exact,numerator,denominator,value,std_error");
  CHECK(r.out.find("6,11/2,11,2,5.5,") != std::string::npos);

  const auto w = run({"words", "2", "--format", "csv"});
  REQUIRE(w.code == kOk);
  CHECK(first_line(w.out) ==
        "index,word,height,irreducible,noncrossing,p_T_method,p_T,p_T_value,p_T_std_error,"
        "p_H_method,p_H,p_H_value,p_H_std_error");
  CHECK(w.out.find(",abab,") != std::string::npos);
}

TEST_CASE("words rows") {
  const auto j = Json::parse(run({"words", "3"}).out);
  CHECK(j["rows"].size() == 15);
  CHECK(j["count"] == 15);
  for (const auto& row : j["rows"]) {
    if (row["word"] == "aabbcc") {
      CHECK(row["height"] == 3);
      CHECK(row["p_T"] == "1");
      CHECK(row["p_H"] == "1");
    }
  }
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kInvalidArgument);
  CHECK(run({"frobnicate"}).code == kInvalidArgument);
  CHECK(run({"--help"}).code == kOk);
  CHECK(run({"moments", "cauchy"}).code == kInvalidArgument);
  CHECK(run({"moments", "markov", "--method", "mc"}).code == kInvalidArgument);
  CHECK(run({"moments", "toeplitz", "--order", "30"}).code == kCapacity);
  CHECK(run({"words", "9"}).code == kInvalidArgument);
  CHECK(run({"simulate", "markov", "--n", "0"}).code == kInvalidArgument);
  CHECK(run({"simulate", "markov", "--n", "9000", "--replicates", "1"}).code == kCapacity);
  CHECK(run({"simulate", "markov", "--threads", "0"}).code == kInvalidArgument);
  CHECK(run({"simulate", "markov", "--seed", "banana"}).code == kInvalidArgument);
  CHECK(run({"moments", "toeplitz", "--format", "xml"}).code == kInvalidArgument);
  const auto r = run({"moments", "toeplitz", "--order", "30"});
  CHECK_FALSE(r.err.empty());
  CHECK(r.out.empty());
}

TEST_CASE("simulate reruns are byte identical and thread independent") {
  const std::vector<std::string> base = {"simulate", "toeplitz", "--n", "64", "--replicates", "4",
                                         "--seed", "0x1234"};
  auto with_threads = base;
  with_threads.insert(with_threads.end(), {"--threads", "3"});
  const auto a = run(base);
  REQUIRE(a.code == kOk);
  CHECK(run(base).out == a.out);
  const auto b = Json::parse(run(with_threads).out);
  auto ja = Json::parse(a.out);
  CHECK(ja["rows"] == b["rows"]);
  CHECK(ja["modes"] == b["modes"]);
  auto other = base;
  other[7] = "0x1235";
  CHECK(run(other).out != a.out);
}

TEST_CASE("simulate summary fields") {
  const auto r = run({"simulate", "markov", "--n", "32", "--replicates", "2", "--max-moment", "4"});
  REQUIRE(r.code == kOk);
  const auto j = Json::parse(r.out);
  CHECK(j["rows"].size() == 4);
  CHECK(j["eigenvalue_count"] == 64);
  CHECK(j["config"]["distribution"]["name"] == "gaussian");
  CHECK(j.contains("spectral_norm"));
  const auto m = run({"simulate", "markov", "--n", "16", "--replicates", "1", "--mean", "1"});
  REQUIRE(m.code == kOk);
  CHECK(Json::parse(m.out)["config"]["distribution"]["name"] == "shifted_gaussian");
  CHECK(run({"simulate", "markov", "--dist", "gaussian", "--mean", "1"}).code ==
        kInvalidArgument);
}

TEST_CASE("norm scan") {
  const auto r = run({"norm-scan", "--ns", "1,16", "--replicates", "2", "--format", "csv"});
  REQUIRE(r.code == kOk);
  CHECK(first_line(r.out) ==
        "n,replicates,norm_mean,norm_std_error,ratio_mean,ratio_std_error,per_n_mean,"
        "per_n_std_error");
  std::istringstream lines(r.out);
  std::string header, n1;
  std::getline(lines, header);
  std::getline(lines, n1);
  CHECK(n1.rfind("1,2,0,0,,,", 0) == 0);
}

TEST_CASE("artifact csv and json helpers") {
  Artifact a;
  a.command = "demo";
  a.columns = {"x", "y"};
  a.rows.push_back(Json{{"x", 1}, {"y", nullptr}});
  a.rows.push_back(Json{{"x", 0.1}, {"y", "s"}});
  std::ostringstream csv;
  write_csv(csv, a);
  CHECK(csv.str() == "x,y\n1,\n0.10000000000000001,s\n");
  const auto j = to_json(a);
  CHECK(j["command"] == "demo");
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["rows"].size() == 2);
}
