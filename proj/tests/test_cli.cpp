// Copyright 2026 The bregmat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bregmat/cli.hpp"
#include "bregmat/matrix_io.hpp"

using namespace bregmat;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "bregmat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json body_of(const Result& r) { return json::parse(r.out).at("body"); }

const json& record(const json& body, const std::string& name) {
  for (const json& r : body.at("records"))
    if (r.at("name") == name) return r;
  FAIL("record not found: " << name);
  static json none;
  return none;
}

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "bregmat_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_matrix(const std::string& name, const HermitianMatrix& m) {
  const auto p = temp_dir() / name;
  save_matrix(p.string(), m, Dims{m.dim()});
  return p.string();
}

}  // namespace

TEST_CASE("verify-identities") {
  const Result r = invoke({"verify-identities", "--dim", "3", "--trials", "50", "--seed", "7"});
  CHECK(r.code == kExitOk);
  const json body = body_of(r);
  CHECK(body.at("config").at("seed") == 7);
  CHECK(body.at("all_pass") == true);
  for (const char* fam : {"entropy", "tsallis:q=1.3", "tsallis:q=2", "shifted-entropy:lambda=0.5",
                          "quadratic:gamma=1"}) {
    const json& rec = record(body, std::string(fam) + "/representation-agreement");
    CHECK(rec.at("pass") == true);
    CHECK(rec.at("values").at("worst_ratio").get<double>() <= 1.0);
    CHECK(record(body, std::string(fam) + "/frechet-vs-finite-difference").at("pass") == true);
  }
  CHECK(record(body, "tsallis:q=2/homogeneity").at("pass") == true);
  CHECK(record(body, "shifted-entropy:lambda=0.5/shifted-entropy-identity").at("pass") == true);
}

TEST_CASE("tsallis-ssa on the saturating state") {
  const Result r = invoke({"tsallis-ssa", "--saturating", "--q", "2"});
  CHECK(r.code == kExitOk);
  const json sat = body_of(r);
  const json& rec = record(sat, "weighted-ssa/q=2");
  CHECK(std::abs(rec.at("slack").get<double>()) <= 1e-10);
  CHECK(rec.at("values").at("lhs").get<double>() == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(rec.at("values").at("rhs").get<double>() == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(record(sat, "plain-ssa-failure/q=2").at("values").at("gap").get<double>() ==
        doctest::Approx(0.25));

  const Result grid = invoke({"tsallis-ssa", "--q", "1,1.1,1.25,1.5,1.75,2"});
  CHECK(grid.code == kExitOk);
  const Result file = invoke({"tsallis-ssa", "--state", std::string(BREGMAT_DATA_DIR) +
                                                            "/saturating_state.json", "--q", "1.5"});
  CHECK(file.code == kExitOk);
  const Result rnd = invoke({"tsallis-ssa", "--random", "30", "--seed", "3", "--dims", "2,3,2",
                             "--q", "1,1.5,2"});
  CHECK(rnd.code == kExitOk);
  CHECK(body_of(rnd).at("config").at("dims") == json::array({2, 3, 2}));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({"divergence", "--f", "tsallis:q=", "--x", "a", "--y", "b"}).code == kExitUsage);
  CHECK(invoke({"entropy-class", "--f", "tsallis:q="}).code == kExitUsage);
  CHECK(invoke({"tsallis-ssa", "--bogus"}).code == kExitUsage);
  CHECK(invoke({"tsallis-ssa", "--f", "entropy"}).code == kExitUsage);  // not a tsallis-ssa flag
  CHECK(invoke({"no-such-command"}).code == kExitUsage);
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"tsallis-ssa", "--q", "2.5"}).code == kExitUsage);
  CHECK(invoke({"tsallis-ssa", "--q", "1,,2"}).code == kExitUsage);
  CHECK(invoke({"tsallis-ssa", "--saturating", "--random", "3"}).code == kExitUsage);
  CHECK(invoke({"monotonicity-demo", "--q", "1"}).code == kExitUsage);
  CHECK(invoke({"entropy-class", "--f", "entropy", "--criterion", "nope"}).code == kExitUsage);
  CHECK(invoke({"divergence", "--f", "entropy"}).code == kExitUsage);
  CHECK(invoke({"monotonicity-demo", "--format", "xml"}).code == kExitUsage);
  const Result r = invoke({"divergence", "--f", "tsallis:q=", "--x", "a", "--y", "b"});
  CHECK(r.err.find("tsallis:q=") != std::string::npos);
}

TEST_CASE("divergence") {
  Engine rng(1);
  const std::string x = write_matrix("x.json", random_pd(3, rng));
  const std::string y = write_matrix("y.json", random_pd(3, rng));
  const Result all = invoke({"divergence", "--f", "entropy", "--x", x, "--y", y, "--all-methods"});
  CHECK(all.code == kExitOk);
  const json body = body_of(all);
  REQUIRE(body.at("records").size() == 4);
  const double closed = record(body, "divergence/closed").at("values").at("value");
  for (const char* m : {"eigen", "integral-1d", "integral-2d"}) {
    const json& rec = record(body, std::string("divergence/") + m);
    CHECK(rec.at("values").at("value").get<double>() == doctest::Approx(closed).epsilon(1e-8));
    CHECK(rec.at("values").at("residual_to_closed").get<double>() <= 1e-8);
  }
  const Result one = invoke({"divergence", "--f", "tsallis:q=1.5", "--x", x, "--y", y, "--method", "eigen"});
  CHECK(one.code == kExitOk);
  CHECK(record(body_of(one), "divergence").at("values").at("method") == "eigen");

  // Singular arguments go through the continuous extension.
  const std::string p = write_matrix("p.json", HermitianMatrix::diagonal({1.0, 0.0}));
  const std::string q = write_matrix("q.json", HermitianMatrix::diagonal({0.0, 1.0}));
  const Result inf = invoke({"divergence", "--f", "entropy", "--x", p, "--y", q});
  CHECK(inf.code == kExitOk);
  const json singular = body_of(inf);
  const json& rec = record(singular, "divergence");
  CHECK(rec.at("values").at("value") == "inf");
  CHECK(rec.at("values").at("method") == "extended");

  // Bad files.
  const auto bad = temp_dir() / "nonherm.json";
  std::ofstream(bad) << R"({"dim":2,"re":[[1,1],[0,1]]})";
  const Result nh = invoke({"divergence", "--f", "entropy", "--x", bad.string(), "--y", y});
  CHECK(nh.code == kExitUsage);
  CHECK(nh.err.find("not Hermitian") != std::string::npos);
  CHECK(invoke({"divergence", "--f", "entropy", "--x", x, "--y", p}).code == kExitUsage);
  CHECK(invoke({"divergence", "--f", "entropy", "--x", x, "--y", y, "--method", "simpson"}).code ==
        kExitUsage);
}

TEST_CASE("entropy-class and counterexample-search exit codes") {
  CHECK(invoke({"entropy-class", "--f", "tsallis:q=1.5", "--trials", "200"}).code == kExitOk);
  const Result bad = invoke({"entropy-class", "--f", "tsallis:q=3", "--trials", "2000",
                             "--criterion", "concavity"});
  CHECK(bad.code == kExitViolation);
  const json body = body_of(bad);
  CHECK(record(body, "concavity").at("values").at("verdict") == "violated");
  const json& w = body.at("details").at("witnesses").at(0);
  CHECK(w.at("matrices").size() == 2);
  CHECK(w.at("replay").get<std::string>().find("--seed 0") != std::string::npos);

  const Result search = invoke({"counterexample-search", "--trials", "2000"});
  CHECK(search.code == kExitOk);
  CHECK(record(body_of(search), "search/concavity").at("values").at("outcome") == "counterexample");
  const Result none = invoke({"counterexample-search", "--f", "entropy", "--trials", "100"});
  CHECK(none.code == kExitOk);
  CHECK(record(body_of(none), "search/concavity").at("values").at("outcome") == "inconclusive");

  // f'' = 0 makes Df' singular: numerical failure.
  CHECK(invoke({"entropy-class", "--f", "power:p=1", "--trials", "5"}).code == kExitNumerical);
}

TEST_CASE("monotonicity-demo and contraction") {
  const Result m = invoke({"monotonicity-demo", "--q", "1.25,1.5,2"});
  CHECK(m.code == kExitOk);
  CHECK(record(body_of(m), "partial-trace-increase/q=2").at("values").at("ratio").get<double>() ==
        doctest::Approx(2.0));
  const Result c = invoke({"contraction", "--f", "entropy", "--trials", "100", "--seed", "4"});
  CHECK(c.code == kExitOk);
  CHECK(invoke({"contraction", "--f", "power:p=-1"}).code == kExitUsage);
}

TEST_CASE("reports are deterministic and carry their seed") {
  const std::vector<std::string> args = {"entropy-class", "--f", "entropy", "--trials", "50", "--seed", "12"};
  const Result a = invoke(args), b = invoke(args);
  CHECK(body_of(a).dump() == body_of(b).dump());
  CHECK(body_of(a).at("config").at("seed") == 12);
  CHECK(json::parse(a.out).at("timing").contains("wall_seconds"));

  setenv("BREGMAT_THREADS", "1", 1);
  const Result one = invoke(args);
  setenv("BREGMAT_THREADS", "4", 1);
  const Result four = invoke(args);
  setenv("BREGMAT_THREADS", "many", 1);
  CHECK(invoke(args).code == kExitUsage);
  unsetenv("BREGMAT_THREADS");
  CHECK(body_of(one).dump() == body_of(four).dump());
}

TEST_CASE("csv output and --out") {
  const Result csv = invoke({"monotonicity-demo", "--q", "2", "--format", "csv"});
  CHECK(csv.code == kExitOk);
  CHECK(csv.out.rfind("record,anchor,key,value,slack,tolerance,pass\n", 0) == 0);
  CHECK(csv.out.find("ratio,2") != std::string::npos);

  const auto path = temp_dir() / "report.json";
  const Result file = invoke({"monotonicity-demo", "--q", "2", "--out", path.string()});
  CHECK(file.code == kExitOk);
  CHECK(file.out.empty());
  std::ifstream in(path);
  CHECK(json::parse(in).at("body").at("all_pass") == true);
}

TEST_CASE("run() directly") {
  RunConfig cfg;
  cfg.subcommand = "monotonicity-demo";
  cfg.q_grid = {1.5};
  const RunOutcome r = run(cfg);
  CHECK(r.exit_code == kExitOk);
  REQUIRE(r.report.has_value());
  CHECK(r.report->records.size() == 1);
  CHECK(parse_number_list("1,2.5") == std::vector<double>{1.0, 2.5});
  CHECK_THROWS_AS(parse_int_list("2,x"), std::invalid_argument);
}
