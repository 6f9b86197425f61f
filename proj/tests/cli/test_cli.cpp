// Copyright 2026 The snakeweaver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "snakeweaver/cli.hpp"

using nlohmann::json;
namespace cli = snakeweaver::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "snakeweaver");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("snakeweaver_cli_" + name)).string();
}

json read(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("cli: generate then check a Markov state") {
  const std::string f = tmp("rm.json");
  const Run g = run({"generate", "row-markov", "-o", f, "--width", "4", "--height", "3", "--seed", "3",
                     "--unitaries", "real"});
  REQUIRE(g.code == cli::kPass);
  CHECK(has(g.out, "wrote 2 marginals"));
  const Run c = run({"check", f});
  CHECK(c.code == cli::kPass);
  CHECK(has(c.out, "all conditions hold"));

  const std::string rep = tmp("rm_report.json");
  const Run cj = run({"check", f, "--json", "--report", rep, "--full-pairwise"});
  CHECK(cj.code == cli::kPass);
  const json doc = json::parse(cj.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["tool"] == "snakeweaver");
  CHECK(doc["command"] == "check");
  CHECK(doc["passed"] == true);
  CHECK(doc["exit_code"] == 0);
  CHECK(read(rep) == doc);
  std::filesystem::remove(rep);
  std::filesystem::remove(f);
}

TEST_CASE("cli: violated conditions exit 1") {
  const std::string f = tmp("ghz.json");
  REQUIRE(run({"generate", "ghz-row", "-o", f, "--width", "4", "--height", "4", "--ghz-at", "0,1"}).code ==
          cli::kPass);
  const Run c = run({"check", f, "--json"});
  CHECK(c.code == cli::kConditionFailure);
  CHECK(json::parse(c.out)["passed"] == false);
  const std::string g3 = tmp("ghz3.json");
  REQUIRE(run({"generate", "ghz-row", "-o", g3, "--width", "3", "--height", "3", "--ghz-at", "0,1"}).code ==
          cli::kPass);
  const Run r = run({"reconstruct", g3});
  CHECK(r.code == cli::kConditionFailure);
  CHECK(has(r.out, "--force"));
  CHECK(run({"reconstruct", g3, "--force"}).code == cli::kConditionFailure);
  std::filesystem::remove(g3);

  const std::string dep = tmp("dep.json");
  REQUIRE(run({"generate", "row-markov", "-o", dep, "--width", "4", "--height", "3", "--depolarize", "1e-3",
               "--depolarize-at", "2,0"})
              .code == cli::kPass);
  CHECK(run({"check", dep}).code == cli::kConditionFailure);
  std::filesystem::remove(dep);
  std::filesystem::remove(f);
}

TEST_CASE("cli: entropy and reconstruction") {
  const std::string f = tmp("prod.json");
  REQUIRE(run({"generate", "product", "-o", f, "--width", "5", "--height", "4"}).code == cli::kPass);
  const Run e = run({"entropy", f, "--json"});
  CHECK(e.code == cli::kPass);
  const json doc = json::parse(e.out);
  CHECK(doc["command"] == "entropy");
  CHECK(has(doc.dump(), "20"));
  const Run t = run({"entropy", f, "--terms", "--log-base", "e"});
  CHECK(t.code == cli::kPass);
  CHECK(has(t.out, "nats"));
  CHECK(has(t.out, "S(2x2)"));

  const Run guard = run({"reconstruct", f});
  CHECK(guard.code == cli::kGuard);
  CHECK(has(guard.err, "--formula-only"));
  const Run formula = run({"reconstruct", f, "--formula-only"});
  CHECK(formula.code == cli::kPass);
  CHECK(has(formula.out, "20 bits"));

  const std::string small = tmp("small.json"), state = tmp("state.json");
  REQUIRE(run({"generate", "row-markov", "-o", small, "--width", "3", "--height", "3", "--unitaries", "complex"})
              .code == cli::kPass);
  const Run rec = run({"reconstruct", small, "--state-out", state});
  CHECK(rec.code == cli::kPass);
  CHECK(read(state)["local_dim"] == 2);
  for (const auto& p : {f, small, state}) std::filesystem::remove(p);
}

TEST_CASE("cli: stabilizer input") {
  const std::string f = tmp("rep.json");
  REQUIRE(run({"generate", "stabilizer-repetition-rows", "-o", f, "--width", "6", "--height", "5"}).code ==
          cli::kPass);
  const Run e = run({"entropy", f, "--stabilizer"});
  CHECK(e.code == cli::kPass);
  CHECK(has(e.out, "exact global entropy: 5 bits"));
  std::filesystem::remove(f);
}

TEST_CASE("cli: snakes and derivations") {
  const std::string f = tmp("snake.json");
  REQUIRE(run({"generate", "row-markov", "-o", f, "--width", "5", "--height", "3"}).code == cli::kPass);
  CHECK(run({"snake", f, "--level", "2", "--v", "0,0", "--u", "4,0"}).code == cli::kPass);
  CHECK(run({"snake", f, "--level", "2", "--v", "0,0", "--u", "4,0", "--variant", "hooked_up"}).code ==
        cli::kPass);
  CHECK(run({"snake", f, "--level", "1", "--v", "0,0", "--u", "1,0"}).code == cli::kInputError);
  std::filesystem::remove(f);

  const Run d = run({"derive", "--anchor", "2,2"});
  CHECK(d.code == cli::kPass);
  CHECK(has(d.out, "derived"));
  CHECK(has(d.out, "revmono"));
  const Run nd = run({"derive", "--anchor", "2,2", "--target", R"({"a": [[0,2]], "c": [[2,4]]})"});
  CHECK(nd.code == cli::kConditionFailure);
  CHECK(has(nd.out, "not derivable"));
}

TEST_CASE("cli: input errors exit 2") {
  CHECK(run({"check", tmp("absent.json")}).code == cli::kInputError);
  const std::string f = tmp("trunc.json");
  {
    std::ofstream out(f);
    out << R"({"format_version": 1, "window": {"width": 3)";
  }
  const Run t = run({"check", f});
  CHECK(t.code == cli::kInputError);
  CHECK(has(t.err, "error:"));
  std::filesystem::remove(f);
  CHECK(run({"generate", "unicorn", "-o", tmp("u.json")}).code == cli::kInputError);
  CHECK(run({"check", "x.json", "--tol-cmi", "-1"}).code == cli::kInputError);
  CHECK(run({"check", "x.json", "--dense-guard", "8"}).code == cli::kInputError);
  CHECK(run({"bogus"}).code == cli::kInputError);
  CHECK(run({"--help"}).code == cli::kPass);
}
