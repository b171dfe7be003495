#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "fibla/cli.hpp"

using fibla::run_cli;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

const char* kSingleRow = R"({"kind":"dense","rows":[["1"]]})";

}  // namespace

TEST_CASE("transform") {
  const auto j = run_json({"transform", "--x", "witness:t", "--lambda", "linear:1,1", "-N", "8"});
  CHECK(j["schema_version"] == 1);
  CHECK(j["output"] == json(std::vector<std::string>(8, "1")));
  CHECK(j["input"].size() == 8);

  const auto inv = run_json({"transform", "--inverse", "--y", "unit:0", "--lambda", "linear:1,1", "-N", "4"});
  CHECK(inv["output"] == json({"1", "2", "9/2", "25/2"}));

  const auto z = run({"transform", "--x", "zero", "-N", "4", "--csv"});
  CHECK(z.code == 0);
  CHECK(lines(z.out) == std::vector<std::string>{"n,x,y", "0,0,0", "1,0,0", "2,0,0", "3,0,0"});

  const auto pl = run_json({"transform", "--x", "witness:power-law", "--p", "2", "-N", "5", "--mode", "float"});
  CHECK(pl["output"][3].get<std::string>().starts_with("0.5"));
}

TEST_CASE("exit codes") {
  CHECK(run({"transform", "--x", "bogus"}).code == 2);
  CHECK(run({"transform", "--x", "witness:nope"}).code == 2);
  CHECK(run({"transform"}).code == 2);
  CHECK(run({"transform", "--x", "t", "--mode", "fuzzy"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"norm", "--x", "ones", "--p", "lp"}).code == 2);
  CHECK(run({"class", "--A", "/nonexistent.json"}).code == 2);
  CHECK(run({"class", "--A", "{not json"}).code == 2);
  CHECK(run({"dual", "--a", "ones", "--condition", "d9"}).code == 2);
  CHECK(run({"verify-paper", "--only", "nosuch"}).code == 2);
  CHECK(run({"plot-data", "--from", "/nonexistent.json"}).code == 2);

  CHECK(run({"transform", "--x", "witness:power-law", "--p", "2", "-N", "4"}).code == 3);
  CHECK(run({"transform", "--x", "t", "--lambda", "linear:1,-1"}).code == 3);
  CHECK(run({"class", "--A", kSingleRow, "--X", "lp:2", "--Y", "lp:3"}).code == 3);
  CHECK(run({"opnorm", "--A", kSingleRow, "--Y", "lp:2"}).code == 3);
  CHECK(run({"mnc", "--A", kSingleRow, "--Y", "c0", "--rmax", "2"}).code == 3);
  CHECK(run({"mnc", "--A", R"({"kind":"identity"})", "--Y", "c", "--rmax", "8"}).code == 3);
  CHECK(run({"dual", "--a", "ones", "--window", "3"}).code == 3);

  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("verify-paper") != std::string::npos);
}

TEST_CASE("verify-paper") {
  const auto all = run({"verify-paper"});
  CHECK(all.code == 0);
  const auto j = json::parse(all.out);
  CHECK(j["passed"] == true);
  CHECK(j["results"].size() == 10);

  const auto par = run_json({"verify-paper", "--only", "parallelogram", "--p", "4"});
  const auto& facts = par["results"][0]["facts"];
  CHECK(facts["p=4 lhs"] == "8");
  CHECK(facts["p=4 rhs"].get<std::string>().starts_with("5.656854249492380195"));
  CHECK(facts["p=4 verdict"] == "not-equal");

  const auto inv = run_json({"verify-paper", "--only", "inverse-identity", "-N", "64"});
  CHECK(inv["results"][0]["passed"] == true);
  CHECK(inv["results"][0]["facts"]["N"] == "64");

  // 64 bits cannot meet the 2^-128 power-law bound.
  const auto bad = run({"verify-paper", "--only", "witnesses", "--precision", "64"});
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out)["passed"] == false);
}

TEST_CASE("matrix commands") {
  const auto cls = run_json({"class", "--A", kSingleRow, "--X", "lp:2", "--Y", "linf", "--window", "24"});
  CHECK(cls["verdict"]["status"] == "holds-exactly");
  CHECK(cls["conditions"].size() == 4);

  const auto nrm = run_json({"opnorm", "--A", kSingleRow, "--p", "2", "--Y", "linf"});
  CHECK(nrm["low"]["exact"] == "1");
  CHECK(nrm["exact"] == true);

  const auto m = run_json({"mnc", "--A", R"({"kind":"E"})", "--p", "2", "--Y", "c0", "--rmax", "32"});
  CHECK(m["sweep"].size() == 33);
  for (const auto& s : m["sweep"]) CHECK(s["s"] == "1");
  CHECK(m["compactness"] == "evidence-noncompact");

  const auto one = run_json({"mnc", "--A", kSingleRow, "--Y", "c0", "--rmax", "8"});
  CHECK(one["compactness"] == "compact");
  CHECK(one["limit"]["exact"] == "0");
}

TEST_CASE("norm, basis, invert, dual") {
  const auto n = run_json({"norm", "--x", "witness:t", "--p", "inf", "-N", "64"});
  CHECK(n["norm"]["exact"] == "1");
  const auto n2 = run_json({"norm", "--x", "witness:t", "--p", "2", "-N", "64"});
  CHECK(n2["membership"]["status"] == "evidence-diverging");

  const auto b = run_json({"basis", "-k", "2", "-N", "24", "--lambda", "geometric:2,1"});
  CHECK(b["image_is_unit"] == true);
  CHECK(b["b"][0] == "0");
  const auto r = run_json({"basis", "--x", "witness:t", "-N", "25"});
  CHECK(r["reconstructs"] == true);

  const auto inv = run_json({"invert", "-N", "3"});
  CHECK(inv["rows"][2] == json({"9/2", "6", "9/2"}));
  CHECK(inv["oracle"] == "agrees");

  const auto d = run_json({"dual", "--a", "unit:0", "--space", "lp:2", "--kind", "beta"});
  CHECK(d["verdict"]["status"] == "holds-exactly");
  CHECK(d["conditions"].size() == 3);
  const auto d3 = run_json({"dual", "--a", "ones", "--condition", "d3"});
  CHECK(d3["verdict"]["status"] == "evidence-diverging");
}

TEST_CASE("plot-data") {
  const auto m = run({"plot-data", "--A", kSingleRow, "--Y", "c0", "--rmax", "6"});
  REQUIRE(m.code == 0);
  const auto ml = lines(m.out);
  CHECK(ml[0] == "r,s");
  CHECK(ml[1] == "0,1");
  for (std::size_t i = 2; i < ml.size(); ++i) CHECK(ml[i].ends_with(",0"));

  const auto t = run({"plot-data", "--x", "witness:t", "--p", "2", "-N", "64"});
  const auto tl = lines(t.out);
  CHECK(tl[0] == "N,norm");
  double prev = 0;
  for (std::size_t i = 1; i < tl.size(); ++i) {
    const double v = std::stod(tl[i].substr(tl[i].find(',') + 1));
    CHECK(v > prev);
    prev = v;
  }
  CHECK(prev == doctest::Approx(8.0));

  CHECK(lines(run({"plot-data", "--x", "witness:t", "-N", "0"}).out) == std::vector<std::string>{"N,norm"});
  const std::string path = "test_cli_empty.json";
  std::ofstream(path) << R"({"command":"mnc","sweep":[]})";
  CHECK(lines(run({"plot-data", "--from", path}).out) == std::vector<std::string>{"r,s"});

  // Round trip through a saved report.
  const std::string saved = "test_cli_mnc.json";
  CHECK(run({"mnc", "--A", kSingleRow, "--Y", "c0", "--rmax", "6", "-o", saved}).code == 0);
  CHECK(run({"plot-data", "--from", saved}).out == m.out);
  std::remove(path.c_str());
  std::remove(saved.c_str());
}

TEST_CASE("determinism") {
  const std::vector<std::string> args = {"dual", "--a", "alt", "--space", "lp:2", "--kind", "alpha",
                                         "--window", "24", "--subset-mode", "sampled", "--seed", "7"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const std::vector<std::string> cls = {"class", "--A", R"({"kind":"identity"})", "--X", "lp:2", "--Y", "l1",
                                        "--window", "20", "--subset-mode", "sampled", "--seed", "3"};
  CHECK(run(cls).out == run(cls).out);
}
