#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "singmod/cli.hpp"
#include "singmod/json_io.hpp"

using namespace singmod;
using cli::OutputFormat;
using cli::RunConfig;
using cli::RunResult;

namespace {

RunResult run(const std::string& command, std::map<std::string, std::string> params,
              OutputFormat fmt = OutputFormat::table) {
  return cli::run(RunConfig{command, std::move(params), fmt});
}

io::Json run_json(const std::string& command, std::map<std::string, std::string> params) {
  const auto r = run(command, std::move(params), OutputFormat::json);
  REQUIRE(r.exit_code == 0);
  return io::Json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("singmod_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("bernoulli valuations at 37") {
  const auto r = run("bernoulli", {{"max", "70"}, {"valuations-at", "37"}});
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("m=32: 1") != std::string::npos);
  CHECK(r.out.find("m=68: 1") != std::string::npos);
  const auto j = run_json("bernoulli", {{"max", "70"}, {"valuations-at", "37"}});
  CHECK(j.dump().find("\"32\"") == std::string::npos);  // indices stay numeric
}

TEST_CASE("eisenstein-search rows") {
  const auto r = run("eisenstein-search",
                     {{"degree", "3"}, {"k-max", "10"}, {"p-max", "23"}, {"relaxed", "true"}},
                     OutputFormat::tsv);
  REQUIRE(r.exit_code == 0);
  for (const char* row : {"4\t7\n", "6\t11\n", "10\t19\n"}) CHECK(r.out.find(row) != std::string::npos);
  const auto j = run_json("eisenstein-search",
                          {{"degree", "5"}, {"k-max", "10"}, {"p-max", "17"}, {"relaxed", "true"}});
  CHECK(j.at("hits") == io::Json::parse("[[6,5],[8,7],[8,13],[10,5],[10,17]]"));
}

TEST_CASE("theta-prank note") {
  const auto r = run("theta-prank",
                     {{"lattice", "E8"}, {"p", "7"}, {"rank-bound", "3"}, {"det-max", "16"}});
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("r_p lower bound 2; rank-3 vanishing verified; weight congruence certifies r_p = 2") !=
        std::string::npos);
}

TEST_CASE("automorphism subcommand") {
  const auto j = run_json("automorphism", {{"lattice", "A6"}, {"p", "7"}, {"coxeter", "1,2,3,4,5,6"}});
  CHECK(j.at("alpha") == 0);
  CHECK(j.at("beta") == 1);
  const auto e8 = run_json("automorphism", {{"lattice", "E8"}, {"p", "7"}, {"coxeter", "3,4,5,6,7,8"}});
  CHECK(e8.at("alpha") == 2);
}

TEST_CASE("JSON outputs parse back under their schemas") {
  const auto q = run_json("qexp", {{"kind", "eisenstein"}, {"k", "4"}, {"length", "6"}});
  const auto f = io::qexpansion_from_json(q);
  CHECK(f.truncation() == 6);
  CHECK(io::to_json(f) == q);

  const auto t = run_json("theta", {{"lattice", "E8"}, {"degree", "2"}, {"det-max", "8"}});
  const auto table = io::fourier_table_from_json(t);
  CHECK(table.degree == 2);
  CHECK(io::to_json(table) == t);

  const auto fj = run_json("jacobi-fj", {{"lattice", "D4"}, {"index", "2"}, {"n-max", "3"}});
  CHECK(io::to_json(io::jacobi_table_from_json(fj)) == fj);

  const auto prof = run_json("profile", {{"k", "36"}, {"p", "37"}, {"r-max", "71"}});
  CHECK(io::to_json(io::valuation_profile_from_json(prof)) == prof);
}

TEST_CASE("file inputs feed later subcommands") {
  const auto q = run("qexp", {{"kind", "delta"}, {"length", "40"}}, OutputFormat::json);
  const std::string qpath = temp_file("delta.json", q.out);
  const auto h = run_json("hecke", {{"input", qpath}, {"l", "2"}});
  const auto hq = io::qexpansion_from_json(h);
  CHECK(hq[1] == BigRational(-24));
  CHECK(hq[2] == BigRational(576));

  const auto v = run("verify-constant",
                     {{"oracle", "file"}, {"input", qpath}, {"p", "7"}, {"m", "1"}, {"claimed-bound", "1"}});
  // 40 coefficients are far fewer than the verifier demands.
  CHECK(v.exit_code == 1);

  const auto fj = run("jacobi-fj", {{"lattice", "E8"}, {"index", "1"}, {"n-max", "2"}}, OutputFormat::json);
  const std::string fpath = temp_file("fj.json", fj.out);
  const auto d = run("jacobi-decompose", {{"input", fpath}}, OutputFormat::tsv);
  REQUIRE(d.exit_code == 0);
  CHECK(d.out.find("0\t4\t30240\n") != std::string::npos);
  CHECK(d.out.find("1\t3\t13440\n") != std::string::npos);

  const auto prof = run("profile", {{"k", "36"}, {"p", "37"}, {"r-max", "71"}}, OutputFormat::json);
  const std::string ppath = temp_file("profile.json", prof.out);
  const auto jc = run_json("thm-checks", {{"check", "jump-congruence"}, {"profile", ppath}});
  CHECK(jc.at("violations").empty());
}

TEST_CASE("verify-constant verdicts") {
  const auto e = run_json("verify-constant", {{"oracle", "eisenstein"}, {"k", "4"}, {"p", "5"}, {"m", "1"},
                                              {"claimed-bound", "0"}});
  CHECK(e.at("verdict") == "CONSTANT");
  CHECK(e.at("constant") == "1");
  const auto d = run_json("verify-constant", {{"oracle", "delta"}, {"p", "7"}, {"m", "1"}, {"claimed-bound", "1"}});
  CHECK(d.at("verdict") == "PREMISE_VIOLATED");
  CHECK(d.at("index") == 2);
}

TEST_CASE("thm-checks") {
  CHECK(run_json("thm-checks", {{"check", "prank-congruence"}, {"weight", "4"}, {"r", "2"}, {"p", "7"}})
            .at("holds") == true);
  CHECK(run_json("thm-checks", {{"check", "prank-congruence"}, {"weight", "36"}, {"r", "36"}, {"p", "37"}})
            .at("holds") == true);
  CHECK(run_json("thm-checks", {{"check", "jacobi-escape"}, {"weight", "7/2"}, {"r", "1"}, {"p", "7"}, {"m", "1"}})
            .at("escape_possible") == true);
  CHECK(run_json("thm-checks", {{"check", "jacobi-escape"}, {"weight", "4"}, {"r", "1"}, {"p", "7"}, {"m", "1"}})
            .at("escape_possible") == false);
  CHECK(run_json("thm-checks", {{"check", "jump-congruence"}, {"k", "36"}, {"p", "37"}, {"r-max", "71"}})
            .at("violations")
            .empty());
}

TEST_CASE("output is deterministic across thread counts") {
  const std::vector<std::pair<std::string, std::map<std::string, std::string>>> cases{
      {"eisenstein-search", {{"degree", "5"}, {"k-max", "60"}, {"p-max", "100"}, {"relaxed", "true"}}},
      {"theta", {{"lattice", "D4"}, {"degree", "3"}, {"det-max", "12"}}},
      {"jacobi-fj", {{"lattice", "E8"}, {"index", "2"}, {"n-max", "2"}}},
      {"classes", {{"n", "3"}, {"det-max", "20"}}},
  };
  for (const auto& [cmd, params] : cases) {
    std::vector<std::string> outs;
    for (const char* threads : {"1", "3", "8"}) {
      setenv("SINGMOD_THREADS", threads, 1);
      for (auto fmt : {OutputFormat::table, OutputFormat::json, OutputFormat::tsv}) {
        const auto r = run(cmd, params, fmt);
        CHECK(r.exit_code == 0);
        outs.push_back(r.out);
      }
    }
    unsetenv("SINGMOD_THREADS");
    for (std::size_t i = 3; i < outs.size(); ++i) CHECK(outs[i] == outs[i % 3]);
  }
}

TEST_CASE("errors and exit codes") {
  CHECK(run("no-such-command", {}).exit_code == 2);
  CHECK(run("ckr", {{"k", "4"}, {"r", "1"}, {"bogus", "1"}}).exit_code == 2);
  CHECK(run("ckr", {{"k", "5"}, {"r", "1"}}).exit_code == 2);
  CHECK(run("ckr", {{"k", "4"}, {"r", "1"}, {"p", "9"}}).exit_code == 2);
  CHECK(run("ckr", {{"k", "4"}}).exit_code == 2);
  CHECK(run("sturm", {{"weight", "abc"}, {"index", "1"}}).exit_code == 2);
  CHECK(run("theta", {{"lattice", "/nonexistent/gram.txt"}, {"degree", "1"}, {"det-max", "4"}}).exit_code == 2);

  const std::string bad = temp_file("bad_gram.txt", "2\n2 1\n1\n");
  const auto r = run("theta", {{"lattice", bad}, {"degree", "1"}, {"det-max", "4"}});
  CHECK(r.exit_code == 3);
  CHECK_FALSE(r.err.empty());
  const std::string junk = temp_file("junk.json", "{not json");
  CHECK(run("hecke", {{"input", junk}, {"l", "2"}}).exit_code == 3);
  CHECK(run("jacobi-decompose", {{"input", junk}}).exit_code == 3);

  const auto no_iso = run("automorphism", {{"lattice", "A6"}, {"p", "5"}, {"coxeter", "1,2,3,4,5,6"}});
  CHECK(no_iso.exit_code == 1);
  CHECK(no_iso.err.find("ORDER_MISMATCH") != std::string::npos);
}

TEST_CASE("every command is listed with its options") {
  std::set<std::string> names;
  for (const auto& c : cli::commands()) names.insert(c.name);
  for (const char* n : {"bernoulli", "ckr", "profile", "eisenstein-search", "klingen-check", "qexp",
                        "hecke", "sturm", "verify-constant", "classes", "theta", "theta-prank",
                        "automorphism", "jacobi-fj", "jacobi-decompose", "thm-checks"}) {
    CHECK(names.count(n) == 1);
  }
}
