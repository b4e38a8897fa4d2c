#include <cli.hpp>

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace prptl;

namespace {

struct outcome {
  int code;
  std::string out;
  std::string err;
};

outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "prptl");
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("prptl_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::string coin_file() {
  return write_temp("coin.dtmc",
                    "states: 2\ninit: 0 1\ntrans: 0 0 1/2\ntrans: 0 1 1/2\ntrans: 1 1 1\nlabel: 1 q\n");
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("tnf") {
  outcome r = run({"tnf", "p ; X[3,4] q"});
  CHECK(r.code == 0);
  CHECK(r.out == "(p & X[3,4] q) | (p & X[1,1] (true ; X[3,4] q))\n");
  CHECK(run({"ctnf", "<> q"}).out == "(q & empty) | (q & X[1,1] true) | (!q & X[1,1] (true ; q))\n");
}

TEST_CASE("check") {
  std::string coin = coin_file();
  outcome holds = run({"check", coin, "Pr>=0.5 [ X[1,1] q ]"});
  CHECK(holds.code == 0);
  CHECK(holds.out == "holds (1/2)\n");
  outcome fails = run({"check", coin, "Pr>0.5 [ X[1,1] q ]"});
  CHECK(fails.code == 1);
  CHECK(fails.out == "fails (1/2)\n");
  CHECK(run({"check", coin, "Pr=0.5 [ X[1,1] q ]"}).code == 0);
  CHECK(run({"check", coin, "Pr>=1 [ <> q ]"}).code == 4);
  CHECK(run({"check", coin, "Pr>=0.5 [ <> q & [] q ]"}).code == 3);
}

TEST_CASE("json lines") {
  outcome r = run({"--format", "json-lines", "check", coin_file(), "Pr>=0.5 [ X[1,1] q ]"});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "holds");
  CHECK(j["fraction"] == "1/2");
  CHECK(j["probability"] == 0.5);
}

TEST_CASE("parse, graph and eval") {
  CHECK(run({"parse", "Pr>=0.5 [ <> q ]"}).out == "Pr>=1/2 [ true ; q ]\n");
  CHECK(run({"parse", "q | p"}).out == "p | q\n");
  CHECK(run({"graph", "empty"}).out.find("eps") != std::string::npos);
  CHECK(run({"graph", "--dot", "p"}).out.starts_with("digraph"));
  std::string trace = write_temp("trace.txt", "p\n\nq\n");
  CHECK(run({"eval", trace, "<> q"}).code == 0);
  CHECK(run({"eval", trace, "X q"}).code == 1);
  std::string file = write_temp("formula.txt", "X[1,2] q\n");
  CHECK(run({"exact", coin_file(), "--formula-file", file, "--horizon", "2"}).out == "3/4\n");
}

TEST_CASE("sample") {
  outcome r = run({"sample", coin_file(), "X[1,2] q", "--samples", "20000", "--horizon", "2", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == run({"sample", coin_file(), "X[1,2] q", "--samples", "20000", "--horizon", "2", "--seed", "3"}).out);
  CHECK(run({"sample", coin_file(), "p", "--samples", "0", "--horizon", "2", "--seed", "3"}).code == 2);
}

TEST_CASE("usage errors") {
  outcome r = run({"parse", "Pr>2 [ p ]"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"tnf"}).code == 2);
  CHECK(run({"check", "/nonexistent/model", "Pr>0 [ p ]"}).code == 2);
  CHECK(run({"tnf", "p", "--formula-file", "x"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("computation errors") {
  outcome r = run({"graph", "--node-limit", "2", "p ; X[4,5] q"});
  CHECK(r.code == 3);
  CHECK(r.out.empty());
  CHECK(r.err.find("error") != std::string::npos);
  CHECK(run({"exact", coin_file(), "p", "--horizon", "100", "--max-paths", "5"}).code == 3);
}

}
