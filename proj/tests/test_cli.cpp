#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "autostack/fixtures.hpp"
#include "autostack/json_io.hpp"

using namespace autostack;
using io::Json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(std::string const& args) {
  std::string cmd = std::string(AUTOSTACK_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) {
    r.out.append(buf.data(), n);
  }
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(std::string const& name) {
  return std::string(AUTOSTACK_DATA_DIR) + "/" + name;
}

std::string scratch(std::string const& name) {
  return std::string(AUTOSTACK_SCRATCH_DIR) + "/" + name;
}

void write(std::string const& path, std::string const& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST_CASE("ball output") {
  Run r = run("ball --group " + data("z2xz2.json") +
              " --radius 3 --order shortlex");
  REQUIRE(r.status == 0);
  Json j = Json::parse(r.out);
  Ball ball(fixtures::z2_by_swap(), 3, Order::shortlex);
  CHECK(j.size() == ball.size());
  CHECK(j.back()["length"] == 3);
  CHECK(run("ball --group " + data("z2xz2.json") +
            " --radius 3 --order shortlex")
            .out == r.out);
}

TEST_CASE("fftp-check") {
  Run ok = run("fftp-check --group " + data("z2.json") +
               " --max-k 6 --max-len 6");
  REQUIRE(ok.status == 0);
  Json j = Json::parse(ok.out);
  CHECK(j["k"] == 2);
  CHECK(j["verified"] == true);
  CHECK(j["max_len"] == 6);

  Run none = run("fftp-check --group " + data("z2xz2.json") +
                 " --max-k 2 --max-len 6 --order shortlex");
  CHECK(none.status == 1);
  Json n = Json::parse(none.out);
  CHECK(n["k"].is_null());
  CHECK(n["counterexamples"].size() == 3);
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("ball --radius 2").status == 2);
  CHECK(run("ball --group " + data("no-such.json") + " --radius 2").status ==
        2);
  CHECK(run("ball --group " + data("z2.json") + " --radius 2 --format xml")
            .status == 2);
  CHECK(run("ball --group " + data("z2.json") + " --radius 2 --format dot")
            .status == 2);
  CHECK(run("ball --group " + data("z2.json") + " --radius 40 --max-ball 100")
            .status == 2);
  CHECK(run("fftp-check --group " + data("z2.json") + " --max-len 20")
            .status == 2);
  write(scratch("broken.json"), "{\"kind\": \"free-abelian\"");
  CHECK(run("ball --group " + scratch("broken.json") + " --radius 2").status ==
        2);
  CHECK(run("--help").status == 0);
}

TEST_CASE("export and rewrite") {
  Run g = run("export --fixture z2xz2");
  REQUIRE(g.status == 0);
  CHECK(io::dump(io::load_file(data("z2xz2.json"))) == g.out);

  Run rules = run("export --fixture z2xz2-rules");
  REQUIRE(rules.status == 0);
  write(scratch("swap.json"), rules.out);
  CHECK(run("export --rules " + scratch("swap.json")).out == rules.out);
  Run dot = run("export --rules " + scratch("swap.json") + " --format dot");
  CHECK(dot.status == 0);
  CHECK(dot.out.rfind("digraph", 0) == 0);
  Run pairs = run("export --rules " + scratch("swap.json") + " --pairs 2");
  CHECK(Json::parse(pairs.out).size() ==
        fixtures::z2_by_swap_rules().rules.enumerate(2).size());

  Run rw = run("rewrite --rules " + scratch("swap.json") + " --word atata");
  REQUIRE(rw.status == 0);
  Json j = Json::parse(rw.out);
  CHECK(j["normal_form"] == Json{"a", "a", "t", "a", "t"});
  CHECK(j["steps"].size() == 1);
  CHECK(run("rewrite --rules " + scratch("swap.json") + " --word atq")
            .status == 2);
}

TEST_CASE("bounded system, flow table and geodesic check") {
  write(scratch("swap.json"), run("export --fixture z2xz2-rules").out);
  Run s = run("theorem-a --group " + data("z2xz2.json") + " --rules " +
              scratch("swap.json") + " --k 3 --max-len 5");
  REQUIRE(s.status == 0);
  Json sj = Json::parse(s.out);
  CHECK(sj["pass"] == true);
  CHECK(sj["report"]["k"] == 3);
  CHECK(sj["report"]["longest_middle"] == 4);
  write(scratch("swap-s.json"), s.out);

  Run flow = run("flow --group " + data("z2xz2.json") + " --rules " +
                 scratch("swap-s.json") + " --radius 4");
  REQUIRE(flow.status == 0);
  write(scratch("flow.json"), flow.out);
  Run geo = run("verify-geo --group " + data("z2xz2.json") + " --flow " +
                scratch("flow.json"));
  CHECK(geo.status == 0);
  CHECK(Json::parse(geo.out)["pass"] == true);

  Json broken = Json::parse(flow.out);
  for (auto& e : broken["edges"]) {
    if (!e["fixed"].get<bool>()) {
      e["label"] = Json{"a", "a"};
      break;
    }
  }
  write(scratch("flow-broken.json"), io::dump(broken));
  Run bad = run("verify-geo --group " + data("z2xz2.json") + " --flow " +
                scratch("flow-broken.json"));
  CHECK(bad.status == 1);
  Json bj = Json::parse(bad.out);
  CHECK(bj["pass"] == false);
  CHECK_FALSE(bj["violations"].empty());

  Run convex = run("almost-convex --group " + data("z2xz2.json") +
                   " --rules " + scratch("swap-s.json") + " --k 3 --n 4");
  CHECK(convex.status == 0);
  CHECK(Json::parse(convex.out)["failures"] == 0);
}

TEST_CASE("refined system for Z2 through the bounded construction") {
  Run r = run("refine-cprs --group " + data("z2.json") +
              " --max-k 4 --max-len 6");
  REQUIRE(r.status == 0);
  Json rj = Json::parse(r.out);
  CHECK(rj["k"] == 2);
  CHECK(rj["states"]["Lpp"] == 63);
  write(scratch("z2-lpp.json"), r.out);

  Run small = run("theorem-a --group " + data("z2.json") + " --rules " +
                  scratch("z2-lpp.json") + " --k 4");
  CHECK(small.status == 1);
  CHECK(Json::parse(small.out).contains("error"));

  Run s = run("theorem-a --group " + data("z2.json") + " --rules " +
              scratch("z2-lpp.json") + " --k 5 --max-len 5");
  CHECK(s.status == 0);
  CHECK(Json::parse(s.out)["verification"]["pass"] == true);
}
