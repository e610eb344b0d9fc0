#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "io.hpp"
#include "json.hpp"

using namespace hk;

TEST_CASE("label and class text round-trip") {
  Ctx E2b(Curve::named("E2b"));
  for (int d = -2; d <= 2; ++d)
    for (const BClass& E : enumerate_classes(E2b, 3, d, -2, 2)) {
      CHECK(parse_class(E2b, class_text(E)) == E);
    }
  CHECK_THROWS(parse_label(E2b, "garbage"));
  CHECK_THROWS(parse_class(E2b, ""));
}

TEST_CASE("JSON graph round-trip and determinism") {
  Ctx E2(Curve::named("E2"));
  Place x0 = E2.x0_place();
  Graph g = build_graph_r3(E2, x0, 1, -2, 2);
  std::string a = graph_to_json(E2, g);
  std::string b = graph_to_json(E2, g);
  CHECK(a == b);  // byte-identical

  Graph h = graph_from_json(E2, a);
  CHECK(h.curve == g.curve);
  CHECK(h.x == g.x);
  CHECK(h.r == g.r);
  CHECK(h.rank == g.rank);
  CHECK(h.pgl == g.pgl);
  CHECK(h.lo == g.lo);
  CHECK(h.hi == g.hi);
  CHECK(h.verts == g.verts);
  CHECK(h.is_seed == g.is_seed);
  CHECK(h.edges == g.edges);

  // PGL graphs round-trip too
  Graph p = project_pgl(E2, g);
  Graph p2 = graph_from_json(E2, graph_to_json(E2, p));
  CHECK(p2.verts == p.verts);
  CHECK(p2.edges == p.edges);
}

TEST_CASE("DOT export has one arrow per directed edge") {
  Ctx E2(Curve::named("E2"));
  Graph g = build_graph_r2_deg1(E2, E2.x0_place(), 0, 2);
  std::string dot = graph_to_dot(E2, g);
  size_t arrows = 0, pos = 0;
  while ((pos = dot.find("->", pos)) != std::string::npos) { ++arrows; pos += 2; }
  CHECK(arrows == g.edges.size());
  CHECK(dot.find("digraph") == 0);
}

TEST_CASE("cli: graph build json with correct out-sums") {
  std::string out;
  int code = run_cli({"graph", "build", "--curve", "E2", "--rank", "3", "--place",
                      "deg1:0", "--r", "1", "--window", "-2..2", "--format", "json"},
                     &out);
  REQUIRE(code == 0);
  auto j = nlohmann::json::parse(out);
  std::map<long long, long long> sum;
  for (const auto& e : j["edges"]) sum[e["src"].get<long long>()] += e["weight"].get<long long>();
  for (const auto& v : j["vertices"])
    if (v["seed"].get<bool>()) CHECK(sum[v["id"].get<long long>()] == 7);

  // determinism: two runs produce identical bytes
  std::string out2;
  CHECK(run_cli({"graph", "build", "--curve", "E2", "--rank", "3", "--place", "deg1:0",
                 "--r", "1", "--window", "-2..2", "--format", "json"},
                &out2) == 0);
  CHECK(out == out2);
}

TEST_CASE("cli: golden fixture and even figure build") {
  std::string out;
  CHECK(run_cli({"graph", "build", "--curve", "E2", "--rank", "2", "--pgl", "--golden",
                 "fig1"},
                &out) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["operator"]["form"] == "golden");
  CHECK(j["vertices"].size() == 1 + 7 + 2 + 2);  // OO, OL1..7, Mx0, Mx1, Ny1, Ny2

  std::string even;
  CHECK(run_cli({"graph", "build", "--curve", "E3", "--rank", "2", "--place", "deg2:0",
                 "--pgl", "--even", "--window", "-2..3"},
                &even) == 0);
  auto je = nlohmann::json::parse(even);
  CHECK(je["operator"]["form"] == "pgl");
}

TEST_CASE("cli: config errors exit 2") {
  std::string out;
  CHECK(run_cli({"graph", "build", "--curve", "E9"}, &out) == 2);
  CHECK(run_cli({"graph", "build", "--curve", "E2", "--place", "deg1:99"}, &out) == 2);
  CHECK(run_cli({"graph", "build", "--curve", "E2", "--window", "4..-4"}, &out) == 2);
  CHECK(run_cli({"nonsense"}, &out) == 2);
  CHECK(run_cli({"spectral", "--q", "2", "--toroidal", "--cusp"}, &out) == 2);
  CHECK(run_cli({"spectral", "--q", "7", "--toroidal"}, &out) == 2);
}

TEST_CASE("cli: spectral output") {
  std::string out;
  REQUIRE(run_cli({"spectral", "--q", "2", "--toroidal"}, &out) == 0);
  CHECK(out.find("{-2, 2}") != std::string::npos);
  out.clear();
  REQUIRE(run_cli({"spectral", "--q", "4", "--toroidal"}, &out) == 0);
  CHECK(out.find("{-4, 4}") != std::string::npos);
  out.clear();
  REQUIRE(run_cli({"spectral", "--q", "3", "--cusp"}, &out) == 0);
  CHECK(out.find("{0}") != std::string::npos);
}

TEST_CASE("cli: check a clean export, then a mutated one") {
  const char* path = "tmp_io_graph.json";
  std::string out;
  REQUIRE(run_cli({"graph", "build", "--curve", "E2", "--rank", "3", "--place", "deg1:0",
                   "--r", "2", "--window", "-2..2", "-o", path},
                  &out) == 0);
  out.clear();
  CHECK(run_cli({"check", "--graph", path}, &out) == 0);
  CHECK(out.find("PASS") != std::string::npos);

  // mutate one edge weight
  std::ifstream in(path);
  auto j = nlohmann::json::parse(in);
  in.close();
  j["edges"][0]["weight"] = j["edges"][0]["weight"].get<long long>() + 1;
  std::string bad_label =
      j["vertices"][j["edges"][0]["src"].get<long long>()]["label"].get<std::string>();
  const char* bad = "tmp_io_graph_bad.json";
  {
    std::ofstream o(bad);
    o << j.dump(2);
  }
  out.clear();
  CHECK(run_cli({"check", "--graph", bad}, &out) == 3);
  CHECK(out.find(bad_label) != std::string::npos);  // counterexample is named
  std::remove(path);
  std::remove(bad);
}

TEST_CASE("cli: duality check suite") {
  std::string out;
  CHECK(run_cli({"check", "--curve", "E2", "--window", "-2..2", "--duality"}, &out) == 0);
  CHECK(out.find("PASS derived-duality") != std::string::npos);
  CHECK(out.find("PASS first-duality") != std::string::npos);
  out.clear();
  CHECK(run_cli({"check", "--curve", "E2b", "--window", "-2..2"}, &out) == 0);
}
