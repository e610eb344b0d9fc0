#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "hall.hpp"
#include "spectral.hpp"

namespace hk {
namespace {

using nlohmann::json;

json graph_json(Ctx& ctx, const Graph& g, const std::string& form) {
  json j;
  j["curve"] = {{"name", g.curve}, {"q", ctx.C.q()}};
  j["operator"] = {{"place", {{"deg", g.x.deg}, {"idx", g.x.idx}}},
                   {"r", g.r},
                   {"rank", g.rank},
                   {"form", form}};
  j["window"] = {g.lo, g.hi};
  j["vertices"] = json::array();
  for (size_t i = 0; i < g.verts.size(); ++i)
    j["vertices"].push_back({{"id", (long long)i},
                             {"label", class_text(g.verts[i])},
                             {"degree", g.verts[i].deg()},
                             {"seed", (bool)g.is_seed[i]}});
  j["edges"] = json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back({{"src", e[0]}, {"dst", e[1]}, {"weight", e[2]}});
  return j;
}

std::pair<int, int> parse_window(const std::string& s) {
  size_t p = s.find("..", 1);  // allow a leading minus sign
  if (p == std::string::npos) throw std::invalid_argument("window must be lo..hi");
  int lo = std::stoi(s.substr(0, p)), hi = std::stoi(s.substr(p + 2));
  if (lo > hi) throw std::invalid_argument("window must be nonempty");
  return {lo, hi};
}

Place parse_place(Ctx& ctx, const std::string& s) {
  int d = 0, i = 0;
  if (std::sscanf(s.c_str(), "deg%d:%d", &d, &i) != 2)
    throw std::invalid_argument("place selector must look like deg1:0");
  if (d < 1 || i < 0 || i >= (int)ctx.places(d).size())
    throw std::invalid_argument("no such place on this curve: " + s);
  return Place{d, i};
}

long long expected_outsum(long long q, int rank, int xdeg) {
  if (rank == 3) return q * q + q + 1;           // Gr(3-r,3) at |x| = 1
  return xdeg == 2 ? q * q + 1 : q + 1;          // rank-2: P^1(F_{q^{|x|}})
}

// Validate an imported graph: every seed's out-weight sum matches the
// operator.  Returns the offending label, or "" when clean.
std::string validate_outsums(Ctx& ctx, const Graph& g) {
  std::vector<long long> sum(g.verts.size(), 0);
  for (const auto& e : g.edges) sum[e[0]] += e[2];
  long long want = expected_outsum(ctx.C.q(), g.rank, g.x.deg);
  for (size_t i = 0; i < g.verts.size(); ++i)
    if (g.is_seed[i] && sum[i] != want) return class_text(g.verts[i]);
  return "";
}

std::string golden_json(long long q, int kmax) {
  json j;
  j["curve"] = {{"name", "E" + std::to_string(q)}, {"q", q}};
  j["operator"] = {{"place", {{"deg", 1}, {"idx", 0}}},
                   {"r", 1},
                   {"rank", 2},
                   {"form", "golden"}};
  j["window"] = {0, kmax};
  std::vector<std::string> names{"OO"};
  for (int k = 1; k <= kmax; ++k) names.push_back("OL" + std::to_string(k));
  names.push_back("Mx0");
  names.push_back("Mx1");
  for (int i = 1; i <= q; ++i) names.push_back("Ny" + std::to_string(i));
  std::map<std::string, long long> id;
  j["vertices"] = json::array();
  for (size_t i = 0; i < names.size(); ++i) {
    id[names[i]] = (long long)i;
    j["vertices"].push_back(
        {{"id", (long long)i}, {"label", names[i]}, {"degree", 0}, {"seed", true}});
  }
  j["edges"] = json::array();
  for (const GoldenEdge& e : golden_fig1(q, kmax))
    j["edges"].push_back({{"src", id.at(e.src)}, {"dst", id.at(e.dst)}, {"weight", e.w}});
  return j.dump(2) + "\n";
}

int do_build(std::ostringstream& oss, const std::string& curve, const std::string& place,
             int rank, int r, const std::string& window, bool pgl, bool even,
             const std::string& golden, const std::string& format,
             const std::string& outpath) {
  Ctx ctx(Curve::named(curve));
  std::string payload;
  if (!golden.empty()) {
    if (golden != "fig1") throw std::invalid_argument("unknown golden fixture: " + golden);
    if (ctx.C.N(1) != 1) throw std::invalid_argument("golden fig1 needs a one-point curve");
    payload = golden_json(ctx.C.q(), 7);
  } else {
    auto [lo, hi] = parse_window(window);
    Place x = parse_place(ctx, place);
    Graph g;
    if (rank == 3) {
      if (x.deg != 1) throw std::invalid_argument("rank-3 graphs need a degree-1 place");
      g = build_graph_r3(ctx, x, r, lo, hi);
    } else if (rank == 2) {
      if (r != 1) throw std::invalid_argument("rank-2 graphs are built for r = 1");
      if (even || x.deg == 2)
        g = build_graph_even(ctx, x, lo, hi);
      else
        g = build_graph_r2_deg1(ctx, x, lo, hi);
    } else {
      throw std::invalid_argument("rank must be 2 or 3");
    }
    if (pgl) g = project_pgl(ctx, g);
    if (format == "json")
      payload = graph_to_json(ctx, g);
    else if (format == "dot")
      payload = graph_to_dot(ctx, g);
    else
      throw std::invalid_argument("format must be json or dot");
  }
  if (outpath.empty())
    oss << payload;
  else
    write_atomic(outpath, payload);
  return 0;
}

int do_check(std::ostringstream& oss, const std::string& curve, const std::string& place,
             const std::string& window, const std::string& graphfile, bool duality_only,
             uint64_t seed) {
  if (!graphfile.empty()) {
    std::ifstream in(graphfile);
    if (!in) throw std::invalid_argument("cannot read " + graphfile);
    std::stringstream ss;
    ss << in.rdbuf();
    json j = json::parse(ss.str());
    Ctx ctx(Curve::named(j.at("curve").at("name").get<std::string>()));
    Graph g = graph_from_json(ctx, ss.str());
    std::string bad = validate_outsums(ctx, g);
    if (!bad.empty()) {
      oss << "FAIL out-sums: vertex " << bad << "\n";
      return 3;
    }
    oss << "PASS out-sums (" << g.verts.size() << " vertices)\n";
    return 0;
  }
  Ctx ctx(Curve::named(curve));
  auto [lo, hi] = parse_window(window);
  Place x = parse_place(ctx, place);
  Graph g1 = build_graph_r3(ctx, x, 1, lo, hi);
  Graph g2 = build_graph_r3(ctx, x, 2, lo, hi);
  CheckReport rep = check_suite(ctx, g1, g2, seed);
  bool ok = true;
  for (const CheckResult& res : rep.results) {
    bool duality = res.name == "derived-duality" || res.name == "first-duality";
    if (duality_only && !duality) continue;
    ok = ok && res.pass;
    oss << (res.pass ? "PASS " : "FAIL ") << res.name;
    if (!res.detail.empty()) oss << ": " << res.detail;
    oss << "\n";
  }
  return ok ? 0 : 3;
}

int do_spectral(std::ostringstream& oss, long long q, bool toroidal, bool cusp) {
  if (toroidal == cusp)
    throw std::invalid_argument("choose exactly one of --toroidal / --cusp");
  SpectralResult r = toroidal ? toroidal_lambdas(q) : cusp_lambdas(q);
  oss << "λ ∈ {";
  for (size_t i = 0; i < r.roots.size(); ++i) oss << (i ? ", " : "") << r.roots[i];
  oss << "}\n";
  for (const std::string& n : r.notes) oss << "# " << n << "\n";
  return 0;
}

}  // namespace

std::string graph_to_json(Ctx& ctx, const Graph& g) {
  return graph_json(ctx, g, g.pgl ? "pgl" : "gl").dump(2) + "\n";
}

Label parse_label(Ctx& ctx, const std::string& text) {
  int yd = 0, yi = 0, l = 0, n = 0, d = 0;
  if (std::sscanf(text.c_str(), "E[(%d:%d,%d)]^(%d,%d)", &yd, &yi, &l, &n, &d) != 5)
    throw std::invalid_argument("bad label text: " + text);
  if (yd < 1 || yi < 0 || yi >= (int)ctx.places(yd).size())
    throw std::invalid_argument("bad place in label: " + text);
  return make_label(ctx, n, d, l, Place{yd, yi});
}

BClass parse_class(Ctx& ctx, const std::string& text) {
  std::vector<Label> labels;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t next = text.find(" + ", pos);
    std::string tok =
        next == std::string::npos ? text.substr(pos) : text.substr(pos, next - pos);
    labels.push_back(parse_label(ctx, tok));
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  if (labels.empty()) throw std::invalid_argument("empty class text");
  return make_class(std::move(labels));
}

Graph graph_from_json(Ctx& ctx, const std::string& text) {
  json j = json::parse(text);
  Graph g;
  g.curve = j.at("curve").at("name").get<std::string>();
  if (g.curve != ctx.C.name())
    throw std::invalid_argument("graph curve " + g.curve + " does not match context");
  const json& op = j.at("operator");
  std::string form = op.at("form").get<std::string>();
  if (form != "gl" && form != "pgl")
    throw std::invalid_argument("cannot import graphs of form " + form);
  g.x = Place{op.at("place").at("deg").get<int>(), op.at("place").at("idx").get<int>()};
  g.r = op.at("r").get<int>();
  g.rank = op.at("rank").get<int>();
  g.pgl = form == "pgl";
  g.lo = j.at("window")[0].get<int>();
  g.hi = j.at("window")[1].get<int>();
  for (const json& v : j.at("vertices")) {
    BClass E = parse_class(ctx, v.at("label").get<std::string>());
    if (E.deg() != v.at("degree").get<int>())
      throw std::invalid_argument("vertex degree mismatch at " + v.at("label").get<std::string>());
    g.verts.push_back(E);
    g.is_seed.push_back(v.at("seed").get<bool>() ? 1 : 0);
  }
  for (const json& e : j.at("edges")) {
    long long s = e.at("src").get<long long>(), d = e.at("dst").get<long long>(),
              w = e.at("weight").get<long long>();
    if (s < 0 || d < 0 || s >= (long long)g.verts.size() || d >= (long long)g.verts.size())
      throw std::invalid_argument("edge endpoint out of range");
    g.edges.push_back({s, d, w});
  }
  return g;
}

std::string graph_to_dot(Ctx& ctx, const Graph& g) {
  (void)ctx;
  std::ostringstream oss;
  oss << "digraph hecke {\n  rankdir=LR;\n";
  for (size_t i = 0; i < g.verts.size(); ++i)
    oss << "  v" << i << " [label=\"" << class_text(g.verts[i]) << "\""
        << (g.is_seed[i] ? "" : ", style=dashed") << "];\n";
  // one arrow per direction, weight as the edge label
  for (const auto& e : g.edges)
    oss << "  v" << e[0] << " -> v" << e[1] << " [label=\"" << e[2] << "\"];\n";
  oss << "}\n";
  return oss.str();
}

void write_atomic(const std::string& path, const std::string& data) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << data;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move " + tmp + " into place");
}

int run_cli(const std::vector<std::string>& args, std::string* out) {
  std::ostringstream oss;
  CLI::App app{"exact Hecke-operator graphs on elliptic curves over small finite fields",
               "hecke-atlas"};
  app.require_subcommand(1);

  auto* graph = app.add_subcommand("graph", "build and export graphs");
  graph->require_subcommand(1);
  auto* build = graph->add_subcommand("build", "build a Hecke graph");
  std::string curve = "E2", place = "deg1:0", window = "-4..4";
  std::string format = "json", golden, outpath;
  int rank = 3, r = 1;
  bool pgl = false, even = false;
  build->add_option("--curve", curve, "curve name (E2, E3, E4, E2b, E3b)");
  build->add_option("--place", place, "Hecke place selector, e.g. deg1:0");
  build->add_option("--rank", rank, "bundle rank (2 or 3)");
  build->add_option("--r", r, "operator index r");
  build->add_option("--window", window, "seed degree window lo..hi");
  build->add_option("--format", format, "json or dot");
  build->add_option("--golden", golden, "emit a golden fixture (fig1)");
  build->add_option("-o,--output", outpath, "output file (atomic write)");
  build->add_flag("--pgl", pgl, "project to PGL classes");
  build->add_flag("--even", even, "even component at a degree-2 place");

  auto* check = app.add_subcommand("check", "run the invariant suite");
  std::string ccurve = "E2", cplace = "deg1:0", cwindow = "-3..3", graphfile;
  bool duality = false;
  uint64_t seed = 0;
  check->add_option("--curve", ccurve, "curve name");
  check->add_option("--place", cplace, "Hecke place selector");
  check->add_option("--window", cwindow, "seed degree window lo..hi");
  check->add_option("--graph", graphfile, "validate an exported graph JSON");
  check->add_option("--seed", seed, "sampling seed for twist checks");
  check->add_flag("--duality", duality, "report only the duality checks");

  auto* spectral = app.add_subcommand("spectral", "cusp / toroidal eigenvalues");
  long long sq = 2;
  bool toroidal = false, cusp = false;
  spectral->add_option("--q", sq, "field size (2, 3 or 4)");
  spectral->add_flag("--toroidal", toroidal, "toroidal period condition");
  spectral->add_flag("--cusp", cusp, "cusp period condition");

  int code = 0;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    if (build->parsed())
      code = do_build(oss, curve, place, rank, r, window, pgl, even, golden, format,
                      outpath);
    else if (check->parsed())
      code = do_check(oss, ccurve, cplace, cwindow, graphfile, duality, seed);
    else
      code = do_spectral(oss, sq, toroidal, cusp);
  } catch (const CLI::ParseError& e) {
    oss << "config error: " << e.what() << "\n";
    code = 2;
  } catch (const std::invalid_argument& e) {
    oss << "config error: " << e.what() << "\n";
    code = 2;
  } catch (const std::domain_error& e) {
    oss << "config error: " << e.what() << "\n";
    code = 2;
  } catch (const std::exception& e) {
    oss << "invariant violation: " << e.what() << "\n";
    code = 3;
  }
  if (out)
    *out += oss.str();
  else
    std::cout << oss.str();
  return code;
}

}  // namespace hk
