#include "cellhelly_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "cellhelly/complex.hpp"
#include "cellhelly/coxeter.hpp"
#include "cellhelly/errors.hpp"
#include "cellhelly/garside.hpp"
#include "json.hpp"

namespace cellhelly::cli {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

struct Common {
  bool quiet = false;
  std::string dot;
  std::size_t cap = 10000;
};

// Meet/join universal properties in the right weak order: exhaustive for
// small groups, on seeded random pairs otherwise.
json lattice_check(const CoxeterGroup& w) {
  const int n = static_cast<int>(w.order());
  std::vector<std::pair<int, int>> pairs;
  const bool exhaustive = n <= 400;
  if (exhaustive) {
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) pairs.emplace_back(u, v);
    }
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < 2000; ++i) pairs.emplace_back(pick(rng), pick(rng));
  }
  std::size_t violations = 0;
  for (auto [ui, vi] : pairs) {
    const CoxElt u{ui}, v{vi};
    const CoxElt m = w.weak_meet(u, v, Side::right), j = w.weak_join(u, v, Side::right);
    bool ok = w.weak_leq(m, u, Side::right) && w.weak_leq(m, v, Side::right) &&
              w.weak_leq(u, j, Side::right) && w.weak_leq(v, j, Side::right);
    for (int z = 0; z < n && ok; ++z) {
      const CoxElt x{z};
      if (w.weak_leq(x, u, Side::right) && w.weak_leq(x, v, Side::right)) ok = w.weak_leq(x, m, Side::right);
      if (ok && w.weak_leq(u, x, Side::right) && w.weak_leq(v, x, Side::right)) ok = w.weak_leq(j, x, Side::right);
    }
    if (!ok) ++violations;
  }
  json r;
  r["mode"] = exhaustive ? "exhaustive" : "sampled";
  r["pairs"] = pairs.size();
  r["violations"] = violations;
  r["verdict"] = violations == 0 ? "ok" : "fail";
  return r;
}

int cmd_coxeter(const std::string& path, const Common& c, std::ostream& out, std::ostream& err) {
  const DefiningGraph g = DefiningGraph::from_file(path);
  const CoxeterGroup w = CoxeterGroup::enumerate(g, c.cap);
  const std::string problems = w.validate();
  if (!problems.empty()) throw Error("group validation failed: " + problems);
  json doc;
  doc["graph"] = path;
  doc["generators"] = g.names();
  doc["order"] = w.order();
  doc["longest_length"] = w.length(w.longest_element());
  doc["longest_word"] = w.word_string(w.longest_element());
  doc["lattice"] = lattice_check(w);
  out << doc.dump(2) << "\n";
  if (!c.dot.empty()) write_file(c.dot, w.oriented_cell_dot());
  const bool ok = doc["lattice"]["violations"] == 0;
  if (!c.quiet) {
    err << "order=" << w.order() << ", longest length=" << w.length(w.longest_element())
        << ", lattice=" << (ok ? "ok" : "fail") << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

GarsideStructure load_structure(const std::string& path, std::size_t cap) {
  const std::string text = read_file(path);
  json doc = json::parse(text, nullptr, false);
  if (!doc.is_discarded() && doc.is_object() && doc.contains("simples")) {
    return GarsideStructure::from_json_text(text);
  }
  const DefiningGraph g = DefiningGraph::from_json_text(text);
  if (!g.is_clique(g.all())) {
    throw NotFiniteWithinCap(cap);  // a missing edge is an infinite label
  }
  return GarsideStructure::from_spherical(CoxeterGroup::enumerate(g, cap));
}

json element_json(const GarsideStructure& gs, const GrpElt& x) {
  json e;
  e["power"] = x.power;
  json f = json::array();
  for (int s : x.factors) f.push_back(gs.simple_name(s));
  e["factors"] = std::move(f);
  e["normal_form"] = gs.format(x);
  return e;
}

int cmd_garside(const std::string& path, const std::string& op, const std::vector<std::string>& words,
                bool suffix, const Common& c, std::ostream& out, std::ostream& err) {
  const GarsideStructure gs = load_structure(path, c.cap);
  std::vector<GrpElt> xs;
  for (const auto& w : words) xs.push_back(gs.parse(w));
  const std::size_t need = op == "nf" ? 1 : op == "cover" ? 3 : 2;
  if (xs.size() != need) {
    throw InvalidInput("garside " + op + " takes " + std::to_string(need) + " word(s), got " +
                       std::to_string(xs.size()));
  }
  json doc;
  doc["structure"] = path;
  doc["op"] = op;
  doc["inputs"] = words;
  std::string summary;
  if (op == "nf") {
    doc["result"] = element_json(gs, xs[0]);
    summary = gs.format(xs[0]);
  } else if (op == "meet" || op == "join") {
    GrpElt r = op == "meet" ? (suffix ? gs.meet_s(xs[0], xs[1]) : gs.meet_p(xs[0], xs[1]))
                            : (suffix ? gs.join_s(xs[0], xs[1]) : gs.join_p(xs[0], xs[1]));
    doc["order"] = suffix ? "suffix" : "prefix";
    doc["result"] = element_json(gs, r);
    summary = gs.format(r);
  } else {
    const GCell cells[3] = {gs.cell_of(xs[0]), gs.cell_of(xs[1]), gs.cell_of(xs[2])};
    const TripleCover cover = gs.triple_cell_cover(cells[0], cells[1], cells[2]);
    doc["cover_base"] = element_json(gs, cover.cell.base);
    doc["h"] = element_json(gs, cover.h);
    doc["f"] = element_json(gs, cover.f);
    doc["g"] = element_json(gs, cover.g);
    doc["a"] = gs.simple_name(cover.a);
    doc["b"] = gs.simple_name(cover.b);
    // Containment certificate: every vertex of every pairwise intersection.
    std::size_t checked = 0;
    bool contained = true;
    json pairs = json::array();
    for (int i = 0; i < 3; ++i) {
      const GCell& p = cells[i];
      const GCell& q = cells[(i + 1) % 3];
      auto iv = gs.cell_intersection(p, q);
      json e;
      e["cells"] = json::array({i + 1, (i + 1) % 3 + 1});
      e["lo"] = gs.format(iv->lo);
      e["hi"] = gs.format(iv->hi);
      std::size_t size = 0;
      for (const GrpElt& v : gs.cell_vertices(p)) {
        if (!gs.cell_member(q, v)) continue;
        ++size;
        ++checked;
        contained = contained && gs.cell_member(cover.cell, v);
      }
      e["vertices"] = size;
      pairs.push_back(std::move(e));
    }
    json cert;
    cert["pairwise_intersections"] = std::move(pairs);
    cert["vertices_checked"] = checked;
    cert["contained"] = contained;
    doc["certificate"] = std::move(cert);
    summary = "cover base " + gs.format(cover.cell.base) + ", " + std::to_string(checked) + " intersection vertices contained";
    if (!contained) throw Error("cover certificate failed");
  }
  out << doc.dump(2) << "\n";
  if (!c.quiet) err << summary << "\n";
  return kOk;
}

int cmd_ball(const std::string& path, int radius, const Common& c, std::ostream& out,
             std::ostream& err) {
  const FCGraph fc = FCGraph::certify(DefiningGraph::from_file(path), c.cap);
  const auto oracle = make_oracle(fc);
  const CayleyBall ball = CayleyBall::build(fc, *oracle, radius);
  const CellComplex cx = CellComplex::build(fc, ball);
  out << ball_to_json(fc, ball, cx);
  if (!c.dot.empty()) write_file(c.dot, complex_to_dot(fc, ball, cx));
  if (!c.quiet) {
    err << "ball radius " << radius << ": " << ball.size() << " vertices, " << cx.cells().size()
        << " cells (" << ball.oracle_kind() << ")\n";
  }
  return kOk;
}

void summarize(const VerifyReport& r, std::ostream& err) {
  for (const auto& c : r.conditions) {
    err << "condition " << c.id << " (" << c.name << "): " << c.mode << ", tested=" << c.tested
        << ", skipped=" << c.skipped << ", violations=" << c.violations << "\n";
    for (const auto& ce : c.counterexamples) err << "  counterexample: " << ce << "\n";
  }
}

int cmd_verify(const std::string& path, std::optional<int> radius, std::optional<int> margin,
               const VerifyOptions& base, const Common& c, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(path);
  if (SyntheticComplex::looks_synthetic(text)) {
    VerifyReport report = verify_synthetic(SyntheticComplex::from_json_text(text), base);
    report.input = path;
    out << to_json(report);
    if (!c.quiet) {
      summarize(report, err);
      err << "verdict=" << (report.pass() ? "pass" : "fail") << "\n";
    }
    return report.pass() ? kOk : kCheckFailed;
  }
  if (!radius || !margin) throw InvalidInput("verify on a defining graph needs --radius and --margin");
  VerifyOptions options = base;
  options.margin = *margin;
  const FCGraph fc = FCGraph::certify(DefiningGraph::from_json_text(text), c.cap);
  const auto oracle = make_oracle(fc);
  const CayleyBall ball = CayleyBall::build(fc, *oracle, *radius);
  const CellComplex cx = CellComplex::build(fc, ball);
  VerifyReport report = cell_helly_verify(fc, ball, cx, options);
  report.input = path;

  VertexSet interior;
  const SimpleGraph th = ball_thickening(fc, ball, cx, &interior);
  HellySweepOptions ho;
  ho.max_family = options.max_family;
  ho.seed = options.seed;
  const HellyCheckResult cliques = clique_helly_check(th, ho, interior);
  const HellyCheckResult balls = ball_helly_check(th, ho, 2, interior);

  json doc = json::parse(to_json(report));
  json thick;
  thick["vertices"] = th.size();
  thick["edges"] = th.edge_count();
  thick["interior_vertices"] = interior.size();
  thick["clique_helly"] = json::parse(to_json(cliques));
  thick["ball_helly_max_radius"] = 2;
  thick["ball_helly"] = json::parse(to_json(balls));
  doc["thickening"] = std::move(thick);
  const bool pass = report.pass() && cliques.pass && balls.pass;
  doc["verdict"] = pass ? "pass" : "fail";
  out << doc.dump(2) << "\n";
  if (!c.dot.empty()) write_file(c.dot, complex_to_dot(fc, ball, cx));
  if (!c.quiet) {
    err << "verify " << path << ": radius=" << *radius << " margin=" << *margin
        << " oracle=" << report.oracle << " ball=" << report.ball_vertices
        << " cells=" << report.cells << " interior_cells=" << report.interior_cells << "\n";
    summarize(report, err);
    err << "thickening: clique Helly " << (cliques.pass ? "pass" : "fail") << ", ball Helly "
        << (balls.pass ? "pass" : "fail") << " on " << interior.size() << " interior vertices\n";
    err << "verdict=" << (pass ? "pass" : "fail") << "\n";
  }
  return pass ? kOk : kCheckFailed;
}

int cmd_graph_check(const std::string& path, bool cliques, bool balls, int max_radius,
                    const HellySweepOptions& options, const Common& c, std::ostream& out,
                    std::ostream& err) {
  if (cliques == balls) throw InvalidInput("graph check needs exactly one of --cliques, --balls");
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  const SimpleGraph g = SimpleGraph::parse_edge_list(in);
  const HellyCheckResult r =
      cliques ? clique_helly_check(g, options) : ball_helly_check(g, options, max_radius);
  out << to_json(r, &g) << "\n";
  if (!c.dot.empty()) write_file(c.dot, g.to_dot());
  if (!c.quiet) {
    err << (cliques ? "clique" : "ball") << " Helly: " << (r.pass ? "pass" : "fail") << " ("
        << r.families_tested << " families, " << (r.mode == SweepMode::exhaustive ? "exhaustive" : "sampled")
        << ")\n";
    for (const auto& l : r.counterexample_labels) err << "  " << l << "\n";
  }
  return r.pass ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cell Helly toolkit for Coxeter, Garside and FC-type Artin groups", "cellhelly"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--quiet,-q", common.quiet, "Suppress the summary on standard error");
  app.add_option("--cap", common.cap, "Maximum group order before giving up")
      ->check(CLI::PositiveNumber);
  app.add_option("--dot", common.dot, "Write a DOT export to this path");

  std::string input;
  auto* coxeter = app.add_subcommand("coxeter", "Enumerate a finite Coxeter group");
  coxeter->add_option("graph", input, "Defining graph JSON")->required();

  std::string op;
  std::vector<std::string> words;
  bool suffix = false;
  auto* garside = app.add_subcommand("garside", "Garside normal forms, lattices and cell covers");
  garside->add_option("structure", input, "Defining graph or Garside structure JSON")->required();
  garside->add_option("op", op, "nf | meet | join | cover")
      ->required()
      ->check(CLI::IsMember({"nf", "meet", "join", "cover"}));
  garside->add_option("words", words, "Words such as \"a b^-1 a\"");
  garside->add_flag("--suffix", suffix, "Use the suffix order for meet and join");

  int radius = 0;
  auto* ball = app.add_subcommand("ball", "Dump a ball of the universal Salvetti cover");
  ball->add_option("graph", input, "Defining graph JSON")->required();
  ball->add_option("--radius,-r", radius, "Ball radius")->required()->check(CLI::PositiveNumber);

  std::optional<int> v_radius, v_margin;
  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "Check the cell Helly conditions on a ball");
  verify->add_option("input", input, "Defining graph or synthetic complex JSON")->required();
  verify->add_option("--radius,-r", v_radius, "Ball radius")->check(CLI::PositiveNumber);
  verify->add_option("--margin,-m", v_margin, "Boundary margin")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", vopt.seed, "Sampling seed");
  verify->add_option("--jobs,-j", vopt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--max-family", vopt.max_family, "Largest family size")->check(CLI::Range(3, 16));
  verify->add_option("--samples", vopt.samples, "Families per sampled condition")->check(CLI::PositiveNumber);
  verify->add_option("--budget", vopt.exhaustive_budget, "Largest exhaustive family count")
      ->check(CLI::PositiveNumber);

  auto* graph = app.add_subcommand("graph", "Graph-level Helly checks");
  graph->require_subcommand(1);
  auto* check = graph->add_subcommand("check", "Clique or ball Helly check of an edge list");
  bool cliques = false, balls = false;
  int max_radius = 2;
  HellySweepOptions hopt;
  check->add_option("edges", input, "Edge list, one 'u v' per line")->required();
  check->add_flag("--cliques", cliques, "Clique Helly check");
  check->add_flag("--balls", balls, "Ball Helly check");
  check->add_option("--max-radius", max_radius, "Largest ball radius")->check(CLI::NonNegativeNumber);
  check->add_option("--max-family", hopt.max_family, "Largest family size")->check(CLI::Range(2, 16));
  check->add_option("--seed", hopt.seed, "Sampling seed");

  for (CLI::App* sub : {coxeter, garside, ball, verify, check}) sub->fallthrough();
  graph->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*coxeter) return cmd_coxeter(input, common, out, err);
    if (*garside) return cmd_garside(input, op, words, suffix, common, out, err);
    if (*ball) return cmd_ball(input, radius, common, out, err);
    if (*verify) return cmd_verify(input, v_radius, v_margin, vopt, common, out, err);
    if (*check) return cmd_graph_check(input, cliques, balls, max_radius, hopt, common, out, err);
  } catch (const NotFiniteWithinCap& e) {
    err << "error: " << e.what() << "\n";
    return kOutOfScope;
  } catch (const NotFC& e) {
    err << "error: not FC: " << e.what() << "\n";
    return kOutOfScope;
  } catch (const CapExceeded& e) {
    err << "error: undecided: " << e.what() << "\n";
    return kOutOfScope;
  } catch (const OracleUnsupported& e) {
    err << "error: oracle unsupported: " << e.what() << "\n";
    return kOracleUnsupported;
  } catch (const MarginTooSmall& e) {
    err << "error: MarginTooSmall: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace cellhelly::cli
