#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "cellhelly/complex.hpp"
#include "cellhelly/errors.hpp"
#include "test_support.hpp"

using namespace cellhelly;
using testsupport::fixture;

namespace {

struct Setup {
  FCGraph fc;
  std::unique_ptr<WordOracle> oracle;
  CayleyBall ball;
  CellComplex cx;

  Setup(const std::string& name, int radius)
      : fc(FCGraph::certify(DefiningGraph::from_file(fixture(name)))),
        oracle(make_oracle(fc)),
        ball(CayleyBall::build(fc, *oracle, radius)),
        cx(CellComplex::build(fc, ball)) {}

  // "aB" = a·b⁻¹; returns -1 outside the ball.
  int vertex(const std::string& word) const {
    std::vector<GenLetter> w;
    for (char c : word) {
      w.push_back({fc.graph().index_of(std::string(1, static_cast<char>(std::tolower(c)))),
                   std::isupper(static_cast<unsigned char>(c)) != 0});
    }
    return ball.find(oracle->canonicalize(w));
  }
  int cell(const std::string& source, const std::string& type) const {
    GenSet mask = 0;
    for (char c : type) mask |= GenSet{1} << fc.graph().index_of(std::string(1, c));
    return cx.find(vertex(source), mask);
  }
  VertexSet vertices(std::initializer_list<const char*> words) const {
    VertexSet out;
    for (const char* w : words) out.push_back(vertex(w));
    std::sort(out.begin(), out.end());
    return out;
  }
};

std::vector<int> bfs(const CayleyBall& ball, int source) {
  std::vector<int> d(ball.size(), -1);
  std::vector<int> q{source};
  d[source] = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (int code = 0; code < 2 * ball.rank(); ++code) {
      int u = ball.neighbor(q[i], {code / 2, (code & 1) != 0});
      if (u >= 0 && d[u] < 0) {
        d[u] = d[q[i]] + 1;
        q.push_back(u);
      }
    }
  }
  return d;
}

}  // namespace

TEST_CASE("ball sizes") {
  CHECK(Setup("z.json", 2).ball.size() == 5);
  CHECK(Setup("z2.json", 1).ball.size() == 5);
  for (int r = 0; r <= 4; ++r) {
    CHECK(Setup("z2.json", r).ball.size() == static_cast<std::size_t>(2 * r * r + 2 * r + 1));
    int three = 1;
    for (int i = 0; i < r; ++i) three *= 3;
    CHECK(Setup("free2.json", r).ball.size() == static_cast<std::size_t>(2 * three - 1));
  }
  Setup a2("a2.json", 3);
  for (const char* s : {"", "a", "b", "ab", "ba", "aba"}) CHECK(a2.vertex(s) >= 0);
  CHECK(a2.ball.dist(a2.vertex("aba")) == 3);
  CHECK(a2.vertex("bab") == a2.vertex("aba"));
  CHECK(a2.vertex("abab") == -1);
}

TEST_CASE("ball distances are breadth-first distances") {
  for (const char* name : {"a2.json", "fc_path.json", "z2.json"}) {
    Setup s(name, 4);
    auto d = bfs(s.ball, 0);
    for (std::size_t v = 0; v < s.ball.size(); ++v) {
      CHECK(d[v] == s.ball.dist(static_cast<int>(v)));
      CHECK(s.ball.walk(0, s.ball.word(static_cast<int>(v))) == static_cast<int>(v));
      CHECK(s.ball.word(static_cast<int>(v)).size() == static_cast<std::size_t>(d[v]));
    }
  }
}

TEST_CASE("cells in the ball") {
  Setup r0("a2.json", 0);
  REQUIRE(r0.cx.cells().size() == 1);
  CHECK(r0.cx.cell(0).type == 0);

  Setup z2("z2.json", 2);
  for (const char* src : {"", "A", "B", "AB"}) {
    int id = z2.cell(src, "ab");
    REQUIRE(id >= 0);
    CHECK(z2.cx.cell(id).vertices.size() == 4);
    CHECK(std::binary_search(z2.cx.cell(id).vertices.begin(), z2.cx.cell(id).vertices.end(), 0));
  }

  Setup a2("a2.json", 3);
  int hex = a2.cell("", "ab");
  REQUIRE(hex >= 0);
  CHECK(a2.cx.cell(hex).vertices == a2.vertices({"", "a", "b", "ab", "ba", "aba"}));
  CHECK(a2.cx.cell(hex).sink == a2.vertex("aba"));
  CHECK(a2.cell("a", "ab") == -1);  // a·Δ has length 4
}

TEST_CASE("cell intersections") {
  Setup a2("a2.json", 4);
  const int h1 = a2.cell("", "ab"), ha = a2.cell("a", "ab"), hb = a2.cell("b", "ab");
  auto i = cell_intersection_x(a2.fc, a2.cx, h1, ha);
  REQUIRE(i);
  CHECK(i->vertices == a2.vertices({"a", "ab", "aba"}));
  CHECK(i->lo == a2.vertex("a"));
  CHECK(i->hi == a2.vertex("aba"));

  const int fam[3] = {h1, ha, hb};
  auto d = family_intersection(a2.fc, a2.cx, fam);
  REQUIRE(d);
  CHECK(d->vertices == a2.vertices({"aba"}));

  const int single[1] = {ha};
  CHECK(family_intersection(a2.fc, a2.cx, single)->vertices == a2.cx.cell(ha).vertices);
  CHECK_FALSE(cell_intersection_x(a2.fc, a2.cx, a2.cell("", "a"), a2.cell("bb", "a")));

  Setup z2("z2.json", 4);
  auto e = cell_intersection_x(z2.fc, z2.cx, z2.cell("", "ab"), z2.cell("a", "ab"));
  REQUIRE(e);
  CHECK(e->vertices == z2.vertices({"a", "ab"}));
  CHECK_FALSE(cell_intersection_x(z2.fc, z2.cx, z2.cell("", "ab"), z2.cell("aa", "ab")));
}

TEST_CASE("random pairwise intersecting families meet in an interval") {
  Setup z2("z2.json", 4);
  std::mt19937_64 rng(3);
  int found = 0;
  const auto& cells = z2.cx.cells();
  std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
  auto any = [&](const auto& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
  for (int trial = 0; trial < 20000 && found < 300; ++trial) {
    // Cells two steps away from a random cell, so that families often meet.
    std::vector<int> fam{static_cast<int>(pick(rng))};
    while (fam.size() < 4) {
      int hop = any(z2.cx.cells_at(any(cells[fam[0]].vertices)));
      fam.push_back(any(z2.cx.cells_at(any(cells[hop].vertices))));
    }
    bool pairwise = true;
    for (int x : fam) {
      for (int y : fam) pairwise = pairwise && sets_intersect(cells[x].vertices, cells[y].vertices);
    }
    if (!pairwise) continue;
    ++found;
    auto d = family_intersection(z2.fc, z2.cx, fam);
    REQUIRE(d);
    VertexSet brute = cells[fam[0]].vertices;
    for (int x : fam) brute = set_intersection(brute, cells[x].vertices);
    CHECK(d->vertices == brute);
  }
  CHECK(found >= 100);
}

TEST_CASE("triple covers") {
  Setup z2("z2.json", 4);
  const int s1 = z2.cell("", "ab"), s2 = z2.cell("a", "ab"), s3 = z2.cell("b", "ab");
  CHECK(triple_max_cell_cover(z2.fc, z2.ball, z2.cx, s1, s2, s3) == s1);
  CHECK(triple_max_cell_cover(z2.fc, z2.ball, z2.cx, s3, s1, s2) == s1);
  CHECK(triple_max_cell_cover(z2.fc, z2.ball, z2.cx, s2, s2, s2) == s2);
  CHECK_THROWS_AS(triple_max_cell_cover(z2.fc, z2.ball, z2.cx, s1, s2, z2.cell("aa", "ab")),
                  NotPairwiseIntersecting);

  Setup a2("a2.json", 5);
  const int h1 = a2.cell("", "ab"), ha = a2.cell("a", "ab"), hb = a2.cell("b", "ab");
  CHECK(triple_max_cell_cover(a2.fc, a2.ball, a2.cx, h1, ha, hb) == h1);
  CHECK(triple_max_cell_cover(a2.fc, a2.ball, a2.cx, ha, ha, ha) == ha);

  // Every pairwise intersecting triple of maximal cells near the identity.
  Setup path("fc_path.json", 5);
  std::vector<int> near;
  for (std::size_t c = 0; c < path.cx.cells().size(); ++c) {
    const auto& cell = path.cx.cells()[c];
    const auto& mx = path.fc.maximal_cliques();
    if (std::find(mx.begin(), mx.end(), cell.type) != mx.end() && path.ball.dist(cell.source) <= 1) {
      near.push_back(static_cast<int>(c));
    }
  }
  int covered = 0;
  for (int x : near) {
    for (int y : near) {
      for (int z : near) {
        const auto& X = path.cx.cell(x).vertices;
        const auto& Y = path.cx.cell(y).vertices;
        const auto& Z = path.cx.cell(z).vertices;
        if (!sets_intersect(X, Y) || !sets_intersect(Y, Z) || !sets_intersect(X, Z)) continue;
        int c = triple_max_cell_cover(path.fc, path.ball, path.cx, x, y, z);
        const auto& C = path.cx.cell(c).vertices;
        for (const auto& p : {set_intersection(X, Y), set_intersection(Y, Z), set_intersection(X, Z)}) {
          CHECK(std::includes(C.begin(), C.end(), p.begin(), p.end()));
        }
        ++covered;
      }
    }
  }
  CHECK(covered > 50);
}

TEST_CASE("cells are determined by vertex set and by sink, and are full") {
  for (const char* name : {"a2.json", "z2.json", "fc_path.json"}) {
    Setup s(name, 4);
    const auto& cells = s.cx.cells();
    std::set<VertexSet> sets;
    std::set<int> top_sinks;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      CHECK(sets.insert(cells[i].vertices).second);
      const int one[1] = {static_cast<int>(i)};
      CHECK_NOTHROW(family_intersection(s.fc, s.cx, one));
    }
    for (GenSet type : s.fc.maximal_cliques()) {
      std::set<int> sinks;
      for (const auto& c : cells) {
        if (c.type == type) CHECK(sinks.insert(c.sink).second);
      }
    }
    for (const auto& small : cells) {
      for (const auto& big : cells) {
        if (!std::includes(big.vertices.begin(), big.vertices.end(), small.vertices.begin(),
                           small.vertices.end())) {
          continue;
        }
        CHECK(is_subset(small.type, big.type));
      }
    }
  }
}

TEST_CASE("projection to the Coxeter group") {
  Setup a2("a2.json", 5);
  const auto& w = a2.fc.clique(a2.fc.graph().all()).group;
  std::vector<CoxElt> image(a2.ball.size());
  for (std::size_t v = 0; v < a2.ball.size(); ++v) {
    std::vector<int> gens;
    for (GenLetter l : a2.ball.word(static_cast<int>(v))) gens.push_back(l.gen);
    image[v] = w.evaluate(gens);
  }
  for (std::size_t v = 0; v < a2.ball.size(); ++v) {
    for (int g = 0; g < 2; ++g) {
      int u = a2.ball.neighbor(static_cast<int>(v), {g, false});
      if (u >= 0) CHECK(w.distance(image[v], image[u]) == 1);
    }
  }
  // Isometric on every cell near the identity.
  for (const auto& c : a2.cx.cells()) {
    if (a2.ball.dist(c.source) > 1) continue;
    for (int x : c.vertices) {
      auto d = bfs(a2.ball, x);
      for (int y : c.vertices) CHECK(d[y] == w.distance(image[x], image[y]));
    }
  }
}

TEST_CASE("standard subcomplex intersections") {
  Setup s("a2.json", 6);
  const std::vector<GenSet> types = {0, 1, 2, 3};
  auto in_core = [&](int v) { return s.ball.dist(v) <= 2; };
  auto core = [&](const VertexSet& vs) {
    VertexSet out;
    for (int v : vs) {
      if (in_core(v)) out.push_back(v);
    }
    return out;
  };
  CHECK(standard_subcomplex(s.ball, 0, 0) == VertexSet{0});
  CHECK(core(standard_subcomplex(s.ball, 0, 1)) == s.vertices({"", "a", "aa", "A", "AA"}));

  std::vector<int> centers;
  for (std::size_t v = 0; v < s.ball.size(); ++v) {
    if (s.ball.dist(static_cast<int>(v)) <= 1) centers.push_back(static_cast<int>(v));
  }
  for (int v : centers) {
    for (GenSet t1 : types) {
      const VertexSet x1 = core(standard_subcomplex(s.ball, v, t1));
      for (int u : centers) {
        for (GenSet t2 : types) {
          const VertexSet x2 = core(standard_subcomplex(s.ball, u, t2));
          const VertexSet both = set_intersection(x1, x2);
          if (both.empty()) continue;
          CHECK(core(standard_subcomplex(s.ball, both.front(), t1 & t2)) == both);
        }
      }
    }
  }
}

TEST_CASE("standard subcomplexes are convex") {
  Setup s("a2.json", 6);
  std::vector<std::vector<int>> dist(s.ball.size());
  auto d = [&](int v) -> const std::vector<int>& {
    if (dist[v].empty()) dist[v] = bfs(s.ball, v);
    return dist[v];
  };
  for (GenSet t : {GenSet{1}, GenSet{2}}) {
    for (int v : {s.vertex(""), s.vertex("b"), s.vertex("aB")}) {
      VertexSet x;
      for (int u : standard_subcomplex(s.ball, v, t)) {
        if (s.ball.dist(u) <= 2) x.push_back(u);
      }
      for (int a : x) {
        for (int b : x) {
          for (std::size_t m = 0; m < s.ball.size(); ++m) {
            const int mm = static_cast<int>(m);
            if (s.ball.dist(mm) > 4) continue;
            if (d(a)[mm] + d(mm)[b] == d(a)[b]) {
              CHECK(std::binary_search(x.begin(), x.end(), mm));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("thickening matches Garside adjacency") {
  Setup a2("a2.json", 4);
  const auto& k = a2.fc.clique(a2.fc.graph().all());
  VertexSet interior;
  SimpleGraph th = ball_thickening(a2.fc, a2.ball, a2.cx, &interior);
  CHECK(interior.size() == Setup("a2.json", 1).ball.size());
  std::vector<GrpElt> elts;
  for (std::size_t v = 0; v < a2.ball.size(); ++v) elts.push_back(k.evaluate(a2.ball.word(static_cast<int>(v))));
  for (int v : interior) {
    for (std::size_t u = 0; u < a2.ball.size(); ++u) {
      if (static_cast<int>(u) == v) continue;
      CHECK(th.adjacent(v, static_cast<int>(u)) == k.garside.helly_adjacent(elts[v], elts[u]));
    }
  }
}

TEST_CASE("cell Helly verification") {
  SUBCASE("passing inputs") {
    struct Case {
      const char* name;
      int radius, margin;
    };
    for (Case c : {Case{"a2.json", 6, 3}, Case{"z2.json", 4, 2}, Case{"fc_path.json", 4, 3}}) {
      Setup s(c.name, c.radius);
      VerifyOptions o;
      o.margin = c.margin;
      auto report = cell_helly_verify(s.fc, s.ball, s.cx, o);
      CHECK(report.pass());
      for (const auto& cond : report.conditions) {
        CHECK(cond.tested > 0);
        CHECK(cond.violations == 0);
      }
    }
  }
  SUBCASE("margin guard") {
    Setup s("a2.json", 4);
    VerifyOptions o;
    o.margin = 2;
    CHECK_THROWS_AS(cell_helly_verify(s.fc, s.ball, s.cx, o), MarginTooSmall);
    o.margin = 5;
    CHECK_THROWS_AS(cell_helly_verify(s.fc, s.ball, s.cx, o), InvalidInput);
  }
  SUBCASE("deterministic across seeds and jobs") {
    Setup s("a2.json", 6);
    VerifyOptions o;
    o.margin = 3;
    o.exhaustive_budget = 100;  // force sampling
    o.samples = 500;
    const std::string one = to_json(cell_helly_verify(s.fc, s.ball, s.cx, o));
    CHECK(one == to_json(cell_helly_verify(s.fc, s.ball, s.cx, o)));
    o.jobs = 3;
    CHECK(one == to_json(cell_helly_verify(s.fc, s.ball, s.cx, o)));
    CHECK(one.find("\"sampled\"") != std::string::npos);
    o.seed = 17;
    CHECK(one != to_json(cell_helly_verify(s.fc, s.ball, s.cx, o)));
  }
}

TEST_CASE("synthetic complexes") {
  std::ifstream in(fixture("cube_2skeleton.json"));
  std::stringstream text;
  text << in.rdbuf();
  REQUIRE(SyntheticComplex::looks_synthetic(text.str()));
  auto cube = SyntheticComplex::from_json_text(text.str());
  CHECK(cube.vertex_names.size() == 7);
  CHECK(cube.cells.size() == 19);
  auto report = verify_synthetic(cube, {});
  CHECK(report.conditions[0].violations == 0);
  CHECK(report.conditions[1].violations == 0);
  CHECK(report.conditions[2].violations == 1);
  REQUIRE(report.conditions[2].counterexamples.size() == 1);
  CHECK(report.conditions[2].counterexamples[0].find("Sxy Syz Sxz") != std::string::npos);
  CHECK_FALSE(report.pass());

  // With the 3-cell added the triple is covered.
  auto solid = cube;
  solid.vertex_names.push_back("xyz");
  VertexSet all(8);
  for (int i = 0; i < 8; ++i) all[i] = i;
  solid.cells.push_back(all);
  solid.cell_names.push_back("K");
  CHECK(verify_synthetic(solid, {}).pass());

  // Squares alone: their edges are missing, so pairwise intersections fail.
  auto bare = SyntheticComplex::from_json_text(
      R"([["o","x","y","xy"],["o","y","z","yz"],["o","x","z","xz"]])");
  CHECK(verify_synthetic(bare, {}).conditions[0].violations == 3);

  CHECK_FALSE(SyntheticComplex::looks_synthetic(R"({"vertices": ["a"], "edges": []})"));
  CHECK_THROWS_AS(SyntheticComplex::from_json_text("[]"), InvalidInput);
  CHECK_THROWS_AS(SyntheticComplex::from_json_text(R"({"cells": [{"name": "x"}]})"), InvalidInput);
}

TEST_CASE("exports") {
  Setup a2("a2.json", 3);
  const std::string dot = complex_to_dot(a2.fc, a2.ball, a2.cx);
  CHECK(dot.rfind("digraph salvetti_ball {", 0) == 0);
  CHECK(dot.find("label=\"a b\"") != std::string::npos);
  CHECK(dot.find("// cell") != std::string::npos);
  const std::string js = ball_to_json(a2.fc, a2.ball, a2.cx);
  CHECK(js.find("\"vertex_count\": " + std::to_string(a2.ball.size())) != std::string::npos);
  CHECK(js.find("\"oracle\": \"spherical-garside\"") != std::string::npos);
}
