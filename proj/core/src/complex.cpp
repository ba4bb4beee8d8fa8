#include "cellhelly/complex.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "cellhelly/errors.hpp"
#include "json.hpp"

namespace cellhelly {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- ball

std::size_t CayleyBall::FormHash::operator()(const NormalForm& f) const noexcept {
  std::size_t h = f.size();
  for (int x : f) h = h * 1000003U ^ static_cast<std::size_t>(x + 0x9e3779b9);
  return h;
}

CayleyBall CayleyBall::build(const FCGraph& fc, const WordOracle& oracle, int radius) {
  if (radius < 0) throw InvalidInput("radius must be non-negative");
  CayleyBall b;
  b.radius_ = radius;
  b.rank_ = fc.graph().size();
  b.oracle_kind_ = oracle.kind();
  const int r2 = 2 * b.rank_;

  auto add = [&b](NormalForm f, int dist, int parent, int code) {
    b.index_.emplace(f, static_cast<int>(b.forms_.size()));
    b.forms_.push_back(std::move(f));
    b.dist_.push_back(dist);
    b.parent_.emplace_back(parent, code);
  };
  add(oracle.identity(), 0, -1, -1);

  for (std::size_t v = 0; v < b.forms_.size(); ++v) {
    for (int code = 0; code < r2; ++code) {
      NormalForm f = oracle.multiply(b.forms_[v], {code / 2, (code & 1) != 0});
      auto it = b.index_.find(f);
      int u = -1;
      if (it != b.index_.end()) {
        u = it->second;
      } else if (b.dist_[v] < radius) {
        u = static_cast<int>(b.forms_.size());
        add(std::move(f), b.dist_[v] + 1, static_cast<int>(v), code);
      }
      b.nbr_.push_back(u);
    }
  }

  // Every edge must be seen from both ends and join adjacent layers.
  for (std::size_t v = 0; v < b.forms_.size(); ++v) {
    for (int code = 0; code < r2; ++code) {
      int u = b.nbr_[v * r2 + code];
      if (u < 0) continue;
      if (b.nbr_[static_cast<std::size_t>(u) * r2 + (code ^ 1)] != static_cast<int>(v) ||
          std::abs(b.dist_[u] - b.dist_[v]) > 1) {
        throw Error("word oracle is inconsistent at ball vertex " + std::to_string(v));
      }
    }
  }
  return b;
}

int CayleyBall::find(const NormalForm& form) const {
  auto it = index_.find(form);
  return it == index_.end() ? -1 : it->second;
}

int CayleyBall::walk(int v, std::span<const GenLetter> word) const {
  for (GenLetter l : word) {
    if (v < 0) return -1;
    v = neighbor(v, l);
  }
  return v;
}

std::vector<GenLetter> CayleyBall::word(int v) const {
  std::vector<GenLetter> out;
  while (parent_.at(v).first >= 0) {
    int code = parent_[v].second;
    out.push_back({code / 2, (code & 1) != 0});
    v = parent_[v].first;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

SimpleGraph CayleyBall::cayley_graph() const {
  SimpleGraph g(size());
  for (std::size_t v = 0; v < size(); ++v) {
    for (int gen = 0; gen < rank_; ++gen) {
      int u = neighbor(static_cast<int>(v), {gen, false});
      if (u >= 0) g.add_edge(static_cast<int>(v), u);
    }
  }
  return g;
}

// ---------------------------------------------------------------- cells

CellComplex CellComplex::build(const FCGraph& fc, const CayleyBall& ball) {
  CellComplex cx;
  cx.at_.resize(ball.size());

  // Each simple is its ShortLex prefix times one more generator.
  struct Recipe {
    const SphericalClique* clique;
    std::vector<int> prefix;
    std::vector<int> last;
  };
  std::vector<Recipe> recipes;
  for (const auto& c : fc.cliques()) {
    Recipe r{&c, {}, {}};
    const auto order = c.group.order();
    r.prefix.assign(order, 0);
    r.last.assign(order, -1);
    for (std::size_t s = 1; s < order; ++s) {
      const auto& w = c.group.word({static_cast<int>(s)});
      r.prefix[s] = c.group.evaluate(std::span<const int>(w.data(), w.size() - 1)).index;
      r.last[s] = c.generators[w.back()];
    }
    recipes.push_back(std::move(r));
  }

  for (std::size_t v = 0; v < ball.size(); ++v) {
    for (const Recipe& r : recipes) {
      const std::size_t order = r.prefix.size();
      std::vector<int> by_simple(order, -1);
      by_simple[0] = static_cast<int>(v);
      bool inside = true;
      for (std::size_t s = 1; s < order && inside; ++s) {
        by_simple[s] = ball.neighbor(by_simple[r.prefix[s]], {r.last[s], false});
        inside = by_simple[s] >= 0;
      }
      if (!inside) continue;
      SCell cell;
      cell.source = static_cast<int>(v);
      cell.type = r.clique->mask;
      cell.sink = by_simple[r.clique->garside.delta()];
      cell.vertices = by_simple;
      std::sort(cell.vertices.begin(), cell.vertices.end());
      cell.by_simple = std::move(by_simple);
      const int id = static_cast<int>(cx.cells_.size());
      cx.index_.emplace((static_cast<std::uint64_t>(v) << 32) | cell.type, id);
      for (int u : cell.vertices) cx.at_[u].push_back(id);
      cx.cells_.push_back(std::move(cell));
    }
  }
  return cx;
}

int CellComplex::find(int source, GenSet type) const {
  if (source < 0) return -1;
  auto it = index_.find((static_cast<std::uint64_t>(source) << 32) | type);
  return it == index_.end() ? -1 : it->second;
}

int CellComplex::local_simple(int id, int vertex) const {
  const auto& bs = cells_.at(id).by_simple;
  auto it = std::find(bs.begin(), bs.end(), vertex);
  return it == bs.end() ? -1 : static_cast<int>(it - bs.begin());
}

// ---------------------------------------------------------------- intersections

std::optional<CellInterval> family_intersection(const FCGraph& fc, const CellComplex& cx,
                                                std::span<const int> cells) {
  if (cells.empty()) throw InvalidInput("empty cell family");
  VertexSet common = cx.cell(cells[0]).vertices;
  for (std::size_t i = 1; i < cells.size() && !common.empty(); ++i) {
    common = set_intersection(common, cx.cell(cells[i]).vertices);
  }
  if (common.empty()) return std::nullopt;

  // Interval certificate in the prefix order of the first cell.
  const SCell& first = cx.cell(cells[0]);
  const auto& gs = fc.clique(first.type).garside;
  std::vector<int> local;
  for (int v : common) local.push_back(cx.local_simple(cells[0], v));
  int lo = local[0], hi = local[0];
  for (int s : local) {
    if (gs.length(s) < gs.length(lo)) lo = s;
    if (gs.length(s) > gs.length(hi)) hi = s;
  }
  bool ok = std::all_of(local.begin(), local.end(), [&](int s) {
    return gs.simple_prefix_leq(lo, s) && gs.simple_prefix_leq(s, hi);
  });
  if (ok) {
    std::size_t between = 0;
    for (std::size_t s = 0; s < gs.size(); ++s) {
      int t = static_cast<int>(s);
      if (gs.simple_prefix_leq(lo, t) && gs.simple_prefix_leq(t, hi)) ++between;
    }
    ok = between == common.size();
  }
  if (!ok) {
    throw IntervalViolation("intersection of " + std::to_string(cells.size()) + " cells (" +
                            std::to_string(common.size()) +
                            " vertices) is not an interval of the first cell");
  }
  return CellInterval{first.by_simple[lo], first.by_simple[hi], std::move(common)};
}

std::optional<CellInterval> cell_intersection_x(const FCGraph& fc, const CellComplex& cx,
                                                int c1, int c2) {
  const int pair[2] = {c1, c2};
  return family_intersection(fc, cx, pair);
}

namespace {

// Generators labelling edges with both ends in `vs`.
GenSet edge_type(const CayleyBall& ball, const VertexSet& vs) {
  GenSet mask = 0;
  for (int v : vs) {
    for (int g = 0; g < ball.rank(); ++g) {
      int u = ball.neighbor(v, {g, false});
      if (u >= 0 && std::binary_search(vs.begin(), vs.end(), u)) mask |= GenSet{1} << g;
    }
  }
  return mask;
}

}  // namespace

int triple_max_cell_cover(const FCGraph& fc, const CayleyBall& ball, const CellComplex& cx,
                          int c1, int c2, int c3) {
  const int ids[3] = {c1, c2, c3};
  VertexSet pair[3];
  for (int i = 0; i < 3; ++i) {
    pair[i] = set_intersection(cx.cell(ids[i]).vertices, cx.cell(ids[(i + 1) % 3]).vertices);
    if (pair[i].empty()) throw NotPairwiseIntersecting("cells do not pairwise intersect");
  }
  const VertexSet triple = set_intersection(pair[0], cx.cell(c3).vertices);
  if (triple.empty()) throw Error("pairwise intersecting cells have empty triple intersection");
  const int hv = triple.front();

  // The pairwise intersections live in the standard subcomplex of type Γ0
  // through hv; Γ0 is the union of their types, already a clique.
  GenSet g0 = 0;
  for (const auto& p : pair) g0 |= edge_type(ball, p);
  VertexSet d;
  for (const auto& p : pair) d.insert(d.end(), p.begin(), p.end());
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());

  int fv = hv;
  if (g0 != 0) {
    const SphericalClique& t = fc.clique(g0);
    GCell local[3];
    for (int i = 0; i < 3; ++i) {
      const SCell& cell = cx.cell(ids[i]);
      const SphericalClique& xi = fc.clique(cell.type);
      const int s_h = cx.local_simple(ids[i], hv);
      const int s0 = xi.group.min_coset_representative({s_h}, xi.local_mask(g0)).index;
      const int q = xi.garside.right_quotient(s0, s_h);
      if (q < 0) throw Error("minimal coset representative is not a prefix");
      local[i].base = t.garside.inverse(t.evaluate(xi.spell(xi.garside.from_simple(q))));
    }
    const GrpElt h;
    const TripleCover cover = t.garside.triple_cell_cover(local[0], local[1], local[2], &h);
    fv = ball.walk(hv, t.spell(cover.cell.base));
    if (fv < 0) throw BoundaryReached("covering cell source lies outside the ball");
  }
  const int id = cx.find(fv, fc.maximal_containing(g0));
  if (id < 0) throw BoundaryReached("covering cell leaves the ball");
  if (!std::includes(cx.cell(id).vertices.begin(), cx.cell(id).vertices.end(), d.begin(),
                     d.end())) {
    throw Error("covering cell misses part of the pairwise intersections");
  }
  return id;
}

VertexSet standard_subcomplex(const CayleyBall& ball, int v, GenSet type) {
  std::vector<char> seen(ball.size(), 0);
  VertexSet out{v};
  seen[v] = 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int g : members(type)) {
      for (bool inv : {false, true}) {
        int u = ball.neighbor(out[i], {g, inv});
        if (u >= 0 && !seen[u]) {
          seen[u] = 1;
          out.push_back(u);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- export

namespace {

std::string vertex_label(const FCGraph& fc, const CayleyBall& ball, int v) {
  return letters_string(fc.graph(), ball.word(v));
}

std::string cell_label(const FCGraph& fc, const CayleyBall& ball, const SCell& c) {
  return "[" + vertex_label(fc, ball, c.source) + "; " + fc.graph().describe(c.type) + "]";
}

json type_json(const FCGraph& fc, GenSet type) {
  json a = json::array();
  for (int g : members(type)) a.push_back(fc.graph().name(g));
  return a;
}

}  // namespace

std::string complex_to_dot(const FCGraph& fc, const CayleyBall& ball, const CellComplex& cx) {
  std::ostringstream out;
  out << "digraph salvetti_ball {\n";
  for (std::size_t v = 0; v < ball.size(); ++v) {
    out << "  v" << v << " [label=\"" << vertex_label(fc, ball, static_cast<int>(v)) << "\"];\n";
  }
  for (std::size_t v = 0; v < ball.size(); ++v) {
    for (int g = 0; g < ball.rank(); ++g) {
      int u = ball.neighbor(static_cast<int>(v), {g, false});
      if (u >= 0) out << "  v" << v << " -> v" << u << " [label=\"" << fc.graph().name(g) << "\"];\n";
    }
  }
  // Cells of dimension >= 2 as comments; vertices and edges are already drawn.
  for (std::size_t id = 0; id < cx.cells().size(); ++id) {
    const SCell& c = cx.cells()[id];
    if (members(c.type).size() < 2) continue;
    out << "  // cell " << id << " type " << fc.graph().describe(c.type) << " source v" << c.source
        << " sink v" << c.sink << ":";
    for (int u : c.vertices) out << " v" << u;
    out << "\n";
  }
  out << "}\n";
  return out.str();
}

std::string ball_to_json(const FCGraph& fc, const CayleyBall& ball, const CellComplex& cx) {
  json doc;
  doc["oracle"] = ball.oracle_kind();
  doc["radius"] = ball.radius();
  doc["vertex_count"] = ball.size();
  doc["cell_count"] = cx.cells().size();
  json vertices = json::array();
  for (std::size_t v = 0; v < ball.size(); ++v) {
    json e;
    e["id"] = v;
    e["word"] = vertex_label(fc, ball, static_cast<int>(v));
    e["dist"] = ball.dist(static_cast<int>(v));
    vertices.push_back(std::move(e));
  }
  doc["vertices"] = std::move(vertices);
  json edges = json::array();
  for (std::size_t v = 0; v < ball.size(); ++v) {
    for (int g = 0; g < ball.rank(); ++g) {
      int u = ball.neighbor(static_cast<int>(v), {g, false});
      if (u >= 0) edges.push_back(json::array({v, u, fc.graph().name(g)}));
    }
  }
  doc["edges"] = std::move(edges);
  json cells = json::array();
  for (const SCell& c : cx.cells()) {
    json e;
    e["source"] = c.source;
    e["type"] = type_json(fc, c.type);
    e["sink"] = c.sink;
    e["vertices"] = c.vertices;
    cells.push_back(std::move(e));
  }
  doc["cells"] = std::move(cells);
  return doc.dump(2) + "\n";
}

SimpleGraph ball_thickening(const FCGraph& fc, const CayleyBall& ball, const CellComplex& cx,
                            VertexSet* interior) {
  std::vector<VertexSet> sets;
  sets.reserve(cx.cells().size());
  for (const SCell& c : cx.cells()) {
    if (c.type != 0) sets.push_back(c.vertices);
  }
  SimpleGraph g = thickening(ball.size(), sets);
  if (interior) {
    interior->clear();
    const int limit = ball.radius() - fc.max_delta_length();
    for (std::size_t v = 0; v < ball.size(); ++v) {
      if (ball.dist(static_cast<int>(v)) <= limit) interior->push_back(static_cast<int>(v));
    }
  }
  return g;
}

// ---------------------------------------------------------------- verification

bool VerifyReport::pass() const {
  return std::all_of(std::begin(conditions), std::end(conditions),
                     [](const ConditionReport& c) { return c.violations == 0; });
}

std::string to_json(const VerifyReport& report) {
  json doc;
  doc["input"] = report.input;
  doc["oracle"] = report.oracle;
  doc["radius"] = report.radius;
  doc["margin"] = report.margin;
  doc["seed"] = report.seed;
  doc["ball_vertices"] = report.ball_vertices;
  doc["cells"] = report.cells;
  doc["interior_cells"] = report.interior_cells;
  json conds = json::array();
  std::size_t total = 0;
  for (const auto& c : report.conditions) {
    json e;
    e["id"] = c.id;
    e["name"] = c.name;
    e["mode"] = c.mode;
    e["tested"] = c.tested;
    e["skipped"] = c.skipped;
    e["violations"] = c.violations;
    e["counterexamples"] = c.counterexamples;
    conds.push_back(std::move(e));
    total += c.violations;
  }
  doc["conditions"] = std::move(conds);
  doc["violations"] = total;
  doc["verdict"] = report.pass() ? "pass" : "fail";
  return doc.dump(2) + "\n";
}

namespace {

constexpr std::size_t kMaxCounterexamples = 5;

const char* kConditionNames[3] = {
    "pairwise intersections are intervals",
    "pairwise intersecting families meet",
    "triples of maximal cells have a covering cell",
};

// Families of pairwise intersecting cells drawn from a pool. The pool is a
// subset of all cells; cells intersecting a pool cell but outside the pool
// make families "skipped".
class FamilySource {
 public:
  FamilySource(const CellComplex& cx, std::vector<char> in_pool) : cx_(cx), pool_(std::move(in_pool)) {
    for (std::size_t c = 0; c < pool_.size(); ++c) {
      if (pool_[c]) members_.push_back(static_cast<int>(c));
    }
  }

  std::size_t pool_size() const { return members_.size(); }

  // Pairwise intersecting families of pool cells with ascending ids and
  // size in [kmin, kmax]; nullopt once more than `budget` exist. `skipped`
  // counts families whose only non-pool member is one extra cell.
  std::optional<std::vector<std::vector<int>>> exhaustive(int kmin, int kmax, std::size_t budget,
                                                         std::size_t& skipped) const {
    std::vector<std::vector<int>> out;
    skipped = 0;
    std::vector<int> family;
    bool overflow = false;
    for (int c : members_) {
      family.assign(1, c);
      extend(family, higher_pool_neighbors(c), kmin, kmax, budget, out, skipped, overflow);
      if (overflow) return std::nullopt;
    }
    return out;
  }

  // Random pairwise intersecting families, grown one cell at a time through a
  // vertex of an already chosen cell.
  std::vector<std::vector<int>> sampled(int kmin, int kmax, std::size_t samples, std::mt19937_64& rng,
                                        std::size_t& skipped) const {
    std::vector<std::vector<int>> out;
    skipped = 0;
    if (members_.empty()) return out;
    for (std::size_t n = 0; n < samples; ++n) {
      const int k = std::uniform_int_distribution<int>(kmin, kmax)(rng);
      std::vector<int> family{members_[std::uniform_int_distribution<std::size_t>(0, members_.size() - 1)(rng)]};
      for (int tries = 0; static_cast<int>(family.size()) < k && tries < 64; ++tries) {
        const SCell& base = cx_.cell(family[std::uniform_int_distribution<std::size_t>(0, family.size() - 1)(rng)]);
        int v = base.vertices[std::uniform_int_distribution<std::size_t>(0, base.vertices.size() - 1)(rng)];
        const auto& at = cx_.cells_at(v);
        int c = at[std::uniform_int_distribution<std::size_t>(0, at.size() - 1)(rng)];
        if (std::find(family.begin(), family.end(), c) != family.end()) continue;
        bool meets_all = std::all_of(family.begin(), family.end(), [&](int f) {
          return sets_intersect(cx_.cell(f).vertices, cx_.cell(c).vertices);
        });
        if (!meets_all) continue;
        if (!pool_[c]) {
          ++skipped;
          continue;
        }
        family.push_back(c);
      }
      if (static_cast<int>(family.size()) == k) {
        std::sort(family.begin(), family.end());
        out.push_back(std::move(family));
      }
    }
    return out;
  }

 private:
  std::vector<int> neighbors(int c) const {
    std::vector<int> out;
    for (int v : cx_.cell(c).vertices) {
      const auto& at = cx_.cells_at(v);
      out.insert(out.end(), at.begin(), at.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.erase(std::remove(out.begin(), out.end(), c), out.end());
    return out;
  }

  std::vector<int> higher_pool_neighbors(int c) const {
    std::vector<int> out;
    for (int d : neighbors(c)) {
      if (d > c && pool_[d]) out.push_back(d);
    }
    return out;
  }

  void extend(std::vector<int>& family, const std::vector<int>& candidates, int kmin, int kmax,
              std::size_t budget, std::vector<std::vector<int>>& out, std::size_t& skipped,
              bool& overflow) const {
    const int k = static_cast<int>(family.size());
    if (k >= kmin) {
      out.push_back(family);
      if (out.size() > budget) {
        overflow = true;
        return;
      }
    }
    if (k + 1 >= kmin && k + 1 <= kmax) {
      for (int d : neighbors(family[0])) {
        if (pool_[d]) continue;
        bool meets_all = std::all_of(family.begin() + 1, family.end(), [&](int f) {
          return sets_intersect(cx_.cell(f).vertices, cx_.cell(d).vertices);
        });
        if (meets_all) ++skipped;
      }
    }
    if (k == kmax) return;
    for (std::size_t i = 0; i < candidates.size() && !overflow; ++i) {
      const int c = candidates[i];
      std::vector<int> next;
      for (std::size_t j = i + 1; j < candidates.size(); ++j) {
        if (sets_intersect(cx_.cell(c).vertices, cx_.cell(candidates[j]).vertices)) {
          next.push_back(candidates[j]);
        }
      }
      family.push_back(c);
      extend(family, next, kmin, kmax, budget, out, skipped, overflow);
      family.pop_back();
    }
  }

  const CellComplex& cx_;
  std::vector<char> pool_;
  std::vector<int> members_;
};

enum class Outcome : char { ok, skipped, violation };

struct Result {
  Outcome outcome = Outcome::ok;
  std::string message;
};

// Evaluates `check` on every family, split across `jobs` threads; results
// stay in family order so the report does not depend on scheduling.
template <class Check>
std::vector<Result> run_families(const std::vector<std::vector<int>>& families, int jobs,
                                 const Check& check) {
  std::vector<Result> results(families.size());
  const std::size_t n = families.size();
  const std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(n, 1));
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) results[i] = check(families[i]);
  };
  if (threads == 1) {
    work(0, n);
    return results;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk, end = std::min(n, begin + chunk);
    if (begin < end) pool.emplace_back(work, begin, end);
  }
  for (auto& th : pool) th.join();
  return results;
}

void merge(ConditionReport& report, const std::vector<std::vector<int>>& families,
           const std::vector<Result>& results,
           const std::function<std::string(const std::vector<int>&)>& describe) {
  for (std::size_t i = 0; i < results.size(); ++i) {
    switch (results[i].outcome) {
      case Outcome::ok:
        ++report.tested;
        break;
      case Outcome::skipped:
        ++report.skipped;
        break;
      case Outcome::violation:
        ++report.tested;
        ++report.violations;
        if (report.counterexamples.size() < kMaxCounterexamples) {
          report.counterexamples.push_back(describe(families[i]) + ": " + results[i].message);
        }
        break;
    }
  }
}

// Exhaustive when the family count fits the budget, sampled otherwise.
std::vector<std::vector<int>> draw(const FamilySource& source, int kmin, int kmax,
                                   const VerifyOptions& options, std::mt19937_64& rng,
                                   ConditionReport& report) {
  std::size_t skipped = 0;
  auto all = source.exhaustive(kmin, kmax, options.exhaustive_budget, skipped);
  if (all) {
    report.mode = "exhaustive";
    report.skipped += skipped;
    return std::move(*all);
  }
  report.mode = "sampled";
  auto some = source.sampled(kmin, kmax, options.samples, rng, skipped);
  report.skipped += skipped;
  return some;
}

}  // namespace

VerifyReport cell_helly_verify(const FCGraph& fc, const CayleyBall& ball, const CellComplex& cx,
                               const VerifyOptions& options) {
  const int need = fc.max_delta_length();
  if (options.margin < need) {
    throw MarginTooSmall("margin " + std::to_string(options.margin) +
                         " is below the longest Δ length " + std::to_string(need));
  }
  if (options.margin > ball.radius()) {
    throw InvalidInput("margin " + std::to_string(options.margin) + " exceeds radius " +
                       std::to_string(ball.radius()));
  }
  if (options.max_family < 3) throw InvalidInput("max_family must be at least 3");

  VerifyReport report;
  report.oracle = ball.oracle_kind();
  report.radius = ball.radius();
  report.margin = options.margin;
  report.seed = options.seed;
  report.ball_vertices = ball.size();
  report.cells = cx.cells().size();

  // A cell is interior when it meets B(R - margin); it then lies in the ball.
  const int inner = ball.radius() - options.margin;
  std::vector<char> interior(cx.cells().size(), 0), maximal(cx.cells().size(), 0);
  const auto& max_types = fc.maximal_cliques();
  for (std::size_t c = 0; c < cx.cells().size(); ++c) {
    const SCell& cell = cx.cells()[c];
    interior[c] = std::any_of(cell.vertices.begin(), cell.vertices.end(),
                              [&](int v) { return ball.dist(v) <= inner; });
    if (interior[c]) ++report.interior_cells;
    maximal[c] = interior[c] &&
                 std::find(max_types.begin(), max_types.end(), cell.type) != max_types.end();
  }

  std::mt19937_64 rng(options.seed);
  auto describe = [&](const std::vector<int>& family) {
    std::string s;
    for (int c : family) s += (s.empty() ? "" : " ") + cell_label(fc, ball, cx.cell(c));
    return s;
  };
  for (int i = 0; i < 3; ++i) {
    report.conditions[i].id = i + 1;
    report.conditions[i].name = kConditionNames[i];
  }

  FamilySource all_interior(cx, interior);
  {
    auto& rep = report.conditions[0];
    auto families = draw(all_interior, 2, 2, options, rng, rep);
    auto results = run_families(families, options.jobs, [&](const std::vector<int>& f) {
      try {
        family_intersection(fc, cx, f);
        return Result{};
      } catch (const IntervalViolation& e) {
        return Result{Outcome::violation, e.what()};
      }
    });
    merge(rep, families, results, describe);
  }
  {
    auto& rep = report.conditions[1];
    auto families = draw(all_interior, 3, options.max_family, options, rng, rep);
    auto results = run_families(families, options.jobs, [&](const std::vector<int>& f) {
      try {
        if (!family_intersection(fc, cx, f)) return Result{Outcome::violation, "empty intersection"};
        return Result{};
      } catch (const IntervalViolation& e) {
        return Result{Outcome::violation, e.what()};
      }
    });
    merge(rep, families, results, describe);
  }
  {
    auto& rep = report.conditions[2];
    FamilySource maximal_interior(cx, maximal);
    auto families = draw(maximal_interior, 3, 3, options, rng, rep);
    auto results = run_families(families, options.jobs, [&](const std::vector<int>& f) {
      try {
        triple_max_cell_cover(fc, ball, cx, f[0], f[1], f[2]);
        return Result{};
      } catch (const BoundaryReached&) {
        return Result{Outcome::skipped, {}};
      } catch (const Error& e) {
        return Result{Outcome::violation, e.what()};
      }
    });
    merge(rep, families, results, describe);
  }
  return report;
}

// ---------------------------------------------------------------- synthetic

namespace {

std::string name_of(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

}  // namespace

SyntheticComplex SyntheticComplex::from_json_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("synthetic complex is not valid JSON: ") + e.what());
  }
  const json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("cells")) throw InvalidInput("synthetic complex needs a \"cells\" list");
    list = &doc["cells"];
  }
  if (!list->is_array() || list->empty()) throw InvalidInput("synthetic complex has no cells");

  SyntheticComplex out;
  std::map<std::string, int> ids;
  for (const auto& entry : *list) {
    const json* vs = &entry;
    std::string name = "C" + std::to_string(out.cells.size());
    if (entry.is_object()) {
      if (!entry.contains("vertices")) throw InvalidInput("cell without \"vertices\"");
      vs = &entry["vertices"];
      if (entry.contains("name")) name = name_of(entry["name"]);
    }
    if (!vs->is_array() || vs->empty()) throw InvalidInput("cell " + name + " has no vertices");
    VertexSet cell;
    for (const auto& v : *vs) {
      auto [it, fresh] = ids.emplace(name_of(v), static_cast<int>(out.vertex_names.size()));
      if (fresh) out.vertex_names.push_back(it->first);
      cell.push_back(it->second);
    }
    std::sort(cell.begin(), cell.end());
    cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
    out.cells.push_back(std::move(cell));
    out.cell_names.push_back(std::move(name));
  }
  return out;
}

bool SyntheticComplex::looks_synthetic(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) return false;
  return doc.is_array() || (doc.is_object() && doc.contains("cells"));
}

VerifyReport verify_synthetic(const SyntheticComplex& complex, const VerifyOptions& options) {
  VerifyReport report;
  report.oracle = "synthetic";
  report.seed = options.seed;
  report.ball_vertices = complex.vertex_names.size();
  report.cells = report.interior_cells = complex.cells.size();
  const auto& cells = complex.cells;
  const int n = static_cast<int>(cells.size());
  auto describe = [&](std::initializer_list<int> ids) {
    std::string s;
    for (int c : ids) s += (s.empty() ? "" : " ") + complex.cell_names[c];
    return s;
  };
  auto note = [](ConditionReport& rep, bool ok, const std::string& what) {
    ++rep.tested;
    if (ok) return;
    ++rep.violations;
    if (rep.counterexamples.size() < kMaxCounterexamples) rep.counterexamples.push_back(what);
  };
  for (int i = 0; i < 3; ++i) {
    report.conditions[i].id = i + 1;
    report.conditions[i].name = kConditionNames[i];
    report.conditions[i].mode = "exhaustive";
  }
  report.conditions[0].name = "pairwise intersections are cells";

  const std::set<VertexSet> as_set(cells.begin(), cells.end());
  std::vector<std::vector<char>> meets(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) meets[i][j] = sets_intersect(cells[i], cells[j]);
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!meets[i][j]) continue;
      note(report.conditions[0], as_set.count(set_intersection(cells[i], cells[j])) > 0,
           describe({i, j}) + ": intersection is not a cell");
    }
  }

  std::vector<int> family;
  std::function<void(int, const VertexSet&)> grow = [&](int from, const VertexSet& common) {
    if (static_cast<int>(family.size()) >= 3) {
      std::string d;
      for (int c : family) d += (d.empty() ? "" : " ") + complex.cell_names[c];
      note(report.conditions[1], !common.empty(), d + ": empty intersection");
    }
    if (static_cast<int>(family.size()) == options.max_family) return;
    for (int c = from; c < n; ++c) {
      if (!std::all_of(family.begin(), family.end(), [&](int f) { return meets[f][c]; })) continue;
      family.push_back(c);
      grow(c + 1, family.size() == 1 ? cells[c] : set_intersection(common, cells[c]));
      family.pop_back();
    }
  };
  grow(0, {});

  std::vector<int> maximal;
  for (int i = 0; i < n; ++i) {
    bool inside_other = false;
    for (int j = 0; j < n && !inside_other; ++j) {
      inside_other = j != i && cells[j].size() > cells[i].size() &&
                     std::includes(cells[j].begin(), cells[j].end(), cells[i].begin(), cells[i].end());
    }
    if (!inside_other) maximal.push_back(i);
  }
  for (std::size_t a = 0; a < maximal.size(); ++a) {
    for (std::size_t b = a + 1; b < maximal.size(); ++b) {
      for (std::size_t c = b + 1; c < maximal.size(); ++c) {
        const int x = maximal[a], y = maximal[b], z = maximal[c];
        if (!meets[x][y] || !meets[y][z] || !meets[x][z]) continue;
        VertexSet d = set_intersection(cells[x], cells[y]);
        for (const auto& p : {set_intersection(cells[y], cells[z]), set_intersection(cells[x], cells[z])}) {
          d.insert(d.end(), p.begin(), p.end());
        }
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
        bool covered = std::any_of(cells.begin(), cells.end(), [&](const VertexSet& cell) {
          return std::includes(cell.begin(), cell.end(), d.begin(), d.end());
        });
        note(report.conditions[2], covered,
             describe({x, y, z}) + ": no cell contains the pairwise intersections");
      }
    }
  }
  return report;
}

}  // namespace cellhelly
