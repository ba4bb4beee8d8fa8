#include "cellhelly/simple_graph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include "cellhelly/errors.hpp"
#include "json.hpp"

namespace cellhelly {

SimpleGraph::SimpleGraph(std::size_t n) : adj_(n), names_(n) {}

std::size_t SimpleGraph::edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& a : adj_) total += a.size();
  return total / 2;
}

void SimpleGraph::add_edge(int u, int v) {
  if (u == v) throw InvalidInput("loop at vertex " + std::to_string(u));
  auto insert = [](std::vector<int>& list, int x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it == list.end() || *it != x) list.insert(it, x);
  };
  insert(adj_.at(u), v);
  insert(adj_.at(v), u);
}

bool SimpleGraph::adjacent(int u, int v) const {
  const auto& a = adj_.at(u);
  return std::binary_search(a.begin(), a.end(), v);
}

void SimpleGraph::set_name(int v, std::string name) { names_.at(v) = std::move(name); }

std::string SimpleGraph::name(int v) const {
  const auto& n = names_.at(v);
  return n.empty() ? std::to_string(v) : n;
}

SimpleGraph SimpleGraph::parse_edge_list(std::istream& in) {
  std::unordered_map<std::string, int> index;
  std::vector<std::string> order;
  std::vector<std::pair<int, int>> edges;
  auto id = [&](const std::string& token) {
    auto [it, inserted] = index.emplace(token, static_cast<int>(order.size()));
    if (inserted) order.push_back(token);
    return it->second;
  };
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.empty()) continue;
    if (parts.size() > 2) {
      throw InvalidInput("edge list line " + std::to_string(line_no) +
                         ": expected 'u v', got " + std::to_string(parts.size()) +
                         " tokens");
    }
    int u = id(parts[0]);
    if (parts.size() == 2) {
      int v = id(parts[1]);
      if (u == v) {
        throw InvalidInput("edge list line " + std::to_string(line_no) + ": loop");
      }
      edges.emplace_back(u, v);
    }
  }
  SimpleGraph g(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) g.set_name(static_cast<int>(i), order[i]);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

std::string SimpleGraph::to_edge_list() const {
  std::ostringstream out;
  for (std::size_t u = 0; u < size(); ++u) {
    if (adj_[u].empty()) out << name(static_cast<int>(u)) << '\n';
    for (int v : adj_[u]) {
      if (static_cast<int>(u) < v) out << name(static_cast<int>(u)) << ' ' << name(v) << '\n';
    }
  }
  return out.str();
}

std::string SimpleGraph::to_dot(const std::string& graph_name) const {
  std::ostringstream out;
  out << "graph " << graph_name << " {\n";
  for (std::size_t u = 0; u < size(); ++u) {
    out << "  \"" << name(static_cast<int>(u)) << "\";\n";
  }
  for (std::size_t u = 0; u < size(); ++u) {
    for (int v : adj_[u]) {
      if (static_cast<int>(u) < v) {
        out << "  \"" << name(static_cast<int>(u)) << "\" -- \"" << name(v) << "\";\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

SimpleGraph thickening(std::size_t vertex_count, std::span<const VertexSet> cells) {
  std::vector<std::vector<int>> adj(vertex_count);
  for (const auto& cell : cells) {
    for (int u : cell) {
      if (u < 0 || static_cast<std::size_t>(u) >= vertex_count) {
        throw InvalidInput("cell vertex " + std::to_string(u) + " outside vertex range");
      }
      for (int v : cell) {
        if (u != v) adj[u].push_back(v);
      }
    }
  }
  SimpleGraph g(vertex_count);
  for (std::size_t u = 0; u < vertex_count; ++u) {
    auto& list = adj[u];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (int v : list) {
      if (static_cast<int>(u) < v) g.add_edge(static_cast<int>(u), v);
    }
  }
  return g;
}

namespace {

void bron_kerbosch(const SimpleGraph& g, VertexSet& r, VertexSet p, VertexSet x,
                   std::vector<VertexSet>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    std::sort(out.back().begin(), out.back().end());
    return;
  }
  // Pivot maximizing |P ∩ N(u)|.
  int pivot = -1;
  std::size_t best = 0;
  for (const auto* pool : {&p, &x}) {
    for (int u : *pool) {
      std::size_t c = set_intersection(p, g.neighbors(u)).size();
      if (pivot < 0 || c > best) {
        pivot = u;
        best = c;
      }
    }
  }
  VertexSet candidates;
  std::set_difference(p.begin(), p.end(), g.neighbors(pivot).begin(),
                      g.neighbors(pivot).end(), std::back_inserter(candidates));
  for (int v : candidates) {
    r.push_back(v);
    bron_kerbosch(g, r, set_intersection(p, g.neighbors(v)),
                  set_intersection(x, g.neighbors(v)), out);
    r.pop_back();
    p.erase(std::lower_bound(p.begin(), p.end(), v));
    x.insert(std::lower_bound(x.begin(), x.end(), v), v);
  }
}

}  // namespace

std::vector<VertexSet> maximal_cliques(const SimpleGraph& g) {
  std::vector<VertexSet> out;
  // Degeneracy-style outer loop: each vertex v seeds cliques whose smallest
  // vertex (in index order) is v.
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto& nv = g.neighbors(static_cast<int>(v));
    VertexSet p, x;
    for (int u : nv) (u > static_cast<int>(v) ? p : x).push_back(u);
    VertexSet r{static_cast<int>(v)};
    bron_kerbosch(g, r, std::move(p), std::move(x), out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> bfs_distances(const SimpleGraph& g, int source, int max_radius) {
  std::vector<int> dist(g.size(), -1);
  std::deque<int> queue{source};
  dist.at(source) = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (dist[u] == max_radius) continue;
    for (int v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool sets_intersect(const VertexSet& a, const VertexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

namespace {

struct FamilySweep {
  const std::vector<VertexSet>& sets;
  std::vector<std::vector<int>> meets;  // intersection graph, sorted lists
  int max_family;
  std::size_t tested = 0;
  std::vector<int> witness;

  FamilySweep(const std::vector<VertexSet>& s, int max_family_)
      : sets(s), meets(s.size()), max_family(max_family_) {
    std::unordered_map<int, std::vector<int>> containing;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (int v : sets[i]) containing[v].push_back(static_cast<int>(i));
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
      auto& m = meets[i];
      for (int v : sets[i]) {
        for (int j : containing[v]) {
          if (j != static_cast<int>(i)) m.push_back(j);
        }
      }
      std::sort(m.begin(), m.end());
      m.erase(std::unique(m.begin(), m.end()), m.end());
    }
  }

  // Returns false when the budget runs out before the sweep completes.
  bool exhaustive(std::size_t budget) {
    std::vector<int> family;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      family.assign(1, static_cast<int>(i));
      VertexSet later;
      for (int j : meets[i]) {
        if (j > static_cast<int>(i)) later.push_back(j);
      }
      if (!extend(family, sets[i], later, budget)) return false;
      if (!witness.empty()) return true;
    }
    return true;
  }

  bool extend(std::vector<int>& family, const VertexSet& common,
              const std::vector<int>& candidates, std::size_t budget) {
    if (static_cast<int>(family.size()) >= max_family) return true;
    for (int j : candidates) {
      if (++tested > budget) return false;
      VertexSet next = set_intersection(common, sets[j]);
      family.push_back(j);
      if (next.empty()) {
        witness = family;
        return true;
      }
      std::vector<int> narrowed;
      std::set_intersection(candidates.begin(), candidates.end(), meets[j].begin(),
                            meets[j].end(), std::back_inserter(narrowed));
      std::erase_if(narrowed, [j](int k) { return k <= j; });
      if (!extend(family, next, narrowed, budget)) return false;
      family.pop_back();
      if (!witness.empty()) return true;
    }
    return true;
  }

  void sampled(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    tested = 0;
    if (sets.empty()) return;
    std::uniform_int_distribution<std::size_t> pick_set(0, sets.size() - 1);
    std::uniform_int_distribution<int> pick_size(2, std::max(2, max_family));
    for (std::size_t s = 0; s < samples; ++s) {
      int target = pick_size(rng);
      std::vector<int> family{static_cast<int>(pick_set(rng))};
      std::vector<int> candidates = meets[family[0]];
      VertexSet common = sets[family[0]];
      while (static_cast<int>(family.size()) < target && !candidates.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        int j = candidates[pick(rng)];
        family.push_back(j);
        common = set_intersection(common, sets[j]);
        ++tested;
        if (common.empty()) {
          witness = family;
          return;
        }
        std::vector<int> narrowed;
        std::set_intersection(candidates.begin(), candidates.end(), meets[j].begin(),
                              meets[j].end(), std::back_inserter(narrowed));
        candidates = std::move(narrowed);
      }
    }
  }
};

HellyCheckResult run_sweep(const std::vector<VertexSet>& sets,
                           const std::vector<std::string>& labels,
                           const HellySweepOptions& options) {
  HellyCheckResult result;
  result.sets_considered = sets.size();
  result.seed = options.seed;
  FamilySweep sweep(sets, options.max_family);
  if (sweep.exhaustive(options.exhaustive_budget)) {
    result.mode = SweepMode::exhaustive;
  } else {
    result.mode = SweepMode::sampled;
    sweep.witness.clear();
    sweep.sampled(options.samples, options.seed);
  }
  result.families_tested = sweep.tested;
  if (!sweep.witness.empty()) {
    result.pass = false;
    for (int i : sweep.witness) {
      result.counterexample.push_back(sets[i]);
      result.counterexample_labels.push_back(labels[i]);
    }
  }
  return result;
}

VertexSet interior_or_all(const SimpleGraph& g, const VertexSet& interior) {
  if (!interior.empty()) return interior;
  VertexSet all(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) all[v] = static_cast<int>(v);
  return all;
}

}  // namespace

HellyCheckResult clique_helly_check(const SimpleGraph& g, const HellySweepOptions& options,
                                    const VertexSet& interior) {
  std::vector<VertexSet> cliques = maximal_cliques(g);
  if (!interior.empty()) {
    std::erase_if(cliques, [&](const VertexSet& c) { return !sets_intersect(c, interior); });
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < cliques.size(); ++i) labels.push_back("K" + std::to_string(i));
  return run_sweep(cliques, labels, options);
}

HellyCheckResult ball_helly_check(const SimpleGraph& g, const HellySweepOptions& options,
                                  int max_radius, const VertexSet& interior) {
  const VertexSet centers = interior_or_all(g, interior);
  std::vector<char> inside(g.size(), 0);
  for (int v : centers) inside.at(v) = 1;

  std::map<VertexSet, std::string> unique;
  std::size_t skipped = 0;
  for (int c : centers) {
    auto dist = bfs_distances(g, c, max_radius);
    for (int r = 0; r <= max_radius; ++r) {
      bool complete = true;
      VertexSet ball;
      for (std::size_t v = 0; v < g.size(); ++v) {
        if (dist[v] < 0 || dist[v] > r) continue;
        ball.push_back(static_cast<int>(v));
        if (dist[v] < r && !inside[v]) complete = false;
      }
      if (!complete) {
        ++skipped;
        continue;
      }
      unique.emplace(std::move(ball), "B(" + g.name(c) + "," + std::to_string(r) + ")");
    }
  }
  std::vector<VertexSet> balls;
  std::vector<std::string> labels;
  for (auto& [ball, label] : unique) {
    balls.push_back(ball);
    labels.push_back(label);
  }
  HellyCheckResult result = run_sweep(balls, labels, options);
  result.sets_skipped = skipped;
  return result;
}

std::string to_json(const HellyCheckResult& result, const SimpleGraph* g) {
  nlohmann::ordered_json j;
  j["verdict"] = result.pass ? "pass" : "fail";
  j["mode"] = result.mode == SweepMode::exhaustive ? "exhaustive" : "sampled";
  j["seed"] = result.seed;
  j["sets_considered"] = result.sets_considered;
  j["sets_skipped"] = result.sets_skipped;
  j["families_tested"] = result.families_tested;
  auto family = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < result.counterexample.size(); ++i) {
    nlohmann::ordered_json member;
    member["label"] = result.counterexample_labels.at(i);
    auto vertices = nlohmann::ordered_json::array();
    for (int v : result.counterexample[i]) {
      if (g != nullptr) {
        vertices.push_back(g->name(v));
      } else {
        vertices.push_back(v);
      }
    }
    member["vertices"] = vertices;
    family.push_back(member);
  }
  j["counterexample"] = family;
  j["note"] =
      "clique-Helly together with a simply connected clique complex implies Helly; "
      "only the clique/ball family conditions are machine-checked here";
  return j.dump(2);
}

}  // namespace cellhelly
