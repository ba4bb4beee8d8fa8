#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cellhelly {

using VertexSet = std::vector<int>;  // sorted, duplicate free

// Undirected simplicial graph on vertices 0..n-1 with optional names.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(std::size_t n);

  std::size_t size() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept;

  // Loops are rejected; repeated edges are collapsed.
  void add_edge(int u, int v);
  bool adjacent(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_.at(v); }

  void set_name(int v, std::string name);
  std::string name(int v) const;

  // "u v" per line, '#' comments, names are arbitrary tokens.
  static SimpleGraph parse_edge_list(std::istream& in);
  std::string to_edge_list() const;
  std::string to_dot(const std::string& graph_name = "G") const;

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<std::string> names_;
};

// Two distinct vertices are adjacent iff some cell contains both.
SimpleGraph thickening(std::size_t vertex_count,
                       std::span<const VertexSet> cells);

// Inclusion-maximal cliques (Bron-Kerbosch with Tomita pivoting), each sorted,
// listed in lexicographic order.
std::vector<VertexSet> maximal_cliques(const SimpleGraph& g);

// Breadth-first distances from `source`, truncated at `max_radius`
// (-1 beyond it).
std::vector<int> bfs_distances(const SimpleGraph& g, int source, int max_radius);

VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
bool sets_intersect(const VertexSet& a, const VertexSet& b);

enum class SweepMode { exhaustive, sampled };

struct HellyCheckResult {
  bool pass = true;
  SweepMode mode = SweepMode::exhaustive;
  std::size_t sets_considered = 0;   // cliques or balls in the sweep
  std::size_t families_tested = 0;   // pairwise intersecting families checked
  std::size_t sets_skipped = 0;      // balls left out for touching the rim
  std::uint64_t seed = 0;
  // Pairwise intersecting family with empty total intersection.
  std::vector<VertexSet> counterexample;
  // Human-readable description of each family member (e.g. "B(v3,1)").
  std::vector<std::string> counterexample_labels;
};

struct HellySweepOptions {
  int max_family = 4;
  // Families beyond this many switch the sweep to seeded sampling.
  std::size_t exhaustive_budget = 2'000'000;
  std::size_t samples = 20'000;
  std::uint64_t seed = 0x5eed;
};

// Tests pairwise intersecting families of maximal cliques of size <= max_family.
// With `interior` nonempty only cliques meeting it are used; callers pass the
// vertices whose neighbourhoods are complete so those cliques are genuine.
HellyCheckResult clique_helly_check(const SimpleGraph& g,
                                    const HellySweepOptions& options,
                                    const VertexSet& interior = {});

// Balls B(c, r), c in interior (all vertices if empty), 0 <= r <= max_radius.
// A ball is only used when every vertex at distance < r from c is in
// `interior`, so that its outer layer is complete; others are counted as
// skipped.
HellyCheckResult ball_helly_check(const SimpleGraph& g,
                                  const HellySweepOptions& options,
                                  int max_radius,
                                  const VertexSet& interior = {});

std::string to_json(const HellyCheckResult& result, const SimpleGraph* g = nullptr);

}  // namespace cellhelly
