#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cellhelly {

// Subset of generators as a bit mask; defining graphs have at most 32 vertices.
using GenSet = std::uint32_t;

inline constexpr int kMaxGenerators = 32;

std::vector<int> members(GenSet set);
inline bool contains(GenSet set, int g) { return (set >> g) & 1U; }
inline bool is_subset(GenSet a, GenSet b) { return (a & ~b) == 0; }

struct LabeledEdge {
  int u;
  int v;
  int label;  // >= 2
};

// Labeled simplicial graph presenting a Coxeter group and an Artin group.
// An absent edge stands for the label infinity. Vertex order is the
// generator order used for ShortLex tie-breaking everywhere.
class DefiningGraph {
 public:
  static constexpr int kInfinity = 0;

  DefiningGraph() = default;
  DefiningGraph(std::vector<std::string> vertices, const std::vector<LabeledEdge>& edges);

  // {"vertices": [...], "edges": [["a","b",3], ...]}
  static DefiningGraph from_json_text(std::string_view text);
  static DefiningGraph from_file(const std::filesystem::path& path);
  std::string to_json_text() const;

  int size() const noexcept { return static_cast<int>(names_.size()); }
  GenSet all() const noexcept;
  const std::string& name(int g) const { return names_.at(g); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  int index_of(std::string_view name) const;  // -1 if absent

  // m(g, h): 1 on the diagonal, kInfinity for non-adjacent pairs.
  int label(int g, int h) const { return labels_.at(g * size() + h); }
  bool adjacent(int g, int h) const { return g != h && label(g, h) != kInfinity; }
  std::vector<LabeledEdge> edges() const;

  bool is_clique(GenSet set) const;
  bool right_angled() const;  // every present edge has label 2

  // Full subgraph on `set`, vertices kept in the ambient order.
  DefiningGraph induced(GenSet set) const;

  // All complete subgraphs including the empty one, ordered by size then mask.
  std::vector<GenSet> cliques() const;
  std::vector<GenSet> maximal_cliques() const;

  std::string describe(GenSet set) const;  // "{a,b}"

  friend bool operator==(const DefiningGraph&, const DefiningGraph&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> labels_;
};

}  // namespace cellhelly
