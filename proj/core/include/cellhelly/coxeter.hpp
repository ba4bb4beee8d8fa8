#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cellhelly/defining_graph.hpp"

namespace cellhelly {

// Element of an enumerated finite Coxeter group. Indices follow ShortLex
// order of the canonical reduced words, so index 0 is the identity.
struct CoxElt {
  int index = 0;
  friend auto operator<=>(const CoxElt&, const CoxElt&) = default;
};

enum class Side { left, right };

class CoxeterGroup;

struct ParabolicCoset {
  GenSet generators = 0;
  CoxElt representative;       // unique minimal-length member
  std::vector<int> members;    // sorted element indices
  bool contains(CoxElt w) const;
  friend bool operator==(const ParabolicCoset&, const ParabolicCoset&) = default;
};

// Hasse diagram of the right weak order, edges oriented from w to ws when
// l(ws) = l(w) + 1.
struct OrientedCell {
  struct Edge {
    int from;
    int to;
    int generator;
  };
  int vertex_count = 0;
  int source = 0;
  int sink = 0;
  std::vector<Edge> edges;
};

// A finite Coxeter group enumerated from its defining graph.
//
// Elements are found breadth first through the reflection representation:
// w·s is longer than w exactly when w(α_s) is a positive root, which the
// enumeration tests numerically. The resulting multiplication table is exact
// and is validated by group-axiom checks.
class CoxeterGroup {
 public:
  // Throws NotFiniteWithinCap when more than `cap` elements appear.
  static CoxeterGroup enumerate(const DefiningGraph& graph, std::size_t cap);

  const DefiningGraph& graph() const noexcept { return graph_; }
  int rank() const noexcept { return rank_; }
  std::size_t order() const noexcept { return length_.size(); }

  CoxElt identity() const noexcept { return {0}; }
  CoxElt generator(int s) const { return {right_[s]}; }  // right_[0 * rank + s]
  CoxElt multiply(CoxElt u, CoxElt v) const {
    return {table_[static_cast<std::size_t>(u.index) * order() + v.index]};
  }
  CoxElt inverse(CoxElt w) const { return {inverse_[w.index]}; }
  CoxElt times_generator(CoxElt w, int s) const { return {right_[w.index * rank_ + s]}; }
  CoxElt generator_times(int s, CoxElt w) const { return {left_[w.index * rank_ + s]}; }

  int length(CoxElt w) const { return length_[w.index]; }
  const std::vector<int>& word(CoxElt w) const { return words_[w.index]; }
  std::string word_string(CoxElt w) const;  // "e" for the identity
  GenSet right_descents(CoxElt w) const;
  GenSet left_descents(CoxElt w) const;

  CoxElt evaluate(std::span<const int> word) const;
  CoxElt longest_element() const { return {longest_}; }

  // Path distance in the unoriented Cayley graph.
  int distance(CoxElt u, CoxElt v) const { return length(multiply(inverse(u), v)); }

  bool weak_leq(CoxElt u, CoxElt v, Side side) const;
  CoxElt weak_meet(CoxElt u, CoxElt v, Side side) const;
  CoxElt weak_join(CoxElt u, CoxElt v, Side side) const;

  // Minimal-length member of w·W_I.
  CoxElt min_coset_representative(CoxElt w, GenSet generators) const;
  ParabolicCoset coset(CoxElt w, GenSet generators) const;
  // All left cosets of all standard parabolic subgroups.
  std::vector<ParabolicCoset> all_cosets() const;
  CoxElt gate(CoxElt v, const ParabolicCoset& coset) const;

  OrientedCell oriented_cell() const;
  std::string oriented_cell_dot() const;

  // Identity, involutive generators, inverses, and associativity on `samples`
  // deterministic triples. Returns an empty string when all checks pass.
  std::string validate(std::size_t samples = 2000) const;

 private:
  CoxeterGroup() = default;

  DefiningGraph graph_;
  int rank_ = 0;
  int longest_ = 0;
  std::vector<int> right_;    // order × rank
  std::vector<int> left_;     // order × rank
  std::vector<int> inverse_;
  std::vector<int> length_;
  std::vector<std::vector<int>> words_;
  std::vector<int> table_;    // order × order
};

// Exact intersection of member sets, sorted.
std::vector<int> coset_family_intersection(std::span<const ParabolicCoset> family);

}  // namespace cellhelly
