#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cellhelly/coxeter.hpp"
#include "cellhelly/defining_graph.hpp"
#include "cellhelly/garside.hpp"

namespace cellhelly {

// A generator of A_Γ (vertex index) or its inverse.
struct GenLetter {
  int gen = 0;
  bool inverse = false;
  friend auto operator<=>(const GenLetter&, const GenLetter&) = default;
};

std::string letters_string(const DefiningGraph& graph, std::span<const GenLetter> word);

// A complete subgraph with finite Coxeter group. Local atom k of `garside`
// is the global generator generators[k].
struct SphericalClique {
  GenSet mask = 0;
  std::vector<int> generators;
  CoxeterGroup group;
  GarsideStructure garside;

  int local(int gen) const;  // -1 if gen is outside the clique
  GenSet local_mask(GenSet global) const;
  GrpElt evaluate(std::span<const GenLetter> word) const;
  std::vector<GenLetter> spell(const GrpElt& x) const;
  // Global generators occurring in the normal form of a positive element.
  GenSet support(const GrpElt& positive) const;
  int delta_length() const { return garside.length(garside.delta()); }
};

// Defining graph of FC type with every complete subgraph enumerated.
class FCGraph {
 public:
  // Throws NotFC naming the first maximal clique that is provably
  // non-spherical, or CapExceeded when a clique outgrows `cap` without being
  // provably infinite.
  static FCGraph certify(const DefiningGraph& graph, std::size_t cap = 10000);

  const DefiningGraph& graph() const noexcept { return graph_; }
  // All cliques including the empty one, smallest first.
  const std::vector<SphericalClique>& cliques() const noexcept { return cliques_; }
  const SphericalClique& clique(GenSet mask) const;
  bool has_clique(GenSet mask) const { return index_.count(mask) > 0; }
  const std::vector<GenSet>& maximal_cliques() const noexcept { return maximal_; }
  // First maximal clique (in mask order) containing `mask`.
  GenSet maximal_containing(GenSet mask) const;
  int max_delta_length() const;

 private:
  DefiningGraph graph_;
  std::vector<SphericalClique> cliques_;
  std::map<GenSet, std::size_t> index_;
  std::vector<GenSet> maximal_;
};

// Whether the Coxeter bilinear form of the clique is positive definite, the
// classical criterion for a finite Coxeter group.
bool gram_positive_definite(const DefiningGraph& graph, GenSet clique);

// Writes g ∈ A_K as t·h with h ∈ A_S and t depending only on the coset
// g·A_S (S ⊆ K). Returns t in K's structure and h in S's.
std::pair<GrpElt, GrpElt> coset_split(const SphericalClique& k, const SphericalClique& s,
                                      const GrpElt& g);

}  // namespace cellhelly
