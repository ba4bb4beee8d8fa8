#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cellhelly/fc_graph.hpp"

namespace cellhelly {

// Canonical encoding of an element of A_Γ; equal elements have equal forms.
using NormalForm = std::vector<int>;

// Solves the word problem of A_Γ for one family of defining graphs. Oracles
// keep references into the FCGraph they were made from.
class WordOracle {
 public:
  virtual ~WordOracle() = default;
  virtual std::string kind() const = 0;
  virtual NormalForm identity() const = 0;
  virtual NormalForm multiply(const NormalForm& x, GenLetter letter) const = 0;

  NormalForm canonicalize(std::span<const GenLetter> word) const;
};

// Γ is a single spherical clique: Garside normal form Δ^p x_1 ⋯ x_k.
std::unique_ptr<WordOracle> make_garside_oracle(const FCGraph& fc);
// Every edge labelled 2: free reduction across commuting letters, then the
// lexicographically least spelling of the trace.
std::unique_ptr<WordOracle> make_right_angled_oracle(const FCGraph& fc);
// Exactly two maximal cliques K1, K2: A_Γ = A_{K1} *_{A_S} A_{K2} with
// S = K1 ∩ K2, in the reduced form t_1 ⋯ t_n·h with canonical coset
// representatives t_i.
std::unique_ptr<WordOracle> make_amalgam_oracle(const FCGraph& fc);

// Right-angled, then spherical, then amalgam; throws OracleUnsupported naming the shape.
std::unique_ptr<WordOracle> make_oracle(const FCGraph& fc);

}  // namespace cellhelly
