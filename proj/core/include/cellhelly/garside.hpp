#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cellhelly/coxeter.hpp"

namespace cellhelly {

// An atom or its inverse; `atom` indexes GarsideStructure::atoms().
struct Letter {
  int atom = 0;
  bool inverse = false;
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Δ^power · factors[0] ⋯ factors[k-1], left-weighted, with no factor equal
// to 1 or Δ. Equal group elements have equal representations.
struct GrpElt {
  int power = 0;
  std::vector<int> factors;  // simple indices
  friend auto operator<=>(const GrpElt&, const GrpElt&) = default;
};

struct GCell {
  GrpElt base;  // vertex set is [base, base·Δ]
  friend bool operator==(const GCell&, const GCell&) = default;
};

struct Interval {
  GrpElt lo;
  GrpElt hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Everything the triple cover construction derived, kept for reporting.
struct TripleCover {
  GCell cell;
  GrpElt h;  // common point of the three cells
  GrpElt f;  // prefix meet of D
  GrpElt g;  // prefix join of D
  int a = 0;  // simple with f·a = h
  int b = 0;  // simple with h·b = g
};

// Garside monoid given by its finite lattice of simples, and computation in
// the group of fractions.
//
// Conjugation by Δ is fixed as φ(x) = Δ⁻¹xΔ, so that xΔ = Δφ(x). On simples
// φ(a) = (a*)* where a·a* = Δ.
class GarsideStructure {
 public:
  // Simples are the elements of the finite Coxeter group (simple i is CoxElt
  // i), atoms are the generators and Δ lifts the longest element.
  static GarsideStructure from_spherical(const CoxeterGroup& group);

  // {"simples": [names], "atoms": [...], "delta": ..., "product": [[i,j,k],...]}
  // Atoms and delta may be given by name or index. The product table lists
  // every pair; k = -1 (or an omitted pair) means the product is not simple.
  // Throws InvalidInput naming the violated invariant.
  static GarsideStructure from_json_text(std::string_view text);
  static GarsideStructure from_file(const std::filesystem::path& path);
  std::string to_json_text() const;

  std::size_t size() const noexcept { return simple_names_.size(); }
  int identity() const noexcept { return identity_; }
  int delta() const noexcept { return delta_; }
  const std::vector<int>& atoms() const noexcept { return atoms_; }
  int atom_simple(int atom) const { return atoms_.at(atom); }
  int atom_index(std::string_view name) const;  // -1 if absent
  const std::string& atom_name(int atom) const { return atom_names_.at(atom); }
  const std::string& simple_name(int a) const { return simple_names_.at(a); }
  int length(int a) const { return length_.at(a); }
  // ShortLex-least atom word of a simple.
  const std::vector<int>& atom_word(int a) const { return words_.at(a); }

  int product(int a, int b) const { return product_[idx(a, b)]; }  // -1 if not simple
  int star(int a) const { return star_.at(a); }
  int phi(int a) const { return phi_.at(a); }
  int phi_inverse(int a) const { return phi_inv_.at(a); }
  // x with a·x = b, or -1 when a is not a prefix of b.
  int right_quotient(int a, int b) const { return rquot_[idx(a, b)]; }
  // x with x·a = b, or -1 when a is not a suffix of b.
  int left_quotient(int a, int b) const { return lquot_[idx(a, b)]; }
  bool simple_prefix_leq(int a, int b) const { return right_quotient(a, b) >= 0; }
  bool simple_suffix_geq(int b, int a) const { return left_quotient(a, b) >= 0; }
  int simple_meet_p(int a, int b) const { return meet_p_[idx(a, b)]; }
  int simple_join_p(int a, int b) const { return join_p_[idx(a, b)]; }
  int simple_meet_s(int a, int b) const { return meet_s_[idx(a, b)]; }
  int simple_join_s(int a, int b) const { return join_s_[idx(a, b)]; }

  // Group elements.
  GrpElt identity_element() const { return {}; }
  GrpElt from_simple(int a) const;
  GrpElt delta_power(int p) const { return {p, {}}; }
  GrpElt normal_form(std::span<const Letter> word) const;
  // Space separated atom names, inverses written "a^-1" or "a⁻¹".
  // Throws UnknownAtom.
  std::vector<Letter> parse_word(std::string_view text) const;
  GrpElt parse(std::string_view text) const { return normal_form(parse_word(text)); }
  // A word for x: |p| copies of Δ^{±1} followed by the factors.
  std::vector<Letter> to_letters(const GrpElt& x) const;
  std::string format(const GrpElt& x) const;  // "Δ^1 · b", "Δ^1", "Δ^0 · ()"

  GrpElt multiply(const GrpElt& x, const GrpElt& y) const;
  GrpElt inverse(const GrpElt& x) const;
  GrpElt mul_simple(GrpElt x, int a) const;
  GrpElt mul_letter(const GrpElt& x, Letter l) const;
  GrpElt mul_delta_power(GrpElt x, int q) const;
  GrpElt phi_apply(const GrpElt& x, int times = 1) const;
  bool is_positive(const GrpElt& x) const { return x.power >= 0; }
  int word_length_bound(const GrpElt& x) const;  // |p|·l(Δ) + Σ l(x_i)
  // The simple s with x = s, if any.
  std::optional<int> as_simple(const GrpElt& x) const;

  bool prefix_leq(const GrpElt& x, const GrpElt& y) const;   // x ≼ y
  bool suffix_geq(const GrpElt& x, const GrpElt& y) const;   // x ≽ y
  GrpElt meet_p(const GrpElt& x, const GrpElt& y) const;
  GrpElt join_p(const GrpElt& x, const GrpElt& y) const;
  GrpElt meet_s(const GrpElt& x, const GrpElt& y) const;
  GrpElt join_s(const GrpElt& x, const GrpElt& y) const;

  // True when consecutive factors are left-weighted: x_i = Δ ∧_p x_i x_{i+1}.
  bool left_weighted(const GrpElt& x) const;

  // Cells [f, fΔ].
  GCell cell_of(const GrpElt& f) const { return {f}; }
  bool cell_member(const GCell& c, const GrpElt& x) const;
  std::vector<GrpElt> cell_vertices(const GCell& c) const;
  // [f1 ∨_p f2, f1Δ ∧_p f2Δ] or nothing. With `certify`, the interval is
  // compared against a membership scan of both cells.
  std::optional<Interval> cell_intersection(const GCell& c1, const GCell& c2,
                                            bool certify = true) const;
  // Throws NotPairwiseIntersecting, or Error if a claim of the construction
  // fails. `common`, when given, is used as the point h of the triple
  // intersection instead of f1 ∨ f2 ∨ f3.
  TripleCover triple_cell_cover(const GCell& c1, const GCell& c2, const GCell& c3,
                                const GrpElt* common = nullptr) const;

  // f and g lie in a common cell, i.e. g = f·a⁻¹·b for simples a, b.
  bool helly_adjacent(const GrpElt& f, const GrpElt& g) const;

  // Empty string when every invariant of the simples lattice holds.
  std::string validate() const;

 private:
  GarsideStructure() = default;
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * size() + b; }
  void derive_tables(bool brute_force_lattices);
  void normalize(GrpElt& x) const;
  GrpElt join_positive(const GrpElt& x, const GrpElt& y) const;
  std::vector<int> simples_of(const GrpElt& positive) const;

  int identity_ = 0;
  int delta_ = 0;
  std::vector<int> atoms_;
  std::vector<std::string> atom_names_;
  std::vector<std::string> simple_names_;
  std::vector<int> length_;
  std::vector<std::vector<int>> words_;
  std::vector<int> product_;
  std::vector<int> star_, phi_, phi_inv_;
  std::vector<int> rquot_, lquot_;
  std::vector<int> meet_p_, join_p_, meet_s_, join_s_;
};

}  // namespace cellhelly
