#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cellhelly/fc_graph.hpp"
#include "cellhelly/simple_graph.hpp"
#include "cellhelly/word_oracle.hpp"

namespace cellhelly {

// Metric ball around the identity in the Cayley graph of A_Γ, which is the
// 1-skeleton of the universal cover X_Γ of the Salvetti complex.
class CayleyBall {
 public:
  static CayleyBall build(const FCGraph& fc, const WordOracle& oracle, int radius);

  int radius() const noexcept { return radius_; }
  int rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return dist_.size(); }
  const std::string& oracle_kind() const noexcept { return oracle_kind_; }

  const NormalForm& form(int v) const { return forms_.at(v); }
  int dist(int v) const { return dist_.at(v); }
  int find(const NormalForm& form) const;  // -1 if outside
  // v·letter, or -1 when it falls outside the ball.
  int neighbor(int v, GenLetter l) const {
    return nbr_[static_cast<std::size_t>(v) * 2 * rank_ + 2 * l.gen + (l.inverse ? 1 : 0)];
  }
  int walk(int v, std::span<const GenLetter> word) const;  // -1 if it leaves
  // Geodesic from the identity along the breadth-first tree.
  std::vector<GenLetter> word(int v) const;

  SimpleGraph cayley_graph() const;

 private:
  struct FormHash {
    std::size_t operator()(const NormalForm& f) const noexcept;
  };

  int radius_ = 0;
  int rank_ = 0;
  std::string oracle_kind_;
  std::vector<NormalForm> forms_;
  std::vector<int> dist_;
  std::vector<int> nbr_;
  std::vector<std::pair<int, int>> parent_;  // (vertex, letter code)
  std::unordered_map<NormalForm, int, FormHash> index_;
};

// Cell of X_Γ: the interval [source, source·Δ_T] for a spherical clique T.
struct SCell {
  int source = 0;
  GenSet type = 0;
  int sink = 0;
  VertexSet vertices;         // sorted ball vertex ids
  std::vector<int> by_simple;  // vertex of source·s for each simple s of A_T
};

// Every cell whose vertices all lie in the ball.
class CellComplex {
 public:
  static CellComplex build(const FCGraph& fc, const CayleyBall& ball);

  const std::vector<SCell>& cells() const noexcept { return cells_; }
  const SCell& cell(int id) const { return cells_.at(id); }
  int find(int source, GenSet type) const;  // -1 if not in the ball
  const std::vector<int>& cells_at(int vertex) const { return at_.at(vertex); }
  // Simple s with vertex = source·s, or -1.
  int local_simple(int id, int vertex) const;
  std::size_t vertex_count() const noexcept { return at_.size(); }

 private:
  std::vector<SCell> cells_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<std::vector<int>> at_;
};

// Intersection of cells as an interval [lo, hi] of the first cell.
struct CellInterval {
  int lo = 0;
  int hi = 0;
  VertexSet vertices;
};

// Exact vertex-set intersection, certified to be an interval in the prefix
// order of the first cell (IntervalViolation otherwise). Empty when disjoint.
std::optional<CellInterval> family_intersection(const FCGraph& fc, const CellComplex& cx,
                                                std::span<const int> cells);
std::optional<CellInterval> cell_intersection_x(const FCGraph& fc, const CellComplex& cx,
                                                int c1, int c2);

// Maximal cell containing the pairwise intersections of three pairwise
// intersecting maximal cells. Throws NotPairwiseIntersecting, BoundaryReached
// when the construction needs vertices outside the ball, and Error when a
// claim of the construction fails.
int triple_max_cell_cover(const FCGraph& fc, const CayleyBall& ball, const CellComplex& cx,
                          int c1, int c2, int c3);

// Vertices reachable from v along edges labelled in `type` without leaving
// the ball.
VertexSet standard_subcomplex(const CayleyBall& ball, int v, GenSet type);

std::string complex_to_dot(const FCGraph& fc, const CayleyBall& ball, const CellComplex& cx);
std::string ball_to_json(const FCGraph& fc, const CayleyBall& ball, const CellComplex& cx);

// Thickening restricted to cells of the ball; `interior` receives the
// vertices whose cells all lie in the ball.
SimpleGraph ball_thickening(const FCGraph& fc, const CayleyBall& ball, const CellComplex& cx,
                            VertexSet* interior = nullptr);

struct VerifyOptions {
  int margin = 0;
  std::uint64_t seed = 0x5eed;
  int max_family = 4;
  std::size_t samples = 5000;            // per sampled condition
  std::size_t exhaustive_budget = 200000;
  int jobs = 1;
};

struct ConditionReport {
  int id = 0;
  std::string name;
  std::string mode;  // "exhaustive" or "sampled"
  std::size_t tested = 0;
  std::size_t skipped = 0;
  std::size_t violations = 0;
  std::vector<std::string> counterexamples;  // first few, described
};

struct VerifyReport {
  std::string input;
  std::string oracle;
  int radius = 0;
  int margin = 0;
  std::uint64_t seed = 0;
  std::size_t ball_vertices = 0;
  std::size_t cells = 0;
  std::size_t interior_cells = 0;
  ConditionReport conditions[3];
  bool pass() const;
};

std::string to_json(const VerifyReport& report);

// Cell Helly conditions on cells meeting the ball of radius R - margin.
// Throws MarginTooSmall when margin < max |Δ_T|.
VerifyReport cell_helly_verify(const FCGraph& fc, const CayleyBall& ball, const CellComplex& cx,
                               const VerifyOptions& options);

// Explicit cell complex over named vertices, used for counterexamples.
struct SyntheticComplex {
  std::vector<std::string> vertex_names;
  std::vector<std::string> cell_names;
  std::vector<VertexSet> cells;

  // {"cells": [{"name": "S1", "vertices": ["v0", ...]}, ...]} or a bare list
  // of vertex-name lists.
  static SyntheticComplex from_json_text(std::string_view text);
  static bool looks_synthetic(std::string_view text);
};

// (1) nonempty pairwise intersections are cells, (2) pairwise intersecting
// families meet, (3) pairwise intersections of maximal-cell triples lie in
// one cell. All exhaustive up to options.max_family.
VerifyReport verify_synthetic(const SyntheticComplex& complex, const VerifyOptions& options);

}  // namespace cellhelly
