#include "cellhelly/fc_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cellhelly/errors.hpp"

namespace cellhelly {

std::string letters_string(const DefiningGraph& graph, std::span<const GenLetter> word) {
  if (word.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += " ";
    out += graph.name(word[i].gen);
    if (word[i].inverse) out += "^-1";
  }
  return out;
}

int SphericalClique::local(int gen) const {
  auto it = std::find(generators.begin(), generators.end(), gen);
  return it == generators.end() ? -1 : static_cast<int>(it - generators.begin());
}

GenSet SphericalClique::local_mask(GenSet global) const {
  GenSet out = 0;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (contains(global, generators[k])) out |= GenSet{1} << k;
  }
  return out;
}

GrpElt SphericalClique::evaluate(std::span<const GenLetter> word) const {
  GrpElt x;
  for (GenLetter l : word) {
    int a = local(l.gen);
    if (a < 0) throw Error("generator outside the clique");
    x = garside.mul_letter(x, {a, l.inverse});
  }
  return x;
}

std::vector<GenLetter> SphericalClique::spell(const GrpElt& x) const {
  std::vector<GenLetter> out;
  for (Letter l : garside.to_letters(x)) out.push_back({generators[l.atom], l.inverse});
  return out;
}

GenSet SphericalClique::support(const GrpElt& positive) const {
  GenSet s = 0;
  for (GenLetter l : spell(positive)) s |= GenSet{1} << l.gen;
  return s;
}

bool gram_positive_definite(const DefiningGraph& graph, GenSet clique) {
  auto gens = members(clique);
  const std::size_t n = gens.size();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      int m = graph.label(gens[i], gens[j]);
      a[i * n + j] = i == j ? 1.0
                     : m == DefiningGraph::kInfinity ? -1.0
                                                     : -std::cos(std::numbers::pi / m);
    }
  }
  // Cholesky; a non-positive pivot means the form is not positive definite.
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (d <= 1e-9) return false;
    double root = std::sqrt(d);
    a[j * n + j] = root;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = v / root;
    }
  }
  return true;
}

FCGraph FCGraph::certify(const DefiningGraph& graph, std::size_t cap) {
  FCGraph fc;
  fc.graph_ = graph;
  fc.maximal_ = graph.maximal_cliques();
  for (GenSet m : fc.maximal_) {
    try {
      CoxeterGroup::enumerate(graph.induced(m), cap);
    } catch (const NotFiniteWithinCap&) {
      if (!gram_positive_definite(graph, m)) {
        throw NotFC("complete subgraph " + graph.describe(m) +
                    " is not spherical (Coxeter form is not positive definite)");
      }
      throw CapExceeded("complete subgraph " + graph.describe(m) + " exceeds cap=" +
                        std::to_string(cap) + " although its Coxeter form is positive definite");
    }
  }
  for (GenSet m : graph.cliques()) {
    auto group = CoxeterGroup::enumerate(graph.induced(m), cap);
    auto gs = GarsideStructure::from_spherical(group);
    fc.index_[m] = fc.cliques_.size();
    fc.cliques_.push_back({m, members(m), std::move(group), std::move(gs)});
  }
  return fc;
}

const SphericalClique& FCGraph::clique(GenSet mask) const {
  auto it = index_.find(mask);
  if (it == index_.end()) throw Error("no spherical clique " + graph_.describe(mask));
  return cliques_[it->second];
}

GenSet FCGraph::maximal_containing(GenSet mask) const {
  for (GenSet m : maximal_) {
    if (is_subset(mask, m)) return m;
  }
  throw NotFC("no spherical clique contains " + graph_.describe(mask));
}

int FCGraph::max_delta_length() const {
  int best = 0;
  for (const auto& c : cliques_) best = std::max(best, c.delta_length());
  return best;
}

namespace {

// Removes atom suffixes lying in `s_local` until none is left.
GrpElt strip_suffixes(const GarsideStructure& gs, GrpElt y, GenSet s_local) {
  for (bool changed = true; changed;) {
    changed = false;
    for (int a : members(s_local)) {
      GrpElt shorter = gs.mul_letter(y, {a, true});
      if (gs.is_positive(shorter)) {
        y = std::move(shorter);
        changed = true;
      }
    }
  }
  return y;
}

}  // namespace

std::pair<GrpElt, GrpElt> coset_split(const SphericalClique& k, const SphericalClique& s,
                                      const GrpElt& g) {
  if (!is_subset(s.mask, k.mask)) throw Error("coset_split needs S ⊆ K");
  if (s.mask == 0) return {g, GrpElt{}};
  if (s.mask == k.mask) return {GrpElt{}, s.evaluate(k.spell(g))};
  const auto& gs = k.garside;
  const GenSet s_local = k.local_mask(s.mask);

  // Δ² is central, so Δ^{2m}·g·A_S = Δ^{2m}·(g·A_S). The representative is
  // Δ^{-2m'}·r where m' >= 0 is least such that Δ^{2m'}·g·A_S contains a
  // positive element and r is its unique positive member without an
  // S-suffix.
  const int m = g.power < 0 ? (1 - g.power) / 2 : 0;
  GrpElt y = g;
  y.power += 2 * m;
  GrpElt r = strip_suffixes(gs, y, s_local);
  int best = 0;
  for (int d = 1; d <= m; ++d) {
    GrpElt lcm = gs.join_p(gs.delta_power(2 * d), r);
    GrpElt e = gs.multiply(gs.inverse(r), lcm);
    if (!is_subset(k.support(e), s.mask)) break;
    best = d;
  }
  if (best > 0) {
    GrpElt lcm = gs.join_p(gs.delta_power(2 * best), r);
    lcm.power -= 2 * best;
    r = strip_suffixes(gs, lcm, s_local);
  }
  GrpElt t = r;
  t.power -= 2 * (m - best);
  GrpElt h_k = gs.multiply(gs.inverse(t), g);

  // h lies in A_S; Δ_S^{2j}·h is positive for some j and then its spelling
  // only uses S-letters.
  const GrpElt delta_s = k.evaluate(s.spell(s.garside.delta_power(1)));
  const GrpElt delta_s2 = gs.multiply(delta_s, delta_s);
  GrpElt z = h_k;
  const int limit = 4 * (gs.word_length_bound(h_k) + 2);
  for (int j = 0; j <= limit; ++j) {
    if (gs.is_positive(z)) {
      if (!is_subset(k.support(z), s.mask)) throw Error("coset split left the parabolic subgroup");
      GrpElt h = s.evaluate(k.spell(z));
      h.power -= 2 * j;
      return {t, h};
    }
    z = gs.multiply(delta_s2, z);
  }
  throw Error("coset split did not reach a positive element");
}

}  // namespace cellhelly
