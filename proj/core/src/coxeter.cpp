#include "cellhelly/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "cellhelly/errors.hpp"

namespace cellhelly {

namespace {

constexpr double kSignTolerance = 1e-9;
constexpr double kKeyScale = 1e6;

using Matrix = std::vector<double>;  // row-major rank × rank

Matrix mat_mul(const Matrix& a, const Matrix& b, int n) {
  Matrix c(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      double aik = a[i * n + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
    }
  }
  return c;
}

std::vector<long long> key_of(const Matrix& m) {
  std::vector<long long> key(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) key[i] = std::llround(m[i] * kKeyScale);
  return key;
}

// Sign of w(α_s): +1 positive root, -1 negative root.
int root_sign(const Matrix& w, int s, int n) {
  bool nonneg = true;
  bool nonpos = true;
  for (int i = 0; i < n; ++i) {
    double c = w[i * n + s];
    if (c > kSignTolerance) nonpos = false;
    if (c < -kSignTolerance) nonneg = false;
  }
  if (nonneg && !nonpos) return 1;
  if (nonpos && !nonneg) return -1;
  throw Error("reflection representation produced a non-root vector");
}

}  // namespace

bool ParabolicCoset::contains(CoxElt w) const {
  return std::binary_search(members.begin(), members.end(), w.index);
}

CoxeterGroup CoxeterGroup::enumerate(const DefiningGraph& graph, std::size_t cap) {
  if (cap < 1) throw InvalidInput("cap must be positive");
  CoxeterGroup g;
  g.graph_ = graph;
  const int n = graph.size();
  g.rank_ = n;

  // Geometric representation on the basis of simple roots:
  // s_i(α_j) = α_j - 2 B(α_i, α_j) α_i with B(α_i, α_j) = -cos(π / m_ij),
  // and B = -1 for m_ij = ∞.
  auto bilinear = [&](int i, int j) {
    int m = graph.label(i, j);
    if (i == j) return 1.0;
    if (m == DefiningGraph::kInfinity) return -1.0;
    return -std::cos(std::numbers::pi / m);
  };
  std::vector<Matrix> reflections(n, Matrix(n * n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      reflections[i][j * n + j] += 1.0;
      reflections[i][i * n + j] -= 2.0 * bilinear(i, j);
    }
  }

  std::vector<Matrix> mats;
  std::map<std::vector<long long>, int> index;
  Matrix id(n * n, 0.0);
  for (int i = 0; i < n; ++i) id[i * n + i] = 1.0;
  mats.push_back(id);
  index.emplace(key_of(id), 0);
  g.words_.push_back({});
  g.length_.push_back(0);

  // Elements are appended in ShortLex order of their words: the queue is
  // processed in that order and generators are tried in vertex order.
  for (std::size_t w = 0; w < mats.size(); ++w) {
    g.right_.resize((w + 1) * n, -1);
    for (int s = 0; s < n; ++s) {
      Matrix ws = mat_mul(mats[w], reflections[s], n);
      auto key = key_of(ws);
      auto it = index.find(key);
      if (it != index.end()) {
        g.right_[w * n + s] = it->second;
        continue;
      }
      if (root_sign(mats[w], s, n) < 0) {
        throw Error("shorter element missing from enumeration");
      }
      if (mats.size() >= cap) throw NotFiniteWithinCap(cap);
      int id_new = static_cast<int>(mats.size());
      index.emplace(std::move(key), id_new);
      mats.push_back(std::move(ws));
      auto word = g.words_[w];
      word.push_back(s);
      g.words_.push_back(std::move(word));
      g.length_.push_back(g.length_[w] + 1);
      g.right_[w * n + s] = id_new;
    }
  }

  const std::size_t order = mats.size();
  g.left_.assign(order * n, -1);
  for (std::size_t w = 0; w < order; ++w) {
    for (int s = 0; s < n; ++s) {
      auto it = index.find(key_of(mat_mul(reflections[s], mats[w], n)));
      if (it == index.end()) throw Error("left multiplication left the group");
      g.left_[w * n + s] = it->second;
    }
  }

  // table[u][v] built along v's canonical word: u·v = (u·v')·s.
  g.table_.assign(order * order, -1);
  for (std::size_t u = 0; u < order; ++u) {
    int* row = &g.table_[u * order];
    row[0] = static_cast<int>(u);
    for (std::size_t v = 1; v < order; ++v) {
      const auto& word = g.words_[v];
      int s = word.back();
      // Parent of v is its word minus the last letter, which precedes v.
      int parent = g.right_[v * n + s];
      row[v] = g.right_[row[parent] * n + s];
    }
  }
  g.inverse_.assign(order, -1);
  for (std::size_t u = 0; u < order; ++u) {
    for (std::size_t v = 0; v < order; ++v) {
      if (g.table_[u * order + v] == 0) {
        g.inverse_[u] = static_cast<int>(v);
        break;
      }
    }
  }
  g.longest_ = static_cast<int>(std::max_element(g.length_.begin(), g.length_.end()) -
                                g.length_.begin());
  return g;
}

std::string CoxeterGroup::word_string(CoxElt w) const {
  const auto& wd = word(w);
  if (wd.empty()) return "e";
  bool single = true;
  for (int s : wd) single = single && graph_.name(s).size() == 1;
  std::string out;
  for (std::size_t i = 0; i < wd.size(); ++i) {
    if (!single && i > 0) out += ".";
    out += graph_.name(wd[i]);
  }
  return out;
}

GenSet CoxeterGroup::right_descents(CoxElt w) const {
  GenSet d = 0;
  for (int s = 0; s < rank_; ++s) {
    if (length(times_generator(w, s)) < length(w)) d |= GenSet{1} << s;
  }
  return d;
}

GenSet CoxeterGroup::left_descents(CoxElt w) const {
  GenSet d = 0;
  for (int s = 0; s < rank_; ++s) {
    if (length(generator_times(s, w)) < length(w)) d |= GenSet{1} << s;
  }
  return d;
}

CoxElt CoxeterGroup::evaluate(std::span<const int> word) const {
  CoxElt w = identity();
  for (int s : word) {
    if (s < 0 || s >= rank_) throw InvalidInput("generator index out of range");
    w = times_generator(w, s);
  }
  return w;
}

bool CoxeterGroup::weak_leq(CoxElt u, CoxElt v, Side side) const {
  if (side == Side::right) return length(u) + length(multiply(inverse(u), v)) == length(v);
  return length(multiply(v, inverse(u))) + length(u) == length(v);
}

CoxElt CoxeterGroup::weak_meet(CoxElt u, CoxElt v, Side side) const {
  if (side == Side::left) {
    return inverse(weak_meet(inverse(u), inverse(v), Side::right));
  }
  // Climb covers that stay below both; in a graded lattice this reaches the
  // meet because every element strictly below it has a cover still below it.
  CoxElt x = identity();
  for (bool grew = true; grew;) {
    grew = false;
    for (int s = 0; s < rank_; ++s) {
      CoxElt xs = times_generator(x, s);
      if (length(xs) > length(x) && weak_leq(xs, u, Side::right) &&
          weak_leq(xs, v, Side::right)) {
        x = xs;
        grew = true;
        break;
      }
    }
  }
  return x;
}

CoxElt CoxeterGroup::weak_join(CoxElt u, CoxElt v, Side side) const {
  if (side == Side::left) {
    return inverse(weak_join(inverse(u), inverse(v), Side::right));
  }
  // w ↦ w0·w reverses the right weak order.
  CoxElt w0 = longest_element();
  return multiply(w0, weak_meet(multiply(w0, u), multiply(w0, v), Side::right));
}

CoxElt CoxeterGroup::min_coset_representative(CoxElt w, GenSet generators) const {
  for (bool shrunk = true; shrunk;) {
    shrunk = false;
    for (int s : members(generators)) {
      if (s >= rank_) throw InvalidInput("coset generator out of range");
      CoxElt ws = times_generator(w, s);
      if (length(ws) < length(w)) {
        w = ws;
        shrunk = true;
      }
    }
  }
  return w;
}

ParabolicCoset CoxeterGroup::coset(CoxElt w, GenSet generators) const {
  ParabolicCoset c;
  c.generators = generators;
  c.representative = min_coset_representative(w, generators);
  std::vector<char> seen(order(), 0);
  std::vector<int> frontier{c.representative.index};
  seen[c.representative.index] = 1;
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (int s : members(generators)) {
      int next = times_generator({frontier[i]}, s).index;
      if (!seen[next]) {
        seen[next] = 1;
        frontier.push_back(next);
      }
    }
  }
  std::sort(frontier.begin(), frontier.end());
  c.members = std::move(frontier);
  return c;
}

std::vector<ParabolicCoset> CoxeterGroup::all_cosets() const {
  std::vector<ParabolicCoset> out;
  const GenSet full = rank_ == 0 ? 0 : graph_.all();
  for (GenSet gens = 0;; ++gens) {
    std::vector<char> covered(order(), 0);
    for (std::size_t w = 0; w < order(); ++w) {
      if (covered[w]) continue;
      auto c = coset({static_cast<int>(w)}, gens);
      for (int m : c.members) covered[m] = 1;
      out.push_back(std::move(c));
    }
    if (gens == full) break;
  }
  return out;
}

CoxElt CoxeterGroup::gate(CoxElt v, const ParabolicCoset& coset) const {
  // d(v, u) = l(v⁻¹u) and v⁻¹·coset is again a coset of W_I; its unique
  // minimal-length element m gives the nearest point v·m.
  CoxElt shifted = multiply(inverse(v), coset.representative);
  return multiply(v, min_coset_representative(shifted, coset.generators));
}

OrientedCell CoxeterGroup::oriented_cell() const {
  OrientedCell cell;
  cell.vertex_count = static_cast<int>(order());
  cell.source = identity().index;
  cell.sink = longest_;
  for (std::size_t w = 0; w < order(); ++w) {
    for (int s = 0; s < rank_; ++s) {
      CoxElt ws = times_generator({static_cast<int>(w)}, s);
      if (length(ws) == length({static_cast<int>(w)}) + 1) {
        cell.edges.push_back({static_cast<int>(w), ws.index, s});
      }
    }
  }
  return cell;
}

std::string CoxeterGroup::oriented_cell_dot() const {
  std::ostringstream out;
  out << "digraph coxeter_cell {\n";
  for (std::size_t w = 0; w < order(); ++w) {
    out << "  n" << w << " [label=\"" << word_string({static_cast<int>(w)}) << "\"];\n";
  }
  for (const auto& e : oriented_cell().edges) {
    out << "  n" << e.from << " -> n" << e.to << " [label=\"" << graph_.name(e.generator)
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string CoxeterGroup::validate(std::size_t samples) const {
  const std::size_t n = order();
  for (std::size_t u = 0; u < n; ++u) {
    CoxElt w{static_cast<int>(u)};
    if (multiply(w, identity()) != w || multiply(identity(), w) != w) return "identity fails";
    if (multiply(w, inverse(w)) != identity()) return "inverse fails";
    for (int s = 0; s < rank_; ++s) {
      if (times_generator(times_generator(w, s), s) != w) return "generator is not an involution";
      int d = length(times_generator(w, s)) - length(w);
      if (d != 1 && d != -1) return "length does not change by one";
    }
  }
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    CoxElt a{pick(rng)}, b{pick(rng)}, c{pick(rng)};
    if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c))) return "associativity fails";
    if (length(multiply(a, b)) > length(a) + length(b)) return "length is not subadditive";
  }
  return {};
}

std::vector<int> coset_family_intersection(std::span<const ParabolicCoset> family) {
  if (family.empty()) return {};
  std::vector<int> common = family.front().members;
  for (std::size_t i = 1; i < family.size() && !common.empty(); ++i) {
    std::vector<int> next;
    std::set_intersection(common.begin(), common.end(), family[i].members.begin(),
                          family[i].members.end(), std::back_inserter(next));
    common = std::move(next);
  }
  return common;
}

}  // namespace cellhelly
