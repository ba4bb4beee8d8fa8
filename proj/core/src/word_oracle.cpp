#include "cellhelly/word_oracle.hpp"

#include <algorithm>

#include "cellhelly/errors.hpp"

namespace cellhelly {

NormalForm WordOracle::canonicalize(std::span<const GenLetter> word) const {
  NormalForm x = identity();
  for (GenLetter l : word) x = multiply(x, l);
  return x;
}

namespace {

void append(NormalForm& out, const GrpElt& x) {
  out.push_back(x.power);
  out.push_back(static_cast<int>(x.factors.size()));
  out.insert(out.end(), x.factors.begin(), x.factors.end());
}

GrpElt read(const NormalForm& in, std::size_t& pos) {
  GrpElt x;
  x.power = in.at(pos++);
  int k = in.at(pos++);
  x.factors.assign(in.begin() + static_cast<std::ptrdiff_t>(pos),
                   in.begin() + static_cast<std::ptrdiff_t>(pos + k));
  pos += k;
  return x;
}

class GarsideOracle final : public WordOracle {
 public:
  explicit GarsideOracle(const SphericalClique& clique) : clique_(clique) {}
  std::string kind() const override { return "spherical-garside"; }
  NormalForm identity() const override { return {0, 0}; }
  NormalForm multiply(const NormalForm& x, GenLetter l) const override {
    std::size_t pos = 0;
    GrpElt e = read(x, pos);
    int a = clique_.local(l.gen);
    if (a < 0) throw Error("generator outside the spherical graph");
    NormalForm out;
    append(out, clique_.garside.mul_letter(e, {a, l.inverse}));
    return out;
  }

 private:
  const SphericalClique& clique_;
};

class RightAngledOracle final : public WordOracle {
 public:
  explicit RightAngledOracle(const DefiningGraph& graph) : graph_(graph) {}
  std::string kind() const override { return "right-angled"; }
  NormalForm identity() const override { return {}; }

  // Letters are coded 2·gen + inverse.
  NormalForm multiply(const NormalForm& x, GenLetter l) const override {
    NormalForm w = x;
    const int code = 2 * l.gen + (l.inverse ? 1 : 0);
    bool cancelled = false;
    for (std::size_t i = w.size(); i-- > 0;) {
      int g = w[i] / 2;
      if (g == l.gen) {
        if (w[i] == (code ^ 1)) {
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
          cancelled = true;
        }
        break;
      }
      if (!commute(g, l.gen)) break;
    }
    if (!cancelled) w.push_back(code);
    return lex_normal(w);
  }

 private:
  bool commute(int g, int h) const { return graph_.adjacent(g, h); }

  // Greedy least letter that can be moved to the front.
  NormalForm lex_normal(NormalForm w) const {
    NormalForm out;
    out.reserve(w.size());
    while (!w.empty()) {
      std::size_t pick = 0;
      int best = -1;
      for (std::size_t i = 0; i < w.size(); ++i) {
        bool movable = true;
        for (std::size_t j = 0; j < i && movable; ++j) {
          movable = w[j] / 2 != w[i] / 2 && commute(w[j] / 2, w[i] / 2);
        }
        if (movable && (best < 0 || w[i] < best)) {
          best = w[i];
          pick = i;
        }
      }
      out.push_back(best);
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return out;
  }

  DefiningGraph graph_;
};

class AmalgamOracle final : public WordOracle {
 public:
  AmalgamOracle(const SphericalClique& k1, const SphericalClique& k2, const SphericalClique& s)
      : factors_{&k1, &k2}, shared_(s) {}
  std::string kind() const override { return "tree-of-cliques-amalgam"; }

  // [n, (factor, t_i)..., h]
  NormalForm identity() const override { return {0, 0, 0}; }

  NormalForm multiply(const NormalForm& x, GenLetter l) const override {
    std::size_t pos = 0;
    const int n = x.at(pos++);
    std::vector<std::pair<int, GrpElt>> reps;
    for (int i = 0; i < n; ++i) {
      int j = x.at(pos++);
      reps.emplace_back(j, read(x, pos));
    }
    GrpElt h = read(x, pos);

    if (shared_.local(l.gen) >= 0) {
      h = shared_.garside.mul_letter(h, {shared_.local(l.gen), l.inverse});
    } else {
      const int j = factors_[0]->local(l.gen) >= 0 ? 0 : 1;
      const SphericalClique& k = *factors_[j];
      const auto h_word = shared_.spell(h);
      GrpElt y = k.evaluate(h_word);
      const bool merge = !reps.empty() && reps.back().first == j;
      if (merge) {
        y = k.garside.multiply(reps.back().second, y);
        reps.pop_back();
      }
      y = k.garside.mul_letter(y, {k.local(l.gen), l.inverse});
      auto [t, h_new] = coset_split(k, shared_, y);
      if (!(t == GrpElt{})) reps.emplace_back(j, std::move(t));
      h = std::move(h_new);
    }

    NormalForm out{static_cast<int>(reps.size())};
    for (const auto& [j, t] : reps) {
      out.push_back(j);
      append(out, t);
    }
    append(out, h);
    return out;
  }

 private:
  const SphericalClique* factors_[2];
  const SphericalClique& shared_;
};

std::string shape(const FCGraph& fc) {
  return std::to_string(fc.maximal_cliques().size()) + " maximal cliques";
}

}  // namespace

std::unique_ptr<WordOracle> make_garside_oracle(const FCGraph& fc) {
  const auto& maximal = fc.maximal_cliques();
  if (maximal.size() != 1 || maximal[0] != fc.graph().all()) {
    throw OracleUnsupported("spherical Garside oracle needs a complete defining graph; got " +
                            shape(fc));
  }
  return std::make_unique<GarsideOracle>(fc.clique(maximal[0]));
}

std::unique_ptr<WordOracle> make_right_angled_oracle(const FCGraph& fc) {
  if (!fc.graph().right_angled()) {
    throw OracleUnsupported("right-angled oracle needs every edge labelled 2");
  }
  return std::make_unique<RightAngledOracle>(fc.graph());
}

std::unique_ptr<WordOracle> make_amalgam_oracle(const FCGraph& fc) {
  const auto& maximal = fc.maximal_cliques();
  if (maximal.size() != 2) {
    throw OracleUnsupported("amalgam oracle supports exactly two maximal cliques; got " +
                            shape(fc));
  }
  return std::make_unique<AmalgamOracle>(fc.clique(maximal[0]), fc.clique(maximal[1]),
                                         fc.clique(maximal[0] & maximal[1]));
}

std::unique_ptr<WordOracle> make_oracle(const FCGraph& fc) {
  const auto& maximal = fc.maximal_cliques();
  if (fc.graph().right_angled()) return make_right_angled_oracle(fc);
  if (maximal.size() == 1) return make_garside_oracle(fc);
  if (maximal.size() == 2) return make_amalgam_oracle(fc);
  throw OracleUnsupported("no word-problem backend for an FC graph with " + shape(fc) +
                          " that is not right-angled (supported: one clique, all labels 2, "
                          "or two maximal cliques)");
}

}  // namespace cellhelly
