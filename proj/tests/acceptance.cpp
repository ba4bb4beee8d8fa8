// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cellhelly/complex.hpp"
#include "cellhelly/coxeter.hpp"
#include "cellhelly/errors.hpp"
#include "cellhelly/garside.hpp"
#include "cellhelly_cli/cli.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace cellhelly;
using oracle::Word;

namespace {

// Runtime limits, in seconds.
constexpr double kLatticeLimit = 10;
constexpr double kNormalFormLimit = 60;
constexpr double kVerifyLimit = 300;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
};

int failed_criteria = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s: %s\n", id, pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failed_criteria;
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

// Runs a criterion body, turning an escaped exception into a failure.
void criterion(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [pass, detail] = body();
    report(id, name, pass, detail);
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

// --- 1: weak order lattices -------------------------------------------------

std::pair<bool, std::string> lattice_suite() {
  struct Case {
    const char* name;
    DefiningGraph graph;
    int order;
  };
  const std::vector<Case> cases{{"A_2", testsupport::type_A(2), 6},    {"A_3", testsupport::type_A(3), 24},
                                {"B_2", testsupport::type_B(2), 8},    {"B_3", testsupport::type_B(3), 48},
                                {"I_2(5)", testsupport::dihedral(5), 10}, {"I_2(6)", testsupport::dihedral(6), 12}};
  const auto t0 = Clock::now();
  Tally t;
  std::size_t pairs = 0;
  for (const auto& c : cases) {
    const CoxeterGroup w = CoxeterGroup::enumerate(c.graph, 1000);
    const oracle::TitsGroup tits(testsupport::labels_of(c.graph), 1000);
    const int n = static_cast<int>(w.order());
    t.expect(n == c.order && tits.order() == c.order, std::string(c.name) + " order");
    std::vector<int> to_tits(n);
    for (int u = 0; u < n; ++u) to_tits[u] = tits.find(w.word(CoxElt{u}));
    for (bool right : {true, false}) {
      const Side side = right ? Side::right : Side::left;
      // Reference order from the word oracle.
      std::vector<char> leq(static_cast<std::size_t>(n) * n);
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          leq[u * n + v] = tits.leq(to_tits[u], to_tits[v], right);
          t.expect(w.weak_leq(CoxElt{u}, CoxElt{v}, side) == static_cast<bool>(leq[u * n + v]),
                   std::string(c.name) + " order relation");
        }
      }
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          ++pairs;
          const int m = w.weak_meet(CoxElt{u}, CoxElt{v}, side).index;
          const int j = w.weak_join(CoxElt{u}, CoxElt{v}, side).index;
          bool ok = leq[m * n + u] && leq[m * n + v] && leq[u * n + j] && leq[v * n + j];
          for (int z = 0; z < n; ++z) {
            if (leq[z * n + u] && leq[z * n + v]) ok = ok && leq[z * n + m];
            if (leq[u * n + z] && leq[v * n + z]) ok = ok && leq[j * n + z];
          }
          t.expect(ok, std::string(c.name) + " universal property");
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << cases.size() << " groups, " << pairs << " pairs (both sides), " << t.failures
    << " violations, " << fmt_seconds(secs) << " (limit " << kLatticeLimit << " s)";
  if (t.failures) d << "; first: " << t.first;
  return {t.failures == 0 && secs < kLatticeLimit, d.str()};
}

// --- 2: normal forms against braid-move closure ------------------------------

struct Braid {
  CoxeterGroup group;
  GarsideStructure gs;
  explicit Braid(const DefiningGraph& g)
      : group(CoxeterGroup::enumerate(g, 2000)), gs(GarsideStructure::from_spherical(group)) {}
};

std::vector<Letter> positive(const Word& w) {
  std::vector<Letter> out;
  for (int a : w) out.push_back({a, false});
  return out;
}

std::pair<bool, std::string> normal_form_suite(const Braid& b3, const Braid& b4) {
  const auto t0 = Clock::now();
  Tally t;
  std::size_t words_total = 0, pairs = 0;
  for (auto [braid, max_len, name] : {std::tuple{&b3, 6, "B_3"}, std::tuple{&b4, 5, "B_4"}}) {
    oracle::PositiveMonoid monoid(testsupport::labels_of(braid->group.graph()));
    const auto words = oracle::all_words(static_cast<int>(braid->gs.atoms().size()), max_len);
    words_total += words.size();
    std::vector<GrpElt> nfs;
    for (const auto& w : words) nfs.push_back(braid->gs.normal_form(positive(w)));
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = i; j < words.size(); ++j) {
        ++pairs;
        t.expect((nfs[i] == nfs[j]) == monoid.equal(words[i], words[j]), std::string(name) + " equality");
      }
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << words_total << " positive words, " << pairs << " pairs, " << t.failures << " disagreements, "
    << fmt_seconds(secs) << " (limit " << kNormalFormLimit << " s)";
  if (t.failures) d << "; first: " << t.first;
  return {t.failures == 0 && secs < kNormalFormLimit, d.str()};
}

// --- 3: order and complement identities -------------------------------------

GrpElt random_element(const GarsideStructure& gs, std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> atom(0, static_cast<int>(gs.atoms().size()) - 1);
  std::bernoulli_distribution inv(0.4);
  std::vector<Letter> w(len(rng));
  for (auto& l : w) l = {atom(rng), inv(rng)};
  return gs.normal_form(w);
}

// Identities on one pair of simples.
void simple_identities(const GarsideStructure& gs, int a, int b, Tally& t) {
  const GrpElt A = gs.from_simple(a), B = gs.from_simple(b);
  // Star complement: a·a* = Δ, and a** = φ(a).
  t.expect(gs.product(a, gs.star(a)) == gs.delta(), "a·a* = Δ");
  t.expect(gs.star(gs.star(a)) == gs.phi(a), "a** = φ(a)");
  // a ≼ b iff b* is a suffix of a*.
  t.expect(gs.simple_prefix_leq(a, b) == gs.simple_suffix_geq(gs.star(a), gs.star(b)), "star reverses order");
  // Star duality turns prefix meets into suffix joins and back.
  t.expect(gs.star(gs.simple_meet_p(a, b)) == gs.simple_join_s(gs.star(a), gs.star(b)), "(a∧b)* = a*∨b*");
  t.expect(gs.star(gs.simple_join_p(a, b)) == gs.simple_meet_s(gs.star(a), gs.star(b)), "(a∨b)* = a*∧b*");
  // Simple lattice operations agree with the group ones.
  t.expect(gs.meet_p(A, B) == gs.from_simple(gs.simple_meet_p(a, b)), "simple prefix meet");
  t.expect(gs.join_p(A, B) == gs.from_simple(gs.simple_join_p(a, b)), "simple prefix join");
  t.expect(gs.meet_s(A, B) == gs.from_simple(gs.simple_meet_s(a, b)), "simple suffix meet");
  t.expect(gs.join_s(A, B) == gs.from_simple(gs.simple_join_s(a, b)), "simple suffix join");
  // ab = c: the product table, the quotients and group multiplication agree.
  const int c = gs.product(a, b);
  t.expect((c >= 0) == gs.simple_prefix_leq(b, gs.star(a)), "ab simple iff b ≼ a*");
  if (c >= 0) {
    t.expect(gs.multiply(A, B) == gs.from_simple(c), "ab = c in the group");
    t.expect(gs.right_quotient(a, c) == b, "a\\c = b");
    t.expect(gs.left_quotient(b, c) == a, "c/b = a");
    t.expect(gs.simple_prefix_leq(a, c) && gs.simple_suffix_geq(c, b), "a ≼ c ≽ b");
  }
  if (gs.simple_prefix_leq(a, b)) {
    t.expect(gs.product(a, gs.right_quotient(a, b)) == b, "a·(a\\b) = b");
  }
}

// Identities on a triple of arbitrary group elements.
void element_identities(const GarsideStructure& gs, const GrpElt& x, const GrpElt& y, const GrpElt& z,
                        Tally& t) {
  const GrpElt xi = gs.inverse(x), yi = gs.inverse(y);
  // Inversion swaps the prefix and suffix orders.
  t.expect(gs.inverse(gs.meet_p(x, y)) == gs.join_s(xi, yi), "(x∧y)⁻¹ = x⁻¹∨ˢy⁻¹");
  t.expect(gs.inverse(gs.join_p(x, y)) == gs.meet_s(xi, yi), "(x∨y)⁻¹ = x⁻¹∧ˢy⁻¹");
  t.expect(gs.prefix_leq(x, y) == gs.suffix_geq(xi, yi), "x ≼ y iff x⁻¹ ≽ y⁻¹");
  // Left translation preserves the prefix order, right translation the suffix order.
  const GrpElt zx = gs.multiply(z, x), zy = gs.multiply(z, y);
  t.expect(gs.multiply(z, gs.meet_p(x, y)) == gs.meet_p(zx, zy), "z(x∧y) = zx∧zy");
  t.expect(gs.multiply(z, gs.join_p(x, y)) == gs.join_p(zx, zy), "z(x∨y) = zx∨zy");
  t.expect(gs.prefix_leq(x, y) == gs.prefix_leq(zx, zy), "x ≼ y iff zx ≼ zy");
  const GrpElt xz = gs.multiply(x, z), yz = gs.multiply(y, z);
  t.expect(gs.multiply(gs.meet_s(x, y), z) == gs.meet_s(xz, yz), "(x∧ˢy)z = xz∧ˢyz");
  t.expect(gs.multiply(gs.join_s(x, y), z) == gs.join_s(xz, yz), "(x∨ˢy)z = xz∨ˢyz");
  // Meet and join are bounds.
  const GrpElt m = gs.meet_p(x, y), j = gs.join_p(x, y);
  t.expect(gs.prefix_leq(m, x) && gs.prefix_leq(m, y) && gs.prefix_leq(x, j) && gs.prefix_leq(y, j),
           "prefix bounds");
  // Δ conjugation is an order automorphism.
  t.expect(gs.phi_apply(m) == gs.meet_p(gs.phi_apply(x), gs.phi_apply(y)), "φ(x∧y) = φx∧φy");
}

std::pair<bool, std::string> identity_suite(const Braid& b3, const Braid& b4) {
  Tally t;
  std::size_t tuples = 0, simple_pairs = 0;
  for (const Braid* braid : {&b3, &b4}) {
    const auto& gs = braid->gs;
    std::mt19937_64 rng(braid == &b3 ? 31 : 41);
    std::uniform_int_distribution<int> simple(0, static_cast<int>(gs.size()) - 1);
    for (int i = 0; i < 1000; ++i) {
      ++tuples;
      element_identities(gs, random_element(gs, rng, 10), random_element(gs, rng, 10),
                         random_element(gs, rng, 10), t);
      simple_identities(gs, simple(rng), simple(rng), t);
    }
  }
  for (const auto& g : {testsupport::type_A(2), testsupport::type_A(3), testsupport::type_B(2)}) {
    const auto gs = GarsideStructure::from_spherical(CoxeterGroup::enumerate(g, 1000));
    const int n = static_cast<int>(gs.size());
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        ++simple_pairs;
        simple_identities(gs, a, b, t);
      }
    }
  }
  std::ostringstream d;
  d << tuples << " random tuples in B_3/B_4, " << simple_pairs << " simple pairs in A_2/A_3/B_2, "
    << t.checks << " identities checked, " << t.failures << " violations";
  if (t.failures) d << "; first: " << t.first;
  return {t.failures == 0, d.str()};
}

// --- 4: triple cell covers --------------------------------------------------

std::pair<bool, std::string> triple_cover_suite(const Braid& b3, const Braid& b4) {
  Tally t;
  std::size_t triples = 0, d_vertices = 0;
  for (const Braid* braid : {&b3, &b4}) {
    const auto& gs = braid->gs;
    std::mt19937_64 rng(braid == &b3 ? 51 : 61);
    std::uniform_int_distribution<int> simple(0, static_cast<int>(gs.size()) - 1);
    int made = 0;
    while (made < 500) {
      // Half through a shared vertex h = f_i·s_i, half by rejection from
      // nearby bases.
      GCell c[3];
      if (made % 2 == 0) {
        const GrpElt h = random_element(gs, rng, 8);
        for (auto& ci : c) ci = gs.cell_of(gs.multiply(h, gs.inverse(gs.from_simple(simple(rng)))));
      } else {
        const GrpElt f = random_element(gs, rng, 8);
        for (auto& ci : c) ci = gs.cell_of(gs.multiply(f, random_element(gs, rng, 3)));
        bool meet = true;
        for (int i = 0; i < 3; ++i) meet = meet && gs.cell_intersection(c[i], c[(i + 1) % 3], false).has_value();
        if (!meet) continue;
      }
      ++made;
      ++triples;
      const TripleCover cover = gs.triple_cell_cover(c[0], c[1], c[2]);
      t.expect(gs.multiply(cover.f, gs.from_simple(cover.a)) == cover.h, "f·a = h");
      t.expect(gs.multiply(cover.h, gs.from_simple(cover.b)) == cover.g, "h·b = g");
      t.expect(gs.product(cover.a, cover.b) >= 0, "ab ≼ Δ");
      for (int i = 0; i < 3; ++i) t.expect(gs.cell_member(c[i], cover.h), "h in every cell");
      for (int i = 0; i < 3; ++i) {
        for (const GrpElt& v : gs.cell_vertices(c[i])) {
          if (!gs.cell_member(c[(i + 1) % 3], v)) continue;
          ++d_vertices;
          t.expect(gs.cell_member(cover.cell, v), "D inside the cover");
        }
      }
    }
  }
  std::ostringstream d;
  d << triples << " triples, " << d_vertices << " intersection vertices, " << t.failures << " failures";
  if (t.failures) d << "; first: " << t.first;
  return {t.failures == 0, d.str()};
}

// --- 5: coset Helly ---------------------------------------------------------

std::pair<bool, std::string> coset_suite() {
  Tally t;
  std::size_t families = 0, cosets_total = 0;
  for (const auto& g : {testsupport::type_A(2), testsupport::type_A(3), testsupport::type_B(2)}) {
    const CoxeterGroup w = CoxeterGroup::enumerate(g, 1000);
    const auto cosets = w.all_cosets();
    cosets_total += cosets.size();
    // Member masks rebuilt by closing the representative under the
    // generators, independent of the stored member lists.
    std::vector<std::uint64_t> mask;
    for (const auto& c : cosets) {
      std::uint64_t m = std::uint64_t{1} << c.representative.index;
      std::vector<int> todo{c.representative.index};
      while (!todo.empty()) {
        const int u = todo.back();
        todo.pop_back();
        for (int s : members(c.generators)) {
          const int v = w.times_generator(CoxElt{u}, s).index;
          if (!(m >> v & 1U)) {
            m |= std::uint64_t{1} << v;
            todo.push_back(v);
          }
        }
      }
      mask.push_back(m);
    }
    const int n = static_cast<int>(cosets.size());
    std::vector<int> fam;
    std::function<void(int, std::uint64_t)> grow = [&](int from, std::uint64_t common) {
      if (fam.size() >= 2) {
        ++families;
        t.expect(common != 0, "pairwise intersecting cosets meet");
        std::vector<ParabolicCoset> chosen;
        for (int i : fam) chosen.push_back(cosets[i]);
        std::uint64_t lib = 0;
        for (int v : coset_family_intersection(chosen)) lib |= std::uint64_t{1} << v;
        t.expect(lib == common, "library intersection matches");
      }
      for (int i = from; i < n; ++i) {
        const bool pairwise = std::all_of(fam.begin(), fam.end(), [&](int f) { return (mask[f] & mask[i]) != 0; });
        if (!pairwise) continue;
        fam.push_back(i);
        grow(i + 1, fam.size() == 1 ? mask[i] : common & mask[i]);
        fam.pop_back();
      }
    };
    grow(0, 0);
  }
  std::ostringstream d;
  d << cosets_total << " cosets in A_2/A_3/B_2, " << families << " pairwise intersecting families, "
    << t.failures << " empty intersections or mismatches";
  return {t.failures == 0, d.str()};
}

// --- 6, 7: verification on balls --------------------------------------------

struct VerifyCase {
  const char* name;
  const char* fixture;
  int radius;
  int margin;
};

const VerifyCase kVerifyCases[] = {
    {"A_2", "a2.json", 6, 3},
    {"A_3", "a3.json", 8, 6},
    {"Z^2", "z2.json", 4, 2},
    {"FC path", "fc_path.json", 4, 3},
};

// Kept for the thickening checks. The oracle points into `fc`.
struct Built {
  FCGraph fc;
  std::unique_ptr<WordOracle> oracle;
  CayleyBall ball;
  CellComplex cx;
  explicit Built(const VerifyCase& c)
      : fc(FCGraph::certify(DefiningGraph::from_file(testsupport::fixture(c.fixture)))),
        oracle(make_oracle(fc)),
        ball(CayleyBall::build(fc, *oracle, c.radius)),
        cx(CellComplex::build(fc, ball)) {}
};

std::vector<std::unique_ptr<Built>> built;

std::pair<bool, std::string> verify_suite() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream d;
  for (const auto& c : kVerifyCases) {
    auto b = std::make_unique<Built>(c);
    VerifyOptions o;
    o.margin = c.margin;
    const VerifyReport r = cell_helly_verify(b->fc, b->ball, b->cx, o);
    std::size_t violations = 0, skipped = 0;
    for (const auto& cond : r.conditions) {
      violations += cond.violations;
      skipped += cond.skipped;
    }
    ok = ok && r.pass();
    d << c.name << " (R=" << c.radius << ", M=" << c.margin << "): " << violations << " violations, "
      << skipped << " skipped; ";
    built.push_back(std::move(b));
  }
  const auto cube = SyntheticComplex::from_json_text(
      [] {
        std::ifstream in(testsupport::fixture("cube_2skeleton.json"));
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
      }());
  const VerifyReport control = verify_synthetic(cube, {});
  const bool control_ok = !control.pass() && control.conditions[2].violations > 0;
  ok = ok && control_ok;
  d << "cube control: " << control.conditions[2].violations << " condition-3 violation(s)";
  const double secs = seconds_since(t0);
  d << "; " << fmt_seconds(secs) << " (limit " << kVerifyLimit << " s)";
  return {ok && secs < kVerifyLimit, d.str()};
}

bool valid_counterexample(const HellyCheckResult& r) {
  if (r.pass || r.counterexample.size() < 2) return false;
  VertexSet common = r.counterexample[0];
  for (const auto& a : r.counterexample) {
    for (const auto& b : r.counterexample) {
      if (!sets_intersect(a, b)) return false;
    }
    common = set_intersection(common, a);
  }
  return common.empty();
}

SimpleGraph cycle(int n) {
  SimpleGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

std::pair<bool, std::string> thickening_suite() {
  if (built.size() != std::size(kVerifyCases)) return {false, "verification balls unavailable"};
  bool ok = true;
  std::ostringstream d;
  HellySweepOptions o;
  o.max_family = 4;
  for (std::size_t i = 0; i < built.size(); ++i) {
    const Built& b = *built[i];
    VertexSet interior;
    const SimpleGraph th = ball_thickening(b.fc, b.ball, b.cx, &interior);
    const auto cl = clique_helly_check(th, o, interior);
    const auto bl = ball_helly_check(th, o, 2, interior);
    ok = ok && !interior.empty() && cl.pass && bl.pass;
    d << kVerifyCases[i].name << ": cliques " << (cl.pass ? "pass" : "fail") << ", balls "
      << (bl.pass ? "pass" : "fail") << " (" << interior.size() << " interior); ";
  }
  for (int n : {4, 6}) {
    const auto r = ball_helly_check(cycle(n), o, 1);
    const bool good = valid_counterexample(r);
    ok = ok && good;
    d << "C_" << n << " control: " << (good ? "counterexample of " + std::to_string(r.counterexample.size()) + " balls" : "no valid counterexample")
      << (n == 4 ? "; " : "");
  }
  return {ok, d.str()};
}

// --- 8: determinism ---------------------------------------------------------

std::pair<bool, std::string> determinism_suite() {
  auto run = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::to_string(code) + "\n" + out.str();
  };
  bool ok = true;
  std::size_t runs = 0;
  const std::vector<std::vector<std::string>> commands{
      {"--quiet", "verify", testsupport::fixture("a2.json"), "--radius", "6", "--margin", "3", "--seed", "17"},
      {"--quiet", "verify", testsupport::fixture("a3.json"), "--radius", "8", "--margin", "6", "--seed", "17"},
      {"--quiet", "verify", testsupport::fixture("fc_path.json"), "--radius", "4", "--margin", "3"},
      {"--quiet", "verify", testsupport::fixture("cube_2skeleton.json")},
  };
  for (const auto& cmd : commands) {
    const std::string first = run(cmd);
    auto threaded = cmd;
    threaded.insert(threaded.end(), {"--jobs", "3"});
    for (const auto& again : {cmd, threaded}) {
      ++runs;
      ok = ok && run(again) == first;
    }
  }
  return {ok, std::to_string(commands.size()) + " inputs, " + std::to_string(runs) +
                  " repeated runs (1 and 3 threads) compared byte for byte" + (ok ? "" : ": reports differ")};
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  const Braid b3(testsupport::type_A(2)), b4(testsupport::type_A(3));
  criterion(1, "weak-order lattices", lattice_suite);
  criterion(2, "normal forms vs braid-move closure", [&] { return normal_form_suite(b3, b4); });
  criterion(3, "order and complement identities", [&] { return identity_suite(b3, b4); });
  criterion(4, "triple cell covers", [&] { return triple_cover_suite(b3, b4); });
  criterion(5, "coset Helly", coset_suite);
  criterion(6, "cell Helly verification", verify_suite);
  criterion(7, "thickening Helly checks", thickening_suite);
  criterion(8, "determinism", determinism_suite);
  std::printf("%d of 8 criteria failed\n", failed_criteria);
  return failed_criteria == 0 ? 0 : 1;
}
