#include "cellhelly/garside.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "cellhelly/errors.hpp"
#include "json.hpp"

namespace cellhelly {

namespace {

constexpr std::string_view kInverseAscii = "^-1";
constexpr std::string_view kInverseUnicode = "⁻¹";

bool strip_suffix(std::string& s, std::string_view suffix) {
  if (s.size() > suffix.size() && s.ends_with(suffix)) {
    s.resize(s.size() - suffix.size());
    return true;
  }
  return false;
}

}  // namespace

GarsideStructure GarsideStructure::from_spherical(const CoxeterGroup& group) {
  GarsideStructure gs;
  const int n = static_cast<int>(group.order());
  gs.identity_ = group.identity().index;
  gs.delta_ = group.longest_element().index;
  for (int s = 0; s < group.rank(); ++s) {
    gs.atoms_.push_back(group.generator(s).index);
    gs.atom_names_.push_back(group.graph().name(s));
  }
  for (int w = 0; w < n; ++w) {
    gs.simple_names_.push_back(w == gs.identity_ ? "1" : group.word_string({w}));
  }
  gs.product_.assign(static_cast<std::size_t>(n) * n, -1);
  gs.meet_p_.resize(gs.product_.size());
  gs.join_p_.resize(gs.product_.size());
  gs.meet_s_.resize(gs.product_.size());
  gs.join_s_.resize(gs.product_.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      CoxElt ab = group.multiply({a}, {b});
      if (group.length(ab) == group.length({a}) + group.length({b})) {
        gs.product_[gs.idx(a, b)] = ab.index;
      }
      gs.meet_p_[gs.idx(a, b)] = group.weak_meet({a}, {b}, Side::right).index;
      gs.join_p_[gs.idx(a, b)] = group.weak_join({a}, {b}, Side::right).index;
      gs.meet_s_[gs.idx(a, b)] = group.weak_meet({a}, {b}, Side::left).index;
      gs.join_s_[gs.idx(a, b)] = group.weak_join({a}, {b}, Side::left).index;
    }
  }
  gs.derive_tables(false);
  return gs;
}

GarsideStructure GarsideStructure::from_json_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("Garside file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("Garside file must be a JSON object");
  for (const char* key : {"simples", "atoms", "delta", "product"}) {
    if (!doc.contains(key)) throw InvalidInput(std::string("Garside file lacks \"") + key + "\"");
  }
  GarsideStructure gs;
  if (!doc["simples"].is_array() || doc["simples"].empty()) {
    throw InvalidInput("\"simples\" must be a nonempty array of names");
  }
  for (const auto& s : doc["simples"]) {
    if (!s.is_string()) throw InvalidInput("simple names must be strings");
    gs.simple_names_.push_back(s.get<std::string>());
  }
  const int n = static_cast<int>(gs.simple_names_.size());
  {
    std::vector<std::string> sorted = gs.simple_names_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidInput("duplicate simple name");
    }
  }
  auto simple_ref = [&](const nlohmann::json& v, const char* what) {
    int i = -1;
    if (v.is_number_integer()) {
      i = v.get<int>();
    } else if (v.is_string()) {
      auto it = std::find(gs.simple_names_.begin(), gs.simple_names_.end(), v.get<std::string>());
      if (it != gs.simple_names_.end()) i = static_cast<int>(it - gs.simple_names_.begin());
    }
    if (i < 0 || i >= n) throw InvalidInput(std::string("unknown simple in ") + what);
    return i;
  };
  gs.delta_ = simple_ref(doc["delta"], "\"delta\"");
  if (!doc["atoms"].is_array()) throw InvalidInput("\"atoms\" must be an array");
  for (const auto& a : doc["atoms"]) {
    int i = simple_ref(a, "\"atoms\"");
    if (std::find(gs.atoms_.begin(), gs.atoms_.end(), i) != gs.atoms_.end()) {
      throw InvalidInput("duplicate atom " + gs.simple_names_[i]);
    }
    gs.atoms_.push_back(i);
    gs.atom_names_.push_back(gs.simple_names_[i]);
  }
  gs.product_.assign(static_cast<std::size_t>(n) * n, -1);
  if (!doc["product"].is_array()) throw InvalidInput("\"product\" must be an array");
  for (const auto& t : doc["product"]) {
    if (!t.is_array() || t.size() != 3) throw InvalidInput("product entries must be [i, j, k]");
    int a = simple_ref(t[0], "\"product\"");
    int b = simple_ref(t[1], "\"product\"");
    if (!t[2].is_number_integer() && !t[2].is_string()) {
      throw InvalidInput("product entries must be [i, j, k]");
    }
    int k = (t[2].is_number_integer() && t[2].get<int>() == -1) ? -1 : simple_ref(t[2], "\"product\"");
    int& slot = gs.product_[gs.idx(a, b)];
    if (slot != -1 && slot != k) {
      throw InvalidInput("product defined twice for (" + gs.simple_names_[a] + ", " +
                         gs.simple_names_[b] + ")");
    }
    slot = k;
  }
  // The identity is the simple acting trivially on both sides.
  gs.identity_ = -1;
  for (int e = 0; e < n && gs.identity_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = gs.product(e, x) == x && gs.product(x, e) == x;
    if (ok) gs.identity_ = e;
  }
  if (gs.identity_ < 0) throw InvalidInput("violation: no identity simple");
  gs.derive_tables(true);
  if (auto problem = gs.validate(); !problem.empty()) throw InvalidInput(problem);
  return gs;
}

GarsideStructure GarsideStructure::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::string GarsideStructure::to_json_text() const {
  nlohmann::ordered_json doc;
  doc["simples"] = simple_names_;
  doc["atoms"] = atom_names_;
  doc["delta"] = simple_names_[delta_];
  auto table = nlohmann::ordered_json::array();
  for (int a = 0; a < static_cast<int>(size()); ++a) {
    for (int b = 0; b < static_cast<int>(size()); ++b) {
      if (product(a, b) >= 0) table.push_back({a, b, product(a, b)});
    }
  }
  doc["product"] = table;
  return doc.dump();
}

void GarsideStructure::derive_tables(bool brute_force_lattices) {
  const int n = static_cast<int>(size());
  rquot_.assign(static_cast<std::size_t>(n) * n, -1);
  lquot_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a) {
    for (int x = 0; x < n; ++x) {
      int b = product_[static_cast<std::size_t>(a) * n + x];
      if (b < 0) continue;
      auto& r = rquot_[static_cast<std::size_t>(a) * n + b];
      auto& l = lquot_[static_cast<std::size_t>(x) * n + b];
      if ((r >= 0 && r != x) || (l >= 0 && l != a)) {
        throw InvalidInput("violation: product is not cancellative");
      }
      r = x;
      l = a;
    }
  }

  // Lengths and ShortLex atom words by breadth-first search from 1.
  length_.assign(n, -1);
  words_.assign(n, {});
  length_[identity_] = 0;
  std::vector<int> queue{identity_};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int x = queue[i];
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
      int y = product_[static_cast<std::size_t>(x) * n + atoms_[k]];
      if (y < 0 || length_[y] >= 0) continue;
      length_[y] = length_[x] + 1;
      words_[y] = words_[x];
      words_[y].push_back(static_cast<int>(k));
      queue.push_back(y);
    }
  }
  for (int x = 0; x < n; ++x) {
    if (length_[x] < 0) {
      throw InvalidInput("violation: simple " + simple_names_[x] + " is not a product of atoms");
    }
  }

  star_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    star_[a] = rquot_[static_cast<std::size_t>(a) * n + delta_];
    if (star_[a] < 0) {
      throw InvalidInput("violation: simple " + simple_names_[a] + " is not a prefix of delta");
    }
  }
  phi_.assign(n, -1);
  phi_inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) phi_[a] = star_[star_[a]];
  for (int a = 0; a < n; ++a) {
    if (phi_inv_[phi_[a]] >= 0) throw InvalidInput("violation: star map is not a bijection");
    phi_inv_[phi_[a]] = a;
  }

  if (!brute_force_lattices) return;
  meet_p_.assign(static_cast<std::size_t>(n) * n, -1);
  join_p_ = meet_p_;
  meet_s_ = meet_p_;
  join_s_ = meet_p_;
  // Largest common lower bound and smallest common upper bound by length;
  // validate() then confirms they are the lattice operations.
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int mp = -1, jp = -1, ms = -1, js = -1;
      for (int c = 0; c < n; ++c) {
        if (simple_prefix_leq(c, a) && simple_prefix_leq(c, b) &&
            (mp < 0 || length_[c] > length_[mp])) {
          mp = c;
        }
        if (simple_prefix_leq(a, c) && simple_prefix_leq(b, c) &&
            (jp < 0 || length_[c] < length_[jp])) {
          jp = c;
        }
        if (simple_suffix_geq(a, c) && simple_suffix_geq(b, c) &&
            (ms < 0 || length_[c] > length_[ms])) {
          ms = c;
        }
        if (simple_suffix_geq(c, a) && simple_suffix_geq(c, b) &&
            (js < 0 || length_[c] < length_[js])) {
          js = c;
        }
      }
      meet_p_[idx(a, b)] = mp;
      join_p_[idx(a, b)] = jp;
      meet_s_[idx(a, b)] = ms;
      join_s_[idx(a, b)] = js;
    }
  }
}

std::string GarsideStructure::validate() const {
  const int n = static_cast<int>(size());
  const auto& name = simple_names_;
  for (int x = 0; x < n; ++x) {
    if (product(identity_, x) != x || product(x, identity_) != x) {
      return "violation: identity does not act trivially on " + name[x];
    }
    if ((length_[x] == 0) != (x == identity_)) return "violation: length zero off the identity";
    if (product(x, star(x)) != delta_) return "violation: " + name[x] + "·" + name[x] + "* != delta";
    if (!simple_suffix_geq(delta_, x)) return "violation: simple " + name[x] + " is not a suffix of delta";
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int ab = product(a, b);
      if (ab >= 0 && length_[ab] != length_[a] + length_[b]) {
        return "violation: length is not additive on " + name[a] + "·" + name[b];
      }
      if (ab >= 0 && product(phi_[a], phi_[b]) != phi_[ab]) {
        return "violation: phi does not respect " + name[a] + "·" + name[b];
      }
      for (int c = 0; c < n; ++c) {
        int bc = product(b, c);
        int left = ab >= 0 ? product(ab, c) : -1;
        int right = bc >= 0 ? product(a, bc) : -1;
        if (left != right) return "violation: partial product is not associative";
      }
    }
  }
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (length_[atoms_[k]] != 1) return "violation: atom " + atom_names_[k] + " is divisible";
  }
  for (int x = 0; x < n; ++x) {
    if (length_[x] == 1 && std::find(atoms_.begin(), atoms_.end(), x) == atoms_.end()) {
      return "violation: indivisible simple " + name[x] + " is not listed as an atom";
    }
  }
  if (phi_[identity_] != identity_ || phi_[delta_] != delta_) {
    return "violation: phi does not fix 1 and delta";
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int mp = simple_meet_p(a, b), jp = simple_join_p(a, b);
      int ms = simple_meet_s(a, b), js = simple_join_s(a, b);
      if (mp < 0 || !simple_prefix_leq(mp, a) || !simple_prefix_leq(mp, b) || jp < 0 ||
          !simple_prefix_leq(a, jp) || !simple_prefix_leq(b, jp)) {
        return "violation: prefix order on simples is not a lattice";
      }
      if (ms < 0 || !simple_suffix_geq(a, ms) || !simple_suffix_geq(b, ms) || js < 0 ||
          !simple_suffix_geq(js, a) || !simple_suffix_geq(js, b)) {
        return "violation: suffix order on simples is not a lattice";
      }
      for (int c = 0; c < n; ++c) {
        if (simple_prefix_leq(c, a) && simple_prefix_leq(c, b) && !simple_prefix_leq(c, mp)) {
          return "violation: prefix order on simples is not a lattice";
        }
        if (simple_prefix_leq(a, c) && simple_prefix_leq(b, c) && !simple_prefix_leq(jp, c)) {
          return "violation: prefix order on simples is not a lattice";
        }
        if (simple_suffix_geq(a, c) && simple_suffix_geq(b, c) && !simple_suffix_geq(ms, c)) {
          return "violation: suffix order on simples is not a lattice";
        }
        if (simple_suffix_geq(c, a) && simple_suffix_geq(c, b) && !simple_suffix_geq(c, js)) {
          return "violation: suffix order on simples is not a lattice";
        }
      }
    }
  }
  return {};
}

int GarsideStructure::atom_index(std::string_view name) const {
  auto it = std::find(atom_names_.begin(), atom_names_.end(), name);
  return it == atom_names_.end() ? -1 : static_cast<int>(it - atom_names_.begin());
}

GrpElt GarsideStructure::from_simple(int a) const {
  if (a < 0 || a >= static_cast<int>(size())) throw NotSimple("simple index out of range");
  GrpElt x;
  if (a == delta_ && delta_ != identity_) {
    x.power = 1;
  } else if (a != identity_) {
    x.factors.push_back(a);
  }
  return x;
}

void GarsideStructure::normalize(GrpElt& x) const {
  if (delta_ == identity_) {
    x = {};
    return;
  }
  auto& f = x.factors;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = f.size(); i-- > 1;) {
      int c = simple_meet_p(star(f[i - 1]), f[i]);
      if (c == identity_) continue;
      f[i - 1] = product(f[i - 1], c);
      f[i] = right_quotient(c, f[i]);
      changed = true;
    }
  }
  std::size_t lead = 0;
  while (lead < f.size() && f[lead] == delta_) ++lead;
  x.power += static_cast<int>(lead);
  f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(lead));
  while (!f.empty() && f.back() == identity_) f.pop_back();
}

GrpElt GarsideStructure::mul_simple(GrpElt x, int a) const {
  if (a == identity_) return x;
  if (a == delta_) return mul_delta_power(std::move(x), 1);
  x.factors.push_back(a);
  normalize(x);
  return x;
}

GrpElt GarsideStructure::mul_delta_power(GrpElt x, int q) const {
  if (delta_ == identity_) return {};
  // X·Δ^q = Δ^q·φ^q(X)
  x.power += q;
  for (int& f : x.factors) {
    for (int i = 0; i < q; ++i) f = phi_[f];
    for (int i = 0; i > q; --i) f = phi_inv_[f];
  }
  return x;
}

GrpElt GarsideStructure::phi_apply(const GrpElt& x, int times) const {
  GrpElt y = x;
  for (int& f : y.factors) {
    for (int i = 0; i < times; ++i) f = phi_[f];
    for (int i = 0; i > times; --i) f = phi_inv_[f];
  }
  return y;
}

GrpElt GarsideStructure::mul_letter(const GrpElt& x, Letter l) const {
  if (l.atom < 0 || l.atom >= static_cast<int>(atoms_.size())) {
    throw UnknownAtom("atom index " + std::to_string(l.atom) + " out of range");
  }
  int a = atoms_[l.atom];
  if (!l.inverse) return mul_simple(x, a);
  // a⁻¹ = a*·Δ⁻¹
  return mul_delta_power(mul_simple(x, star(a)), -1);
}

GrpElt GarsideStructure::normal_form(std::span<const Letter> word) const {
  GrpElt x;
  for (Letter l : word) x = mul_letter(x, l);
  return x;
}

GrpElt GarsideStructure::multiply(const GrpElt& x, const GrpElt& y) const {
  GrpElt r = mul_delta_power(x, y.power);
  for (int f : y.factors) r = mul_simple(std::move(r), f);
  return r;
}

GrpElt GarsideStructure::inverse(const GrpElt& x) const {
  // (Δ^p x_1 ⋯ x_k)⁻¹ = x_k⁻¹ ⋯ x_1⁻¹ Δ^{-p} with x⁻¹ = x*·Δ⁻¹.
  GrpElt r;
  for (auto it = x.factors.rbegin(); it != x.factors.rend(); ++it) {
    r = mul_delta_power(mul_simple(std::move(r), star(*it)), -1);
  }
  return mul_delta_power(std::move(r), -x.power);
}

std::vector<Letter> GarsideStructure::parse_word(std::string_view text) const {
  std::vector<Letter> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    bool inv = strip_suffix(token, kInverseAscii) || strip_suffix(token, kInverseUnicode);
    int a = atom_index(token);
    if (a < 0) {
      if (token == "1" && !inv) continue;
      throw UnknownAtom("unknown atom '" + token + "'");
    }
    out.push_back({a, inv});
  }
  return out;
}

std::vector<Letter> GarsideStructure::to_letters(const GrpElt& x) const {
  std::vector<Letter> out;
  const auto& dw = words_[delta_];
  for (int i = 0; i < x.power; ++i) {
    for (int a : dw) out.push_back({a, false});
  }
  for (int i = 0; i > x.power; --i) {
    for (auto it = dw.rbegin(); it != dw.rend(); ++it) out.push_back({*it, true});
  }
  for (int f : x.factors) {
    for (int a : words_[f]) out.push_back({a, false});
  }
  return out;
}

std::string GarsideStructure::format(const GrpElt& x) const {
  std::string out = "Δ^" + std::to_string(x.power);
  if (x.factors.empty()) return x.power == 0 ? out + " · ()" : out;
  out += " · ";
  for (std::size_t i = 0; i < x.factors.size(); ++i) {
    if (i > 0) out += " · ";
    out += simple_names_[x.factors[i]];
  }
  return out;
}

int GarsideStructure::word_length_bound(const GrpElt& x) const {
  int total = std::abs(x.power) * length_[delta_];
  for (int f : x.factors) total += length_[f];
  return total;
}

std::optional<int> GarsideStructure::as_simple(const GrpElt& x) const {
  if (x.power == 0 && x.factors.empty()) return identity_;
  if (x.power == 0 && x.factors.size() == 1) return x.factors[0];
  if (x.power == 1 && x.factors.empty()) return delta_;
  return std::nullopt;
}

bool GarsideStructure::prefix_leq(const GrpElt& x, const GrpElt& y) const {
  return is_positive(multiply(inverse(x), y));
}

bool GarsideStructure::suffix_geq(const GrpElt& x, const GrpElt& y) const {
  return is_positive(multiply(x, inverse(y)));
}

GrpElt GarsideStructure::meet_p(const GrpElt& x, const GrpElt& y) const {
  // Left translation by Δ^{-m} makes both positive; then peel common simple
  // heads until they become coprime.
  const int m = std::min(x.power, y.power);
  GrpElt a = x, b = y;
  a.power -= m;
  b.power -= m;
  auto head = [&](const GrpElt& z) {
    if (z.power > 0) return delta_;
    return z.factors.empty() ? identity_ : z.factors.front();
  };
  GrpElt g;
  for (;;) {
    int c = simple_meet_p(head(a), head(b));
    if (c == identity_) break;
    g = mul_simple(std::move(g), c);
    GrpElt c_inv = inverse(from_simple(c));
    a = multiply(c_inv, a);
    b = multiply(c_inv, b);
  }
  g.power += m;
  return g;
}

std::vector<int> GarsideStructure::simples_of(const GrpElt& positive) const {
  std::vector<int> out(std::max(positive.power, 0), delta_);
  out.insert(out.end(), positive.factors.begin(), positive.factors.end());
  return out;
}

GrpElt GarsideStructure::join_positive(const GrpElt& x, const GrpElt& y) const {
  // Complement grid: a square with top u and left v is closed by the simple
  // lcm u ∨ v, its right side is u\v and its bottom side v\u. The right
  // sides of the last column spell x\y, and x ∨ y = x·(x\y).
  std::vector<int> top = simples_of(x);
  GrpElt r = x;
  for (int v : simples_of(y)) {
    int side = v;
    for (int& u : top) {
      int l = simple_join_p(u, side);
      int bottom = right_quotient(side, l);
      side = right_quotient(u, l);
      u = bottom;
    }
    r = mul_simple(std::move(r), side);
  }
  return r;
}

GrpElt GarsideStructure::join_p(const GrpElt& x, const GrpElt& y) const {
  const int m = std::min(x.power, y.power);
  GrpElt a = x, b = y;
  a.power -= m;
  b.power -= m;
  GrpElt j = join_positive(a, b);
  j.power += m;
  return j;
}

GrpElt GarsideStructure::meet_s(const GrpElt& x, const GrpElt& y) const {
  return inverse(join_p(inverse(x), inverse(y)));
}

GrpElt GarsideStructure::join_s(const GrpElt& x, const GrpElt& y) const {
  return inverse(meet_p(inverse(x), inverse(y)));
}

bool GarsideStructure::left_weighted(const GrpElt& x) const {
  for (std::size_t i = 0; i + 1 < x.factors.size(); ++i) {
    if (simple_meet_p(star(x.factors[i]), x.factors[i + 1]) != identity_) return false;
  }
  for (int f : x.factors) {
    if (f == identity_ || f == delta_) return false;
  }
  return true;
}

bool GarsideStructure::cell_member(const GCell& c, const GrpElt& x) const {
  return as_simple(multiply(inverse(c.base), x)).has_value();
}

std::vector<GrpElt> GarsideStructure::cell_vertices(const GCell& c) const {
  std::vector<GrpElt> out;
  out.reserve(size());
  for (int s = 0; s < static_cast<int>(size()); ++s) out.push_back(mul_simple(c.base, s));
  return out;
}

std::optional<Interval> GarsideStructure::cell_intersection(const GCell& c1, const GCell& c2,
                                                            bool certify) const {
  Interval iv{join_p(c1.base, c2.base),
              meet_p(mul_delta_power(c1.base, 1), mul_delta_power(c2.base, 1))};
  const bool nonempty = prefix_leq(iv.lo, iv.hi);
  if (certify) {
    for (const auto& v : cell_vertices(c1)) {
      bool in_both = cell_member(c2, v);
      bool in_interval = nonempty && prefix_leq(iv.lo, v) && prefix_leq(v, iv.hi);
      if (in_both != in_interval) {
        throw Error("cell intersection disagrees with membership scan at " + format(v));
      }
    }
  }
  if (!nonempty) return std::nullopt;
  return iv;
}

TripleCover GarsideStructure::triple_cell_cover(const GCell& c1, const GCell& c2,
                                                const GCell& c3, const GrpElt* common) const {
  const GCell* cells[3] = {&c1, &c2, &c3};
  GrpElt fs[3], gs[3];
  for (int i = 0; i < 3; ++i) {
    fs[i] = cells[i]->base;
    gs[i] = mul_delta_power(cells[i]->base, 1);
  }
  GrpElt f_pair[3], g_pair[3];  // index k stands for the pair (k, k+1)
  for (int k = 0; k < 3; ++k) {
    int l = (k + 1) % 3;
    f_pair[k] = join_p(fs[k], fs[l]);
    g_pair[k] = meet_p(gs[k], gs[l]);
    if (!prefix_leq(f_pair[k], g_pair[k])) {
      throw NotPairwiseIntersecting("cells " + std::to_string(k + 1) + " and " +
                                    std::to_string(l + 1) + " are disjoint");
    }
  }
  TripleCover out;
  if (common) {
    out.h = *common;
    for (const GCell* c : cells) {
      if (!cell_member(*c, out.h)) throw Error("given common point is not in every cell");
    }
  } else {
    out.h = join_p(join_p(fs[0], fs[1]), fs[2]);
    if (!prefix_leq(out.h, meet_p(meet_p(gs[0], gs[1]), gs[2]))) {
      throw Error("triple intersection of pairwise intersecting cells is empty");
    }
  }
  int w[3], w_star[3];
  for (int i = 0; i < 3; ++i) {
    auto wi = as_simple(multiply(inverse(fs[i]), out.h));
    auto wsi = as_simple(multiply(inverse(out.h), gs[i]));
    if (!wi || !wsi) throw Error("common point is not inside a cell");
    w[i] = *wi;
    w_star[i] = *wsi;
    if (product(w[i], w_star[i]) != delta_) throw Error("w_i·w_i* != delta");
  }
  out.f = meet_p(meet_p(f_pair[0], f_pair[1]), f_pair[2]);
  out.g = join_p(join_p(g_pair[0], g_pair[1]), g_pair[2]);
  out.a = simple_join_s(simple_join_s(simple_meet_s(w[0], w[1]), simple_meet_s(w[1], w[2])),
                        simple_meet_s(w[2], w[0]));
  out.b = simple_join_p(
      simple_join_p(simple_meet_p(w_star[0], w_star[1]), simple_meet_p(w_star[1], w_star[2])),
      simple_meet_p(w_star[2], w_star[0]));
  if (mul_simple(out.f, out.a) != out.h) throw Error("claim f·a = h failed");
  if (mul_simple(out.h, out.b) != out.g) throw Error("claim h·b = g failed");
  if (product(out.a, out.b) < 0) throw Error("claim a·b ≼ delta failed");
  out.cell = cell_of(out.f);
  // D ⊆ [f, fΔ] by direct membership of every vertex of each C_i ∩ C_j.
  for (int k = 0; k < 3; ++k) {
    const GCell& other = *cells[(k + 1) % 3];
    for (const auto& v : cell_vertices(*cells[k])) {
      if (cell_member(other, v) && !cell_member(out.cell, v)) {
        throw Error("cover misses " + format(v));
      }
    }
  }
  return out;
}

bool GarsideStructure::helly_adjacent(const GrpElt& f, const GrpElt& g) const {
  GrpElt x = multiply(inverse(f), g);
  for (int a = 0; a < static_cast<int>(size()); ++a) {
    if (as_simple(multiply(from_simple(a), x))) return true;
  }
  return false;
}

}  // namespace cellhelly
