#include "cellhelly/defining_graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>

#include "cellhelly/errors.hpp"
#include "json.hpp"

namespace cellhelly {

std::vector<int> members(GenSet set) {
  std::vector<int> out;
  for (int g = 0; g < kMaxGenerators; ++g) {
    if (contains(set, g)) out.push_back(g);
  }
  return out;
}

DefiningGraph::DefiningGraph(std::vector<std::string> vertices,
                             const std::vector<LabeledEdge>& edges)
    : names_(std::move(vertices)) {
  const int n = size();
  if (n == 0) throw InvalidInput("defining graph has no vertices");
  if (n > kMaxGenerators) {
    throw InvalidInput("defining graph has " + std::to_string(n) + " vertices; at most " +
                       std::to_string(kMaxGenerators) + " supported");
  }
  std::set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw InvalidInput("empty vertex name");
    if (!seen.insert(name).second) throw InvalidInput("duplicate vertex '" + name + "'");
  }
  labels_.assign(n * n, kInfinity);
  for (int g = 0; g < n; ++g) labels_[g * n + g] = 1;
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) throw InvalidInput("edge endpoint out of range");
    if (e.u == e.v) throw InvalidInput("loop at vertex '" + names_[e.u] + "'");
    if (e.label < 2) {
      throw InvalidInput("edge " + names_[e.u] + "-" + names_[e.v] + " has label " +
                         std::to_string(e.label) + " < 2");
    }
    if (labels_[e.u * n + e.v] != kInfinity) {
      throw InvalidInput("multi-edge " + names_[e.u] + "-" + names_[e.v]);
    }
    labels_[e.u * n + e.v] = e.label;
    labels_[e.v * n + e.u] = e.label;
  }
}

DefiningGraph DefiningGraph::from_json_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("graph file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw InvalidInput("graph file needs a \"vertices\" array");
  }
  std::vector<std::string> names;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw InvalidInput("vertex names must be strings");
    names.push_back(v.get<std::string>());
  }
  auto lookup = [&](const nlohmann::json& v) {
    if (!v.is_string()) throw InvalidInput("edge endpoints must be vertex names");
    auto it = std::find(names.begin(), names.end(), v.get<std::string>());
    if (it == names.end()) throw InvalidInput("edge names unknown vertex '" + v.get<std::string>() + "'");
    return static_cast<int>(it - names.begin());
  };
  std::vector<LabeledEdge> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw InvalidInput("\"edges\" must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 3 || !e[2].is_number_integer()) {
        throw InvalidInput("each edge must be [u, v, label]");
      }
      edges.push_back({lookup(e[0]), lookup(e[1]), e[2].get<int>()});
    }
  }
  return DefiningGraph(std::move(names), edges);
}

DefiningGraph DefiningGraph::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::string DefiningGraph::to_json_text() const {
  nlohmann::ordered_json doc;
  doc["vertices"] = names_;
  auto edge_list = nlohmann::ordered_json::array();
  for (const auto& e : edges()) edge_list.push_back({names_[e.u], names_[e.v], e.label});
  doc["edges"] = edge_list;
  return doc.dump();
}

GenSet DefiningGraph::all() const noexcept {
  return size() == 32 ? ~GenSet{0} : (GenSet{1} << size()) - 1;
}

int DefiningGraph::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

std::vector<LabeledEdge> DefiningGraph::edges() const {
  std::vector<LabeledEdge> out;
  for (int g = 0; g < size(); ++g) {
    for (int h = g + 1; h < size(); ++h) {
      if (adjacent(g, h)) out.push_back({g, h, label(g, h)});
    }
  }
  return out;
}

bool DefiningGraph::is_clique(GenSet set) const {
  auto gens = members(set);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i] >= size()) return false;
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!adjacent(gens[i], gens[j])) return false;
    }
  }
  return true;
}

bool DefiningGraph::right_angled() const {
  for (const auto& e : edges()) {
    if (e.label != 2) return false;
  }
  return true;
}

DefiningGraph DefiningGraph::induced(GenSet set) const {
  auto gens = members(set);
  std::vector<std::string> names;
  for (int g : gens) names.push_back(name(g));
  std::vector<LabeledEdge> sub;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (adjacent(gens[i], gens[j])) {
        sub.push_back({static_cast<int>(i), static_cast<int>(j), label(gens[i], gens[j])});
      }
    }
  }
  if (names.empty()) {
    DefiningGraph empty;
    return empty;
  }
  return DefiningGraph(std::move(names), sub);
}

std::vector<GenSet> DefiningGraph::cliques() const {
  std::vector<GenSet> out{0};
  // Grow cliques by adding a larger vertex adjacent to every member.
  for (std::size_t i = 0; i < out.size(); ++i) {
    GenSet c = out[i];
    int top = c == 0 ? -1 : 31 - std::countl_zero(c);
    for (int g = top + 1; g < size(); ++g) {
      bool ok = true;
      for (int h : members(c)) ok = ok && adjacent(g, h);
      if (ok) out.push_back(c | (GenSet{1} << g));
    }
  }
  std::sort(out.begin(), out.end(), [](GenSet a, GenSet b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

std::vector<GenSet> DefiningGraph::maximal_cliques() const {
  auto all_cliques = cliques();
  std::vector<GenSet> out;
  for (GenSet c : all_cliques) {
    bool maximal = true;
    for (int g = 0; g < size() && maximal; ++g) {
      if (contains(c, g)) continue;
      if (is_clique(c | (GenSet{1} << g))) maximal = false;
    }
    if (maximal) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string DefiningGraph::describe(GenSet set) const {
  std::string out = "{";
  bool first = true;
  for (int g : members(set)) {
    if (!first) out += ",";
    out += name(g);
    first = false;
  }
  return out + "}";
}

}  // namespace cellhelly
