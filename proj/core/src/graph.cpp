#include "refocus/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <unordered_map>

#include <json.hpp>

namespace refocus {

using nlohmann::json;

CouplingGraph::CouplingGraph(std::vector<std::string> names,
                             const std::vector<std::pair<int, int>>& edges)
    : names_(std::move(names)) {
  const int n = spin_count();
  if (n < 1) {
    throw Error(ErrorCode::InvalidArgument, "at least one spin is required");
  }
  if (n > kMaxSpins) {
    throw Error(ErrorCode::SizeLimit,
                "at most " + std::to_string(kMaxSpins) + " spins, got " +
                    std::to_string(n));
  }
  std::set<std::string_view> seen;
  for (const auto& name : names_) {
    if (name.empty()) {
      throw Error(ErrorCode::InvalidArgument, "spin names must be non-empty");
    }
    if (name.find(':') != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument,
                  "spin name '" + name + "' must not contain ':'");
    }
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate spin name '" + name + "'");
    }
  }
  std::set<std::pair<int, int>> unique_edges;
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    }
    if (a == b) {
      throw Error(ErrorCode::InvalidArgument,
                  "self-coupling on spin '" + names_[a] + "'");
    }
    unique_edges.emplace(std::min(a, b), std::max(a, b));
  }
  edges_.assign(unique_edges.begin(), unique_edges.end());
  adj_.assign(n, 0);
  for (auto [a, b] : edges_) {
    adj_[a] |= std::uint64_t{1} << b;
    adj_[b] |= std::uint64_t{1} << a;
  }
}

CouplingGraph CouplingGraph::complete(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    names.push_back("s" + std::to_string(i));
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return CouplingGraph(std::move(names), edges);
}

CouplingGraph CouplingGraph::path(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    names.push_back("s" + std::to_string(i));
    if (i + 1 < n) edges.emplace_back(i, i + 1);
  }
  return CouplingGraph(std::move(names), edges);
}

bool CouplingGraph::has_edge(int a, int b) const {
  if (a < 0 || a >= spin_count() || b < 0 || b >= spin_count() || a == b) {
    return false;
  }
  return (adj_[a] >> b) & 1;
}

int CouplingGraph::degree(int v) const { return std::popcount(adj_[v]); }

int CouplingGraph::index_of(std::string_view name) const {
  for (int i = 0; i < spin_count(); ++i) {
    if (names_[i] == name) return i;
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown spin '" + std::string(name) + "'");
}

CouplingGraph CouplingGraph::without_edge(int a, int b) const {
  if (!has_edge(a, b)) {
    throw Error(ErrorCode::InvalidArgument,
                "no coupling between '" + names_[a] + "' and '" + names_[b] + "'");
  }
  const auto removed = std::make_pair(std::min(a, b), std::max(a, b));
  std::vector<std::pair<int, int>> kept;
  for (auto e : edges_) {
    if (e != removed) kept.push_back(e);
  }
  return CouplingGraph(names_, kept);
}

int max_degree(const CouplingGraph& g) {
  int best = 0;
  for (int v = 0; v < g.spin_count(); ++v) best = std::max(best, g.degree(v));
  return best;
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::Parse, "graph document: " + what);
}

}  // namespace

GraphDocument parse_graph_document(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
  if (!doc.is_object() || !doc.contains("spins") || !doc["spins"].is_array()) {
    parse_fail("expected an object with a \"spins\" array");
  }
  std::vector<std::string> names;
  for (const auto& s : doc["spins"]) {
    if (!s.is_string()) parse_fail("spin names must be strings");
    names.push_back(s.get<std::string>());
  }
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(names.size()); ++i) index[names[i]] = i;

  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) parse_fail("unknown spin '" + name + "'");
    return it->second;
  };

  std::vector<std::pair<int, int>> edges;
  if (doc.contains("couplings")) {
    if (!doc["couplings"].is_array()) parse_fail("\"couplings\" must be an array");
    for (const auto& e : doc["couplings"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        parse_fail("each coupling must be a [nameA, nameB] pair");
      }
      edges.emplace_back(lookup(e[0].get<std::string>()),
                         lookup(e[1].get<std::string>()));
    }
  }

  GraphDocument result{CouplingGraph(names, edges), {}, {}};
  const auto& g = result.graph;
  result.shifts.assign(g.spin_count(), std::nullopt);
  result.couplings.assign(g.edges().size(), std::nullopt);

  if (doc.contains("shifts")) {
    if (!doc["shifts"].is_object()) parse_fail("\"shifts\" must be an object");
    for (const auto& [name, value] : doc["shifts"].items()) {
      if (!value.is_number()) parse_fail("shift for '" + name + "' must be a number");
      result.shifts[lookup(name)] = value.get<double>();
    }
  }
  if (doc.contains("j")) {
    if (!doc["j"].is_object()) parse_fail("\"j\" must be an object");
    for (const auto& [key, value] : doc["j"].items()) {
      const auto colon = key.find(':');
      if (colon == std::string::npos) {
        parse_fail("\"j\" keys must look like \"nameA:nameB\"");
      }
      const int a = lookup(key.substr(0, colon));
      const int b = lookup(key.substr(colon + 1));
      const auto edge = std::make_pair(std::min(a, b), std::max(a, b));
      const auto& es = g.edges();
      const auto it = std::find(es.begin(), es.end(), edge);
      if (it == es.end()) {
        parse_fail("\"j\" entry '" + key + "' names a pair with no coupling");
      }
      if (!value.is_number()) parse_fail("j for '" + key + "' must be a number");
      const double j = value.get<double>();
      if (j == 0.0) parse_fail("j for '" + key + "' must be nonzero");
      result.couplings[it - es.begin()] = j;
    }
  }
  return result;
}

CouplingGraph parse_graph(std::string_view document) {
  return parse_graph_document(document).graph;
}

std::vector<std::vector<int>> Coloring::groups() const {
  std::vector<std::vector<int>> by_color(color_count);
  for (int v = 0; v < static_cast<int>(assignment.size()); ++v) {
    by_color[assignment[v]].push_back(v);
  }
  return by_color;
}

Coloring greedy_coloring(const CouplingGraph& g,
                         const std::vector<std::vector<int>>& pinned) {
  const int n = g.spin_count();
  const int groups = static_cast<int>(pinned.size());
  std::vector<int> color(n, -1);

  std::uint64_t pinned_mask = 0;
  for (int gi = 0; gi < groups; ++gi) {
    if (pinned[gi].empty()) {
      throw Error(ErrorCode::InvalidPin, "pinned group must be non-empty");
    }
    for (int v : pinned[gi]) {
      if (v < 0 || v >= n) {
        throw Error(ErrorCode::InvalidPin, "pinned spin index out of range");
      }
      if (pinned_mask & (std::uint64_t{1} << v)) {
        throw Error(ErrorCode::InvalidPin,
                    "spin '" + g.name(v) + "' pinned more than once");
      }
      pinned_mask |= std::uint64_t{1} << v;
      color[v] = gi;
    }
    for (size_t i = 0; i < pinned[gi].size(); ++i) {
      for (size_t j = i + 1; j < pinned[gi].size(); ++j) {
        if (g.has_edge(pinned[gi][i], pinned[gi][j])) {
          throw Error(ErrorCode::InvalidPin,
                      "pinned spins '" + g.name(pinned[gi][i]) + "' and '" +
                          g.name(pinned[gi][j]) + "' are coupled");
        }
      }
    }
  }

  // Descending degree, ties by ascending index; pinned colors never reused.
  std::vector<int> order;
  for (int v = 0; v < n; ++v) {
    if (color[v] < 0) order.push_back(v);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return g.degree(a) > g.degree(b);
  });

  int color_count = groups;
  for (int v : order) {
    std::uint64_t used = 0;  // colors taken by already-colored neighbors
    std::uint64_t adj = g.adjacency_mask(v);
    while (adj) {
      const int u = std::countr_zero(adj);
      adj &= adj - 1;
      if (color[u] >= groups) used |= std::uint64_t{1} << (color[u] - groups);
    }
    const int c = groups + std::countr_one(used);
    color[v] = c;
    color_count = std::max(color_count, c + 1);
  }
  return Coloring{std::move(color), color_count};
}

bool is_proper(const CouplingGraph& g, const Coloring& c) {
  for (auto [a, b] : g.edges()) {
    if (c.assignment[a] == c.assignment[b]) return false;
  }
  return true;
}

namespace {

bool k_colorable(const CouplingGraph& g, const std::vector<int>& order, int k,
                 std::vector<int>& color, size_t pos, int used) {
  if (pos == order.size()) return true;
  const int v = order[pos];
  const int limit = std::min(used + 1, k);
  for (int c = 0; c < limit; ++c) {
    bool conflict = false;
    std::uint64_t adj = g.adjacency_mask(v);
    while (adj) {
      const int u = std::countr_zero(adj);
      adj &= adj - 1;
      if (color[u] == c) {
        conflict = true;
        break;
      }
    }
    if (conflict) continue;
    color[v] = c;
    if (k_colorable(g, order, k, color, pos + 1, std::max(used, c + 1))) {
      return true;
    }
    color[v] = -1;
  }
  return false;
}

}  // namespace

int chromatic_number(const CouplingGraph& g) {
  const int n = g.spin_count();
  if (n > 12) {
    throw Error(ErrorCode::SizeLimit,
                "exhaustive coloring is limited to 12 spins, got " +
                    std::to_string(n));
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return g.degree(a) > g.degree(b);
  });
  for (int k = 1; k <= n; ++k) {
    std::vector<int> color(n, -1);
    if (k_colorable(g, order, k, color, 0, 0)) return k;
  }
  return n;  // unreachable; n colors always suffice
}

}  // namespace refocus
