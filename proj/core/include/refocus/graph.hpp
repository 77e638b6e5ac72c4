#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "refocus/error.hpp"

namespace refocus {

/// Spin system as an undirected graph: vertices are named spins, edges are
/// the resolved J-couplings between them.
class CouplingGraph {
 public:
  static constexpr int kMaxSpins = 64;

  /// Edges are given as index pairs; duplicates are collapsed, self-loops
  /// rejected. Names must be distinct, non-empty and free of ':'.
  CouplingGraph(std::vector<std::string> names,
                const std::vector<std::pair<int, int>>& edges);

  static CouplingGraph complete(int n);
  static CouplingGraph path(int n);

  int spin_count() const noexcept { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(int v) const { return names_[v]; }

  /// Sorted list of (a, b) pairs with a < b.
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }

  bool has_edge(int a, int b) const;
  std::uint64_t adjacency_mask(int v) const { return adj_[v]; }
  int degree(int v) const;

  int index_of(std::string_view name) const;  // throws on unknown name

  CouplingGraph without_edge(int a, int b) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint64_t> adj_;
};

/// Maximum number of couplings at any spin.
int max_degree(const CouplingGraph& g);

/// Graph document plus the optional numeric fields used by the simulator.
/// `shifts` and `couplings` are positional (by spin index / by edge index,
/// parallel to graph.edges()); entries absent from the document are nullopt.
struct GraphDocument {
  CouplingGraph graph;
  std::vector<std::optional<double>> shifts;
  std::vector<std::optional<double>> couplings;
};

/// Parses the graph JSON format:
///   {"spins": [name, ...],
///    "couplings": [[nameA, nameB], ...],
///    "shifts": {name: number, ...},          // optional
///    "j": {"nameA:nameB": number, ...}}      // optional, nonzero values
GraphDocument parse_graph_document(std::string_view document);

CouplingGraph parse_graph(std::string_view document);

/// Proper vertex colouring. Colors are 0-based and contiguous.
struct Coloring {
  std::vector<int> assignment;  // spin index -> color
  int color_count = 0;

  std::vector<std::vector<int>> groups() const;
  bool operator==(const Coloring&) const = default;
};

/// Greedy proper colouring. Each pinned group receives its own dedicated
/// color (0, 1, ... in the order given) which is never reused; remaining
/// vertices are colored in descending-degree order (ties by ascending
/// index) with the smallest non-conflicting color. Deterministic.
///
/// Pinned groups must be disjoint, non-empty and internally uncoupled.
Coloring greedy_coloring(const CouplingGraph& g,
                         const std::vector<std::vector<int>>& pinned = {});

bool is_proper(const CouplingGraph& g, const Coloring& c);

/// Exact chromatic number by backtracking search; spin_count ≤ 12.
int chromatic_number(const CouplingGraph& g);

}  // namespace refocus
