#ifndef RIGIDITY_MATROID_HPP
#define RIGIDITY_MATROID_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rigidity/graph.hpp"

namespace rigidity {

/// (2,3)-pebble game. Each vertex starts with two pebbles; an edge is
/// independent of the accepted set iff four pebbles can be gathered on its
/// endpoints. Accepted edges are kept as an orientation (tail spent a pebble).
class PebbleGame {
 public:
  explicit PebbleGame(int vertex_count);

  /// Accepts {u,v} if it is independent of the accepted edges.
  bool try_add(int u, int v);
  /// Independence test only; pebbles may move but nothing is accepted.
  bool independent(int u, int v);

  int accepted() const { return accepted_; }
  int free_pebbles() const;

 private:
  bool gather_four(int u, int v);
  bool fetch_pebble(int target, int blocked);

  std::vector<int> pebbles_;
  std::vector<std::vector<int>> out_;
  int accepted_ = 0;
};

struct RankReport {
  int rank = 0;
  std::vector<Edge> independent_edges;
};

/// Rigidity matroid rank via the pebble game over edges in sorted order.
RankReport rank(const Graph& g);

bool is_rigid(const Graph& g);
bool is_minimally_rigid(const Graph& g);
/// Rigid and still rigid after deleting any single edge.
bool is_redundantly_rigid(const Graph& g);
/// K2/K3 when n <= 3; 3-connected and redundantly rigid otherwise.
bool is_globally_rigid(const Graph& g);
/// Vertex 3-connectivity; throws for n < 4.
bool is_3connected(const Graph& g);

/// Pairs whose edge lies in the span of E(G).
class LinkageMatrix {
 public:
  explicit LinkageMatrix(int vertex_count) : rows_(static_cast<std::size_t>(vertex_count), 0) {}

  bool linked(int u, int v) const { return (rows_[static_cast<std::size_t>(u)] >> v) & 1U; }
  void set(int u, int v) {
    rows_[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
    rows_[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
  }
  std::uint64_t row(int u) const { return rows_[static_cast<std::size_t>(u)]; }
  int size() const { return static_cast<int>(rows_.size()); }

 private:
  std::vector<std::uint64_t> rows_;
};

LinkageMatrix linkage(const Graph& g);

/// Maximal rigid subgraphs of a connected graph, ordered by their least edge.
struct RigidDecomposition {
  std::vector<Subgraph> components;
};

/// Throws GraphError on disconnected input. The decomposition invariants
/// (edge partition, pairwise overlap <= 1 vertex, rigidity, maximality and
/// rank = sum(2|V_i| - 3)) are checked on every call; a violation throws
/// std::logic_error.
RigidDecomposition maximal_rigid_subgraphs(const Graph& g);

/// Greedy minimally rigid spanning subgraph: edges are tried in `order`
/// (sorted edges when empty) and kept when independent.
Graph minimally_rigid_spanning_subgraph(const Graph& g, std::span<const Edge> order = {});

/// Edges e with G - e not rigid, sorted. Requires rigid g.
std::vector<Edge> non_redundant_edges(const Graph& g);
/// Lexicographically first non-redundant edge, or nullopt when redundantly rigid.
std::optional<Edge> find_non_redundant_edge(const Graph& g);

}  // namespace rigidity

#endif  // RIGIDITY_MATROID_HPP
