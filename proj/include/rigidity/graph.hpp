#ifndef RIGIDITY_GRAPH_HPP
#define RIGIDITY_GRAPH_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rigidity {

/// Raised on malformed input: bad codes, bad edge lists, violated preconditions.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Undirected edge with u < v. Ordering is lexicographic on (u, v).
struct Edge {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Builds a normalized edge; rejects loops.
Edge make_edge(int a, int b);

/// Simple undirected graph on vertices 0..n-1, adjacency held as bit rows.
class Graph {
 public:
  static constexpr int kMaxVertices = 64;

  explicit Graph(int vertex_count = 1);
  Graph(int vertex_count, std::span<const Edge> edges);
  Graph(int vertex_count, std::initializer_list<Edge> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return m_; }

  bool has_edge(int a, int b) const;
  bool has_edge(Edge e) const { return has_edge(e.u, e.v); }
  void add_edge(int a, int b);
  void add_edge(Edge e) { add_edge(e.u, e.v); }
  void remove_edge(int a, int b);
  void remove_edge(Edge e) { remove_edge(e.u, e.v); }

  std::uint64_t neighbours(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(int v) const;
  int min_degree() const;

  /// Edges sorted lexicographically.
  std::vector<Edge> edges() const;

  Graph with_edge(Edge e) const;
  Graph without_edge(Edge e) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(int v) const;

  int n_ = 1;
  std::size_t m_ = 0;
  std::vector<std::uint64_t> adj_;
};

/// An induced (or otherwise derived) subgraph remembering the parent labels:
/// local vertex i of `graph` is parent vertex `vertices[i]`.
struct Subgraph {
  std::vector<int> vertices;
  Graph graph;

  Edge to_parent(Edge local) const {
    return make_edge(vertices[static_cast<std::size_t>(local.u)],
                     vertices[static_cast<std::size_t>(local.v)]);
  }
  std::vector<Edge> parent_edges() const;
};

/// Induced subgraph on `vertices` (kept in the given order).
Subgraph induced_subgraph(const Graph& g, std::span<const int> vertices);

/// Graph with vertex v deleted; remaining vertices keep their relative order.
Subgraph remove_vertex(const Graph& g, int v);

// ---------------------------------------------------------------------------
// Integer codes: the strict upper triangle read row-wise as a binary number,
// first position (0,1) being the most significant bit.

struct IntegerCode {
  mpz_class value;
  std::optional<int> declared_n;
};

/// Smallest n with n(n-1)/2 >= bit-length(value); at least 1.
int minimal_vertex_count(const mpz_class& value);

Graph decode_integer(const IntegerCode& code);
IntegerCode encode_integer(const Graph& g);

/// Parses "<decimal>" or "<decimal> n=<k>".
IntegerCode parse_integer_code(const std::string& line);
std::string format_integer_code(const IntegerCode& code);

// ---------------------------------------------------------------------------
// Text edge lists: "n m" then m lines "i j", 1-based.

Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

/// 1-based "{1,2} {1,3} ..." rendering for reports.
std::string format_edges(std::span<const Edge> edges);

// ---------------------------------------------------------------------------
// Connectivity.

bool is_connected(const Graph& g);
std::vector<std::vector<int>> connected_components(const Graph& g);

/// Components of g restricted to vertices outside `removed` (bitmask).
std::vector<std::vector<int>> components_avoiding(const Graph& g, std::uint64_t removed);

/// Number of blocks (maximal 2-connected pieces, bridges included).
/// Throws GraphError on disconnected input or n < 2.
int biconnected_component_count(const Graph& g);

/// Articulation points of g restricted to vertices outside `removed`.
std::vector<int> articulation_points(const Graph& g, std::uint64_t removed = 0);

struct Cut2 {
  int u = 0;
  int v = 0;
  /// sides[0] is the smaller side (ties: smaller least vertex).
  std::array<std::vector<int>, 2> sides;
};

/// All separating vertex pairs, sorted by (u, v). Requires connected g, n >= 4.
std::vector<Cut2> find_two_cuts(const Graph& g);

struct CutSplit {
  Subgraph k;
  Subgraph l;
};

/// K is induced on sides[0] + {u,v}, L on sides[1] + {u,v}.
CutSplit split_at_cut(const Graph& g, const Cut2& cut);

// ---------------------------------------------------------------------------
// Canonical form for isomorphism-invariant keys.

/// Isomorphic graphs map to equal keys, non-isomorphic ones to distinct keys.
std::string canonical_form(const Graph& g);

/// Relabeling that realises canonical_form: canonical label of vertex v.
std::vector<int> canonical_labeling(const Graph& g);

/// Applies a vertex relabeling (new label of v is perm[v]).
Graph relabel(const Graph& g, std::span<const int> perm);

}  // namespace rigidity

#endif  // RIGIDITY_GRAPH_HPP
