#ifndef RIGIDITY_COUNT_HPP
#define RIGIDITY_COUNT_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "rigidity/algebraic.hpp"
#include "rigidity/graph.hpp"

namespace rigidity {

/// The input has a positive-dimensional fibre (rank < 2n - 3).
class NotRigid : public GraphError {
 public:
  using GraphError::GraphError;
};

/// An internal consistency check of the recursion failed. The message
/// carries the offending graph and the partial derivation.
class EngineError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Rule { SingleEdge, GloballyRigid, BaseSolver, NonRedundant, TwoCut, DegreeTwoPeel };

std::string_view to_string(Rule rule);

/// One step of a derivation. Vertex labels refer to the graph recorded in
/// `code`; a node reused from the memo describes the representative graph it
/// was first computed for, which is isomorphic to the one asked about.
struct TraceNode {
  Rule rule = Rule::SingleEdge;
  mpz_class value;
  IntegerCode code;
  std::size_t edge_count = 0;
  bool cached = false;

  /// NonRedundant: the deleted edge e. TwoCut: the separating pair s.
  std::optional<Edge> edge;
  /// NonRedundant: vertex sets of the maximal rigid subgraphs of G - e.
  std::vector<std::vector<int>> components;
  /// TwoCut: "edge" (s in E), "both-rigid" or "one-rigid".
  std::string cut_case;
  /// DegreeTwoPeel: the removed vertex.
  int peeled_vertex = -1;

  /// NonRedundant: [H, G_1..G_m, H_1..H_m]. TwoCut: the two sides.
  /// DegreeTwoPeel: G - v. Empty for leaves and when tracing is off.
  std::vector<std::shared_ptr<const TraceNode>> children;
};

/// Recomputes the value from the children's values with the rule's
/// formula, recursively; leaves contribute their stored value. Throws
/// EngineError if a node's stored value disagrees or a division is inexact.
mpz_class reevaluate(const TraceNode& node);

/// Trace as JSON text (1-based vertex labels, values as decimal strings).
std::string trace_json(const TraceNode& node, int indent = 2);

/// Results keyed by (canonical form, mode). Concurrent lookups, exclusive
/// inserts; the first insert for a key wins.
class MemoCache {
 public:
  std::shared_ptr<const TraceNode> find(const std::string& key, Mode mode) const;
  std::shared_ptr<const TraceNode> insert(const std::string& key, Mode mode, std::shared_ptr<const TraceNode> node);
  std::size_t size() const;
  void clear();

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::pair<std::string, Mode>, std::shared_ptr<const TraceNode>> entries_;
};

/// Counter for minimally rigid graphs.
using BaseCounter = std::function<mpz_class(const Graph&, Mode)>;

struct CountOptions {
  Mode mode = Mode::Plane;
  SolverConfig solver;
  /// Defaults to base_count with `solver`.
  BaseCounter base;
  /// Remove degree-2 vertices (factor 2 each) before dispatch.
  bool peel = false;
  bool trace = true;
  std::shared_ptr<MemoCache> memo;

  /// Choice overrides for the top-level graph only; the top level then
  /// bypasses the memo lookup. `top_edge` must be non-redundant.
  std::optional<Edge> top_edge;
  /// Index into find_two_cuts for the top-level 2-cut rule.
  std::optional<std::size_t> top_cut;
  /// Preference order for the greedy spanning subgraphs at the top level;
  /// unlisted edges follow in sorted order.
  std::vector<Edge> top_spanning_order;
  /// Nonzero: shuffle greedy orders below the top level with this seed.
  std::uint64_t shuffle_seed = 0;
};

struct CountStats {
  std::size_t nodes = 0;
  std::size_t base_calls = 0;
  std::size_t cache_hits = 0;
};

struct CountResult {
  mpz_class value;
  std::shared_ptr<const TraceNode> trace;
  CountStats stats;
};

/// c2(G) in the plane or c2°(G) on the sphere by the recursion; the
/// minimally rigid leaves go to the base counter. Throws NotRigid.
CountResult realisation_count(const Graph& g, const CountOptions& options = {});

struct PeelResult {
  Graph graph;
  int vertex = -1;
  mpz_class multiplier;
};

/// Deletes the least vertex of degree 2; the count doubles across this step.
/// Requires a rigid graph with n >= 4.
PeelResult peel_degree2(const Graph& g);

/// Completion count for a rank-r partial PSD matrix with pattern g; empty
/// optional means infinitely many.
struct PsdResult {
  std::optional<mpz_class> count;
  bool finite() const { return count.has_value(); }
};

/// r = 1: one; r = 2: 2^(blocks - 1) for connected g; r = 3: c2°(g) when
/// rigid. Throws std::invalid_argument for other r or disconnected r = 2.
PsdResult psd_completion_count(const Graph& g, int r, const CountOptions& options = {});

/// 2^((n-4) mod 8) * 1216^floor((n-4)/8), for n >= 4.
mpz_class fan_lower_bound_k1(int n);

/// 2^((n-4) mod (v-4)) * c^floor((n-4)/(v-4)) for a seed graph with v >= 5
/// vertices and count c.
mpz_class fan_lower_bound(int n, const mpz_class& seed_count, int seed_vertices);

/// seed_count^(1/seed_excess_vertices).
double growth_base(const mpz_class& seed_count, int seed_excess_vertices);

}  // namespace rigidity

#endif  // RIGIDITY_COUNT_HPP
