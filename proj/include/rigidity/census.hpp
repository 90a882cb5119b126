#ifndef RIGIDITY_CENSUS_HPP
#define RIGIDITY_CENSUS_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "rigidity/count.hpp"
#include "rigidity/graph.hpp"

namespace rigidity {

/// Runs body(0..count-1) on `jobs` threads (jobs <= 1 runs inline). The
/// first exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body);

/// One representative per isomorphism class of graphs on n vertices,
/// ordered by canonical form. Built by extending the classes on n - 1
/// vertices with a new vertex in every possible way.
std::vector<Graph> graphs_up_to_isomorphism(int n);

/// Rigid members of graphs_up_to_isomorphism(n), optionally restricted to
/// a given edge count.
std::vector<Graph> rigid_graphs(int n, std::optional<std::size_t> edge_count = std::nullopt);

struct StatsRow {
  int n = 0;
  std::size_t graphs = 0;
  std::size_t rigid = 0;
  std::size_t minimally_rigid = 0;
  std::size_t globally_rigid = 0;
  std::size_t redundantly_rigid = 0;
  /// Rigid and not 3-connected (n >= 4).
  std::size_t two_cut = 0;
  /// Rigid, neither minimally nor redundantly rigid, and 3-connected.
  std::size_t other = 0;
};

StatsRow stats_row(int n);

struct TableEntry {
  int n = 0;
  int excess = 0;
  Mode mode = Mode::Plane;
  std::size_t graphs = 0;
  /// Zero when no rigid graph has 2n - 3 + excess edges.
  mpz_class maximum;
  std::optional<Graph> certificate;
};

/// Maximum count over rigid graphs with 2n - 3 + excess edges; the
/// certificate is the first maximiser in canonical order.
TableEntry table_entry(int n, int excess, const CountOptions& options, int jobs = 1);

/// Frequency of each (plane, sphere) pair over the rigid graphs on n
/// vertices.
std::map<std::pair<mpz_class, mpz_class>, std::size_t> compare_counts(int n, const CountOptions& options,
                                                                      int jobs = 1);

/// Parses one batch line: an integer code ("31", "31 n=4") or an inline
/// edge list with 1-based labels ("n=4 1-3 1-4 2-3 2-4 3-4").
Graph parse_graph_line(const std::string& line);

struct BatchRecord {
  std::string id;
  int n = 0;
  std::size_t m = 0;
  bool rigid = false;
  bool minimally_rigid = false;
  bool redundantly_rigid = false;
  bool globally_rigid = false;
  bool three_connected = false;
  bool has_two_cut = false;
  std::optional<mpz_class> plane;
  std::optional<mpz_class> sphere;
  double plane_seconds = 0;
  double sphere_seconds = 0;
  std::string error;
};

/// Classifies the graph and, when rigid, counts in the modes requested.
BatchRecord make_record(const std::string& id, const Graph& g, bool plane, bool sphere, const CountOptions& options);

/// Same for an input line; parse and count failures land in `error`.
BatchRecord make_record(const std::string& line, bool plane, bool sphere, const CountOptions& options);

std::string batch_tsv_header();
std::string batch_tsv_line(const BatchRecord& record);

}  // namespace rigidity

#endif  // RIGIDITY_CENSUS_HPP
