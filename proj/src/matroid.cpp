#include "rigidity/matroid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rigidity {

namespace {

void require_two_vertices(const Graph& g, const char* what) {
  if (g.vertex_count() < 2) throw GraphError(std::string(what) + " needs at least two vertices");
}

}  // namespace

PebbleGame::PebbleGame(int vertex_count)
    : pebbles_(static_cast<std::size_t>(vertex_count), 2), out_(static_cast<std::size_t>(vertex_count)) {}

int PebbleGame::free_pebbles() const { return std::accumulate(pebbles_.begin(), pebbles_.end(), 0); }

bool PebbleGame::fetch_pebble(int target, int blocked) {
  // DFS along accepted orientations for a free pebble, then reverse the path.
  const std::size_t n = pebbles_.size();
  std::vector<int> parent(n, -1);
  std::vector<bool> seen(n, false);
  seen[static_cast<std::size_t>(target)] = true;
  seen[static_cast<std::size_t>(blocked)] = true;
  std::vector<int> stack{target};
  int found = -1;
  while (!stack.empty() && found < 0) {
    const int x = stack.back();
    stack.pop_back();
    for (int y : out_[static_cast<std::size_t>(x)]) {
      if (seen[static_cast<std::size_t>(y)]) continue;
      seen[static_cast<std::size_t>(y)] = true;
      parent[static_cast<std::size_t>(y)] = x;
      if (pebbles_[static_cast<std::size_t>(y)] > 0) {
        found = y;
        break;
      }
      stack.push_back(y);
    }
  }
  if (found < 0) return false;
  --pebbles_[static_cast<std::size_t>(found)];
  for (int y = found; y != target;) {
    const int x = parent[static_cast<std::size_t>(y)];
    auto& xs = out_[static_cast<std::size_t>(x)];
    xs.erase(std::find(xs.begin(), xs.end(), y));
    out_[static_cast<std::size_t>(y)].push_back(x);
    y = x;
  }
  ++pebbles_[static_cast<std::size_t>(target)];
  return true;
}

bool PebbleGame::gather_four(int u, int v) {
  while (pebbles_[static_cast<std::size_t>(u)] < 2 && fetch_pebble(u, v)) {
  }
  while (pebbles_[static_cast<std::size_t>(v)] < 2 && fetch_pebble(v, u)) {
  }
  return pebbles_[static_cast<std::size_t>(u)] + pebbles_[static_cast<std::size_t>(v)] == 4;
}

bool PebbleGame::independent(int u, int v) { return gather_four(u, v); }

bool PebbleGame::try_add(int u, int v) {
  if (!gather_four(u, v)) return false;
  --pebbles_[static_cast<std::size_t>(u)];
  out_[static_cast<std::size_t>(u)].push_back(v);
  ++accepted_;
  return true;
}

RankReport rank(const Graph& g) {
  PebbleGame game(g.vertex_count());
  RankReport report;
  for (const Edge& e : g.edges()) {
    if (game.try_add(e.u, e.v)) report.independent_edges.push_back(e);
  }
  report.rank = game.accepted();
  return report;
}

bool is_rigid(const Graph& g) {
  require_two_vertices(g, "rigidity test");
  return rank(g).rank == 2 * g.vertex_count() - 3;
}

bool is_minimally_rigid(const Graph& g) {
  require_two_vertices(g, "minimal rigidity test");
  const auto expected = static_cast<std::size_t>(2 * g.vertex_count() - 3);
  return g.edge_count() == expected && is_rigid(g);
}

bool is_redundantly_rigid(const Graph& g) {
  if (!is_rigid(g)) return false;
  for (const Edge& e : g.edges()) {
    if (!is_rigid(g.without_edge(e))) return false;
  }
  return true;
}

bool is_3connected(const Graph& g) {
  if (g.vertex_count() < 4) throw GraphError("3-connectivity needs at least four vertices");
  return is_connected(g) && find_two_cuts(g).empty();
}

bool is_globally_rigid(const Graph& g) {
  require_two_vertices(g, "global rigidity test");
  const int n = g.vertex_count();
  if (n <= 3) return g.edge_count() == static_cast<std::size_t>(n * (n - 1) / 2);
  return is_3connected(g) && is_redundantly_rigid(g);
}

LinkageMatrix linkage(const Graph& g) {
  require_two_vertices(g, "linkage");
  const int n = g.vertex_count();
  PebbleGame game(n);
  for (const Edge& e : g.edges()) game.try_add(e.u, e.v);
  LinkageMatrix out(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.has_edge(u, v) || !game.independent(u, v)) out.set(u, v);
    }
  }
  return out;
}

namespace {

void check_decomposition(const Graph& g, const RigidDecomposition& d) {
  auto fail = [](const std::string& what) {
    throw std::logic_error("rigid decomposition invariant violated: " + what);
  };
  std::vector<Edge> all;
  int rank_sum = 0;
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    const Subgraph& c = d.components[i];
    if (c.vertices.size() < 2 || !is_rigid(c.graph)) fail("component not rigid");
    rank_sum += 2 * static_cast<int>(c.vertices.size()) - 3;
    const auto es = c.parent_edges();
    all.insert(all.end(), es.begin(), es.end());
    for (std::size_t j = i + 1; j < d.components.size(); ++j) {
      const auto& o = d.components[j].vertices;
      const auto shared = std::count_if(c.vertices.begin(), c.vertices.end(),
                                        [&](int v) { return std::find(o.begin(), o.end(), v) != o.end(); });
      if (shared > 1) fail("components share more than one vertex");
    }
    for (int w = 0; w < g.vertex_count(); ++w) {
      if (std::find(c.vertices.begin(), c.vertices.end(), w) != c.vertices.end()) continue;
      std::vector<int> grown = c.vertices;
      grown.push_back(w);
      if (is_rigid(induced_subgraph(g, grown).graph)) fail("component not vertex-maximal");
    }
  }
  std::sort(all.begin(), all.end());
  if (all != g.edges()) fail("edges not partitioned");
  if (rank_sum != rank(g).rank) fail("rank differs from sum of component ranks");
}

}  // namespace

RigidDecomposition maximal_rigid_subgraphs(const Graph& g) {
  require_two_vertices(g, "rigid decomposition");
  if (!is_connected(g)) throw GraphError("rigid decomposition needs a connected graph");
  const LinkageMatrix links = linkage(g);
  const int n = g.vertex_count();
  RigidDecomposition d;
  std::vector<Edge> covered;
  for (const Edge& e : g.edges()) {
    if (std::binary_search(covered.begin(), covered.end(), e)) continue;
    std::uint64_t members = links.row(e.u) & links.row(e.v);
    members |= (std::uint64_t{1} << e.u) | (std::uint64_t{1} << e.v);
    std::vector<int> vs;
    for (int w = 0; w < n; ++w) {
      if ((members >> w) & 1U) vs.push_back(w);
    }
    Subgraph comp = induced_subgraph(g, vs);
    const auto es = comp.parent_edges();
    covered.insert(covered.end(), es.begin(), es.end());
    std::sort(covered.begin(), covered.end());
    d.components.push_back(std::move(comp));
  }
  check_decomposition(g, d);
  return d;
}

Graph minimally_rigid_spanning_subgraph(const Graph& g, std::span<const Edge> order) {
  require_two_vertices(g, "spanning subgraph");
  std::vector<Edge> edges = g.edges();
  if (!order.empty()) {
    std::vector<Edge> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted != edges) throw GraphError("edge order is not a permutation of the edges");
    edges.assign(order.begin(), order.end());
  }
  PebbleGame game(g.vertex_count());
  Graph out(g.vertex_count());
  for (const Edge& e : edges) {
    if (game.try_add(e.u, e.v)) out.add_edge(e);
  }
  if (game.accepted() != 2 * g.vertex_count() - 3) {
    throw GraphError("minimally rigid spanning subgraph requested for a non-rigid graph");
  }
  return out;
}

std::vector<Edge> non_redundant_edges(const Graph& g) {
  if (!is_rigid(g)) throw GraphError("non-redundant edge search needs a rigid graph");
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    if (!is_rigid(g.without_edge(e))) out.push_back(e);
  }
  return out;
}

std::optional<Edge> find_non_redundant_edge(const Graph& g) {
  if (!is_rigid(g)) throw GraphError("non-redundant edge search needs a rigid graph");
  for (const Edge& e : g.edges()) {
    if (!is_rigid(g.without_edge(e))) return e;
  }
  return std::nullopt;
}

}  // namespace rigidity
