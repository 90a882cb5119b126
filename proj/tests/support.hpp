#ifndef RIGIDITY_TEST_SUPPORT_HPP
#define RIGIDITY_TEST_SUPPORT_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/census.hpp"
#include "rigidity/count.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/matroid.hpp"

namespace fixtures {

using rigidity::Edge;
using rigidity::Graph;

// 1-based edge list to a graph.
inline Graph from_one_based(int n, std::initializer_list<std::pair<int, int>> edges) {
  Graph g(n);
  for (auto [a, b] : edges) g.add_edge(a - 1, b - 1);
  return g;
}

inline Edge e1(int a, int b) { return rigidity::make_edge(a - 1, b - 1); }

inline Graph complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

inline Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

// K4 without the edge {1,2}.
inline Graph k4_minus_edge() { return from_one_based(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}); }

inline Graph prism() {
  return from_one_based(6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}, {1, 4}, {2, 5}, {3, 6}});
}

// The rigid 7-vertex graph with one non-redundant edge {1,2}.
inline Graph example_g() {
  return from_one_based(7, {{1, 2}, {1, 3}, {1, 7}, {2, 3}, {2, 6}, {3, 5}, {4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7},
                            {6, 7}});
}

// example_g without {5,7}; minimally rigid.
inline Graph example_h() { return example_g().without_edge(e1(5, 7)); }

// The 11-vertex graph built around a K4-containing block on 1..7.
inline Graph example_big_g() {
  return from_one_based(11, {{2, 3}, {2, 1}, {3, 1}, {2, 6}, {3, 5}, {1, 7}, {6, 5}, {6, 7}, {6, 4}, {5, 7},
                             {5, 4}, {5, 10}, {7, 4}, {7, 11}, {4, 8}, {4, 9}, {8, 9}, {8, 10}, {9, 11},
                             {10, 11}});
}

inline Graph example_big_h() { return example_big_g().without_edge(e1(5, 7)); }

// Frozen solver output for the minimally rigid graphs on at most 7
// vertices, keyed by canonical form.
class LamanTable {
 public:
  explicit LamanTable(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream row(line);
      std::string code;
      int n = 0;
      std::string plane;
      std::string sphere;
      row >> code >> n >> plane >> sphere;
      const Graph g = rigidity::decode_integer({mpz_class(code), n});
      entries_[rigidity::canonical_form(g)] = {mpz_class(plane), mpz_class(sphere)};
    }
  }

  std::size_t size() const { return entries_.size(); }

  mpz_class lookup(const Graph& g, rigidity::Mode mode) const {
    auto it = entries_.find(rigidity::canonical_form(g));
    if (it == entries_.end()) {
      throw std::out_of_range("no table entry for " + rigidity::format_edges(g.edges()));
    }
    ++calls_;
    return mode == rigidity::Mode::Plane ? it->second.first : it->second.second;
  }

  rigidity::BaseCounter counter() const {
    return [this](const Graph& g, rigidity::Mode mode) { return lookup(g, mode); };
  }

  std::size_t calls() const { return calls_.load(); }

 private:
  std::map<std::string, std::pair<mpz_class, mpz_class>> entries_;
  mutable std::atomic<std::size_t> calls_{0};
};

inline const LamanTable& laman_table() {
  static const LamanTable table(RIGIDITY_TEST_DATA "/laman_counts.txt");
  return table;
}

// Graphs on n vertices up to isomorphism, cached per n.
inline const std::vector<Graph>& classes(int n) {
  static std::map<int, std::vector<Graph>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, rigidity::graphs_up_to_isomorphism(n)).first;
  return it->second;
}

inline std::vector<Graph> rigid_classes(int n) {
  std::vector<Graph> out;
  for (const Graph& g : classes(n)) {
    if (n >= 2 && rigidity::is_rigid(g)) out.push_back(g);
  }
  return out;
}

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) g.add_edge(i, j);
    }
  }
  return g;
}

inline Graph random_connected_graph(int n, double p, std::mt19937_64& rng) {
  for (;;) {
    Graph g = random_graph(n, p, rng);
    if (rigidity::is_connected(g)) return g;
  }
}

inline Graph shuffled(const Graph& g, std::mt19937_64& rng) {
  std::vector<int> perm(static_cast<std::size_t>(g.vertex_count()));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return rigidity::relabel(g, perm);
}

// ---------------------------------------------------------------------------
// Brute-force oracles.

// Edge bit masks: bit index of pair (i,j) in row-major order.
inline int pair_index(int n, int i, int j) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

// Largest (2,3)-sparse edge subset, by exhaustive search over subsets.
inline int brute_force_rank(const Graph& g) {
  const int n = g.vertex_count();
  const std::vector<Edge> edges = g.edges();
  const int m = static_cast<int>(edges.size());
  // Edge mask induced by each vertex subset of size >= 2.
  std::vector<std::pair<std::uint32_t, int>> induced;
  for (std::uint32_t w = 0; w < (1U << n); ++w) {
    const int size = __builtin_popcount(w);
    if (size < 2) continue;
    std::uint32_t mask = 0;
    for (int k = 0; k < m; ++k) {
      if ((w >> edges[static_cast<std::size_t>(k)].u & 1U) && (w >> edges[static_cast<std::size_t>(k)].v & 1U)) {
        mask |= 1U << k;
      }
    }
    induced.emplace_back(mask, 2 * size - 3);
  }
  int best = 0;
  for (std::uint32_t s = 0; s < (1U << m); ++s) {
    const int size = __builtin_popcount(s);
    if (size <= best) continue;
    bool sparse = true;
    for (const auto& [mask, cap] : induced) {
      if (__builtin_popcount(s & mask) > cap) {
        sparse = false;
        break;
      }
    }
    if (sparse) best = size;
  }
  return best;
}

// Connectivity of g minus the `removed` vertices by plain flood fill over
// has_edge, independent of the bit-row helpers.
inline bool flood_connected(const Graph& g, std::uint64_t removed) {
  const int n = g.vertex_count();
  std::vector<int> stack;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  int remaining = 0;
  for (int v = 0; v < n; ++v) {
    if (!(removed >> v & 1U)) {
      ++remaining;
      if (stack.empty()) {
        stack.push_back(v);
        seen[static_cast<std::size_t>(v)] = true;
      }
    }
  }
  int reached = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++reached;
    for (int w = 0; w < n; ++w) {
      if (!(removed >> w & 1U) && !seen[static_cast<std::size_t>(w)] && g.has_edge(v, w)) {
        seen[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  return reached == remaining;
}

}  // namespace fixtures

#endif  // RIGIDITY_TEST_SUPPORT_HPP
