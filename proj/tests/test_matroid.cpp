#include "doctest.h"

#include <set>

#include "support.hpp"

using namespace rigidity;
using fixtures::e1;

namespace {

std::set<std::set<int>> vertex_sets(const RigidDecomposition& dec) {
  std::set<std::set<int>> out;
  for (const Subgraph& part : dec.components) out.insert(std::set<int>(part.vertices.begin(), part.vertices.end()));
  return out;
}

std::set<int> one_based_set(std::initializer_list<int> vs) {
  std::set<int> out;
  for (int v : vs) out.insert(v - 1);
  return out;
}

// Vertex-maximal subsets S (|S| >= 2) with G[S] rigid, by enumerating all
// vertex subsets. Rigid subgraphs with two vertices are single edges.
std::set<std::set<int>> brute_force_components(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::uint32_t> rigid_sets;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    const int size = __builtin_popcount(s);
    if (size < 2) continue;
    std::vector<int> vs;
    for (int v = 0; v < n; ++v) {
      if (s >> v & 1U) vs.push_back(v);
    }
    const Graph sub = induced_subgraph(g, vs).graph;
    if (rank(sub).rank == 2 * size - 3) rigid_sets.push_back(s);
  }
  std::set<std::set<int>> out;
  for (std::uint32_t s : rigid_sets) {
    const bool maximal = std::none_of(rigid_sets.begin(), rigid_sets.end(),
                                      [&](std::uint32_t t) { return t != s && (t & s) == s; });
    if (!maximal) continue;
    std::set<int> vs;
    for (int v = 0; v < n; ++v) {
      if (s >> v & 1U) vs.insert(v);
    }
    out.insert(vs);
  }
  return out;
}

}  // namespace

TEST_CASE("rank examples") {
  CHECK(rank(fixtures::complete(3)).rank == 3);
  CHECK(rank(fixtures::complete(4)).rank == 5);
  CHECK(rank(fixtures::complete(4)).independent_edges.size() == 5);
  CHECK(rank(fixtures::example_g().without_edge(e1(1, 2))).rank == 10);
}

TEST_CASE("rigidity predicates") {
  CHECK(is_rigid(fixtures::complete(3)));
  CHECK_FALSE(is_rigid(fixtures::cycle(4)));
  CHECK(is_rigid(fixtures::example_g()));

  CHECK(is_minimally_rigid(fixtures::k4_minus_edge()));
  CHECK_FALSE(is_minimally_rigid(fixtures::complete(4)));
  CHECK(is_minimally_rigid(fixtures::example_h()));

  CHECK_FALSE(is_redundantly_rigid(fixtures::example_g()));
  CHECK(is_redundantly_rigid(fixtures::complete(4)));
  CHECK_FALSE(is_redundantly_rigid(fixtures::complete(3)));

  CHECK(is_globally_rigid(fixtures::complete(4)));
  CHECK_FALSE(is_globally_rigid(fixtures::example_g()));
  CHECK(is_globally_rigid(fixtures::complete(2)));
  CHECK(is_globally_rigid(fixtures::complete(3)));
  CHECK_FALSE(is_globally_rigid(fixtures::path(3)));
  const Graph g1 = induced_subgraph(fixtures::example_g(), std::vector<int>{3, 4, 5, 6}).graph;
  CHECK(g1 == fixtures::complete(4));
  CHECK(is_globally_rigid(g1));

  CHECK(is_3connected(fixtures::complete(4)));
  CHECK_FALSE(is_3connected(fixtures::k4_minus_edge()));
  CHECK(is_3connected(fixtures::example_g()));
  CHECK_THROWS_AS(is_3connected(fixtures::complete(3)), GraphError);
}

TEST_CASE("linkage examples") {
  const LinkageMatrix k4e = linkage(fixtures::k4_minus_edge());
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) CHECK(k4e.linked(u, v));
  }
  const Graph pendant = fixtures::from_one_based(4, {{1, 2}, {1, 3}, {2, 3}, {3, 4}});
  const LinkageMatrix lp = linkage(pendant);
  CHECK_FALSE(lp.linked(0, 3));
  CHECK_FALSE(lp.linked(1, 3));
  CHECK(lp.linked(2, 3));
  const LinkageMatrix lc = linkage(fixtures::cycle(4));
  CHECK_FALSE(lc.linked(0, 2));
  CHECK_FALSE(lc.linked(1, 3));
}

TEST_CASE("maximal rigid subgraphs of the worked examples") {
  const auto dec = maximal_rigid_subgraphs(fixtures::example_g().without_edge(e1(1, 2)));
  CHECK(dec.components.size() == 6);
  const std::set<std::set<int>> expected{one_based_set({4, 5, 6, 7}), one_based_set({1, 3}), one_based_set({1, 7}),
                                         one_based_set({2, 3}), one_based_set({2, 6}), one_based_set({3, 5})};
  CHECK(vertex_sets(dec) == expected);

  CHECK(maximal_rigid_subgraphs(fixtures::complete(3)).components.size() == 1);

  const auto big = maximal_rigid_subgraphs(fixtures::example_big_g().without_edge(e1(10, 11)));
  const std::set<std::set<int>> expected_big{one_based_set({1, 2, 3, 4, 5, 6, 7}), one_based_set({4, 8, 9}),
                                             one_based_set({5, 10}), one_based_set({7, 11}),
                                             one_based_set({8, 10}), one_based_set({9, 11})};
  CHECK(vertex_sets(big) == expected_big);
  CHECK_THROWS_AS(maximal_rigid_subgraphs(fixtures::from_one_based(4, {{1, 2}, {3, 4}})), GraphError);
}

TEST_CASE("minimally rigid spanning subgraphs and non-redundant edges") {
  const Graph k4_span = minimally_rigid_spanning_subgraph(fixtures::complete(4));
  CHECK(k4_span.edge_count() == 5);
  CHECK(is_minimally_rigid(k4_span));
  CHECK_FALSE(k4_span.has_edge(2, 3));
  CHECK(minimally_rigid_spanning_subgraph(fixtures::k4_minus_edge()) == fixtures::k4_minus_edge());
  CHECK_THROWS_AS(minimally_rigid_spanning_subgraph(fixtures::cycle(4)), GraphError);

  // The greedy choice is order dependent; preferring everything but {5,7}
  // on the K4 block leaves exactly that edge out.
  const Subgraph block = induced_subgraph(fixtures::example_g(), std::vector<int>{3, 4, 5, 6});
  std::vector<Edge> order;
  for (const Edge& e : block.graph.edges()) {
    if (block.to_parent(e) != e1(5, 7)) order.push_back(e);
  }
  for (const Edge& e : block.graph.edges()) {
    if (block.to_parent(e) == e1(5, 7)) order.push_back(e);
  }
  const Graph h1 = minimally_rigid_spanning_subgraph(block.graph, order);
  CHECK(h1.edge_count() == 5);
  CHECK_FALSE(h1.has_edge(1, 3));

  CHECK(find_non_redundant_edge(fixtures::example_g()) == e1(1, 2));
  CHECK_FALSE(find_non_redundant_edge(fixtures::complete(4)).has_value());
  const auto big_edges = non_redundant_edges(fixtures::example_big_g());
  CHECK(std::find(big_edges.begin(), big_edges.end(), e1(10, 11)) != big_edges.end());
  CHECK_THROWS_AS(find_non_redundant_edge(fixtures::cycle(4)), GraphError);
}

TEST_CASE("pebble-game rank equals the brute-force sparse rank for every graph up to 6 vertices") {
  std::size_t checked = 0;
  for (int n = 2; n <= 6; ++n) {
    for (const Graph& g : fixtures::classes(n)) {
      const RankReport report = rank(g);
      REQUIRE(report.rank == fixtures::brute_force_rank(g));
      CHECK(report.independent_edges.size() == static_cast<std::size_t>(report.rank));
      CHECK(fixtures::brute_force_rank(Graph(n, report.independent_edges)) == report.rank);
      ++checked;
    }
  }
  CHECK(checked == 207);
}

TEST_CASE("rank is matroidal under edge addition") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 8);
    Graph g(n);
    int previous = 0;
    std::vector<Edge> all = fixtures::complete(n).edges();
    std::shuffle(all.begin(), all.end(), rng);
    for (const Edge& e : all) {
      g.add_edge(e);
      const int r = rank(g).rank;
      CHECK((r - previous == 0 || r - previous == 1));
      CHECK(r <= 2 * n - 3);
      previous = r;
    }
    CHECK(previous == 2 * n - 3);
  }
}

TEST_CASE("rank identity over maximal rigid subgraphs on random connected graphs") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const Graph g = fixtures::random_connected_graph(n, 0.25 + 0.5 * static_cast<double>(rng() % 100) / 100.0, rng);
    const RigidDecomposition dec = maximal_rigid_subgraphs(g);
    int sum = 0;
    std::size_t edges = 0;
    for (const Subgraph& part : dec.components) {
      sum += 2 * part.graph.vertex_count() - 3;
      edges += part.graph.edge_count();
      CHECK(is_rigid(part.graph));
    }
    CHECK(rank(g).rank == sum);
    CHECK(edges == g.edge_count());
    for (std::size_t a = 0; a < dec.components.size(); ++a) {
      for (std::size_t b = a + 1; b < dec.components.size(); ++b) {
        const auto& x = dec.components[a].vertices;
        const auto& y = dec.components[b].vertices;
        const auto shared = std::count_if(x.begin(), x.end(), [&](int v) { return std::find(y.begin(), y.end(), v) != y.end(); });
        CHECK(shared <= 1);
      }
    }
  }
}

TEST_CASE("maximal rigid subgraphs agree with brute-force enumeration up to 7 vertices") {
  for (int n = 2; n <= 7; ++n) {
    for (const Graph& g : fixtures::classes(n)) {
      if (!is_connected(g)) continue;
      REQUIRE(vertex_sets(maximal_rigid_subgraphs(g)) == brute_force_components(g));
    }
  }
}

TEST_CASE("assembled spanning subgraph H is minimally rigid whenever a non-redundant edge exists") {
  std::size_t applicable = 0;
  for (int n = 3; n <= 7; ++n) {
    for (const Graph& g : fixtures::rigid_classes(n)) {
      for (const Edge& e : non_redundant_edges(g)) {
        Graph h(n);
        h.add_edge(e);
        for (const Subgraph& part : maximal_rigid_subgraphs(g.without_edge(e)).components) {
          for (const Edge& le : minimally_rigid_spanning_subgraph(part.graph).edges()) h.add_edge(part.to_parent(le));
        }
        CHECK(is_minimally_rigid(h));
        ++applicable;
      }
    }
  }
  CHECK(applicable > 0);
}

TEST_CASE("minimal rigidity is rigidity without a circuit, up to 6 vertices") {
  // A circuit is an edge set C with |C| = 2|V(C)| - 2 all of whose proper
  // vertex subsets W span at most 2|W| - 3 edges of C.
  auto has_circuit = [](const Graph& g) {
    const int n = g.vertex_count();
    for (std::uint32_t s = 0; s < (1U << n); ++s) {
      const int size = __builtin_popcount(s);
      if (size < 4) continue;
      std::vector<int> vs;
      for (int v = 0; v < n; ++v) {
        if (s >> v & 1U) vs.push_back(v);
      }
      const Graph sub = induced_subgraph(g, vs).graph;
      const std::vector<Edge> edges = sub.edges();
      const int m = static_cast<int>(edges.size());
      if (m < 2 * size - 2) continue;
      std::vector<std::pair<std::uint32_t, int>> proper;
      for (std::uint32_t w = 0; w + 1 < (1U << size); ++w) {
        const int ws = __builtin_popcount(w);
        if (ws < 2) continue;
        std::uint32_t mask = 0;
        for (int k = 0; k < m; ++k) {
          const Edge& e = edges[static_cast<std::size_t>(k)];
          if ((w >> e.u & 1U) && (w >> e.v & 1U)) mask |= 1U << k;
        }
        proper.emplace_back(mask, 2 * ws - 3);
      }
      for (std::uint32_t pick = 0; pick < (1U << m); ++pick) {
        if (__builtin_popcount(pick) != 2 * size - 2) continue;
        const bool circuit = std::all_of(proper.begin(), proper.end(), [&](const auto& wc) {
          return __builtin_popcount(pick & wc.first) <= wc.second;
        });
        if (circuit) return true;
      }
    }
    return false;
  };
  for (int n = 2; n <= 6; ++n) {
    for (const Graph& g : fixtures::rigid_classes(n)) CHECK(is_minimally_rigid(g) == !has_circuit(g));
  }
}

TEST_CASE("global rigidity implies redundant rigidity and 3-connectivity") {
  for (int n = 2; n <= 7; ++n) {
    for (const Graph& g : fixtures::rigid_classes(n)) {
      if (!is_globally_rigid(g)) continue;
      if (n >= 4) {
        CHECK(is_redundantly_rigid(g));
        CHECK(is_3connected(g));
      } else {
        CHECK(g == fixtures::complete(n));
      }
    }
  }
}
