#include "rigidity/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

namespace rigidity {

namespace {

constexpr std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

std::size_t pair_position(int i, int j, int n) {
  // Row-wise index of (i, j), i < j, in the strict upper triangle.
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) -
         static_cast<std::size_t>(i) * static_cast<std::size_t>(i + 1) / 2 +
         static_cast<std::size_t>(j - i - 1);
}

std::size_t triangle_size(int n) {
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

}  // namespace

Edge make_edge(int a, int b) {
  if (a == b) throw GraphError("loop edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
  return a < b ? Edge{a, b} : Edge{b, a};
}

Graph::Graph(int vertex_count) : n_(vertex_count) {
  if (n_ < 1 || n_ > kMaxVertices) {
    throw GraphError("vertex count " + std::to_string(n_) + " outside [1, 64]");
  }
  adj_.assign(static_cast<std::size_t>(n_), 0);
}

Graph::Graph(int vertex_count, std::span<const Edge> edges) : Graph(vertex_count) {
  for (const Edge& e : edges) add_edge(e);
}

Graph::Graph(int vertex_count, std::initializer_list<Edge> edges)
    : Graph(vertex_count, std::span<const Edge>(edges.begin(), edges.size())) {}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) {
    throw GraphError("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n_));
  }
}

bool Graph::has_edge(int a, int b) const {
  check_vertex(a);
  check_vertex(b);
  return a != b && (adj_[static_cast<std::size_t>(a)] & bit(b)) != 0;
}

void Graph::add_edge(int a, int b) {
  check_vertex(a);
  check_vertex(b);
  if (a == b) throw GraphError("loop at vertex " + std::to_string(a));
  if (adj_[static_cast<std::size_t>(a)] & bit(b)) {
    throw GraphError("duplicate edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
  }
  adj_[static_cast<std::size_t>(a)] |= bit(b);
  adj_[static_cast<std::size_t>(b)] |= bit(a);
  ++m_;
}

void Graph::remove_edge(int a, int b) {
  if (!has_edge(a, b)) {
    throw GraphError("no edge {" + std::to_string(a) + "," + std::to_string(b) + "} to remove");
  }
  adj_[static_cast<std::size_t>(a)] &= ~bit(b);
  adj_[static_cast<std::size_t>(b)] &= ~bit(a);
  --m_;
}

int Graph::degree(int v) const {
  check_vertex(v);
  return std::popcount(adj_[static_cast<std::size_t>(v)]);
}

int Graph::min_degree() const {
  int best = n_;
  for (int v = 0; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u) {
    std::uint64_t higher = adj_[static_cast<std::size_t>(u)] & ~((bit(u) << 1) - 1);
    while (higher) {
      int v = std::countr_zero(higher);
      higher &= higher - 1;
      out.push_back({u, v});
    }
  }
  return out;
}

Graph Graph::with_edge(Edge e) const {
  Graph copy = *this;
  copy.add_edge(e);
  return copy;
}

Graph Graph::without_edge(Edge e) const {
  Graph copy = *this;
  copy.remove_edge(e);
  return copy;
}

std::vector<Edge> Subgraph::parent_edges() const {
  std::vector<Edge> out;
  for (const Edge& e : graph.edges()) out.push_back(to_parent(e));
  std::sort(out.begin(), out.end());
  return out;
}

Subgraph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  Subgraph sub{std::vector<int>(vertices.begin(), vertices.end()),
               Graph(static_cast<int>(vertices.size()))};
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (g.has_edge(vertices[i], vertices[j])) {
        sub.graph.add_edge(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return sub;
}

Subgraph remove_vertex(const Graph& g, int v) {
  std::vector<int> keep;
  for (int w = 0; w < g.vertex_count(); ++w) {
    if (w != v) keep.push_back(w);
  }
  return induced_subgraph(g, keep);
}

// ---------------------------------------------------------------------------

int minimal_vertex_count(const mpz_class& value) {
  if (value < 0) throw GraphError("negative graph code");
  const std::size_t bits = value == 0 ? 0 : mpz_sizeinbase(value.get_mpz_t(), 2);
  int n = 1;
  while (triangle_size(n) < bits) ++n;
  return n;
}

Graph decode_integer(const IntegerCode& code) {
  if (code.value < 0) throw GraphError("negative graph code");
  const int n = code.declared_n.value_or(minimal_vertex_count(code.value));
  if (n < 1) throw GraphError("declared vertex count must be positive");
  const std::size_t width = triangle_size(n);
  if (code.value != 0 && mpz_sizeinbase(code.value.get_mpz_t(), 2) > width) {
    throw GraphError("code " + code.value.get_str() + " too large for n=" + std::to_string(n));
  }
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::size_t bit_index = width - 1 - pair_position(i, j, n);
      if (mpz_tstbit(code.value.get_mpz_t(), bit_index)) g.add_edge(i, j);
    }
  }
  return g;
}

IntegerCode encode_integer(const Graph& g) {
  const int n = g.vertex_count();
  const std::size_t width = triangle_size(n);
  mpz_class value = 0;
  for (const Edge& e : g.edges()) {
    mpz_setbit(value.get_mpz_t(), width - 1 - pair_position(e.u, e.v, n));
  }
  return {value, n};
}

IntegerCode parse_integer_code(const std::string& line) {
  std::istringstream in(line);
  std::string number;
  if (!(in >> number) || number.empty() ||
      !std::all_of(number.begin(), number.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw GraphError("expected a decimal graph code, got '" + line + "'");
  }
  IntegerCode code{mpz_class(number, 10), std::nullopt};
  std::string suffix;
  if (in >> suffix) {
    if (suffix.rfind("n=", 0) != 0 || suffix.size() == 2) {
      throw GraphError("expected 'n=<k>' after code, got '" + suffix + "'");
    }
    try {
      code.declared_n = std::stoi(suffix.substr(2));
    } catch (const std::exception&) {
      throw GraphError("bad vertex count in '" + suffix + "'");
    }
    std::string extra;
    if (in >> extra) throw GraphError("trailing text after code: '" + extra + "'");
  }
  return code;
}

std::string format_integer_code(const IntegerCode& code) {
  std::string out = code.value.get_str();
  if (code.declared_n) out += " n=" + std::to_string(*code.declared_n);
  return out;
}

Graph read_edge_list(std::istream& in) {
  long n = 0;
  long m = 0;
  if (!(in >> n >> m)) throw GraphError("edge list: missing 'n m' header");
  if (n < 1 || n > Graph::kMaxVertices || m < 0) {
    throw GraphError("edge list: bad header " + std::to_string(n) + " " + std::to_string(m));
  }
  Graph g(static_cast<int>(n));
  for (long k = 0; k < m; ++k) {
    long i = 0;
    long j = 0;
    if (!(in >> i >> j)) throw GraphError("edge list: expected " + std::to_string(m) + " edges");
    if (i < 1 || j < 1 || i > n || j > n) {
      throw GraphError("edge list: endpoint out of range in line " + std::to_string(k + 2));
    }
    g.add_edge(static_cast<int>(i - 1), static_cast<int>(j - 1));
  }
  return g;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

std::string format_edges(std::span<const Edge> edges) {
  std::string out;
  for (const Edge& e : edges) {
    if (!out.empty()) out += ' ';
    out += '{' + std::to_string(e.u + 1) + ',' + std::to_string(e.v + 1) + '}';
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<int>> components_avoiding(const Graph& g, std::uint64_t removed) {
  const int n = g.vertex_count();
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : bit(n) - 1;
  std::uint64_t unseen = all & ~removed;
  std::vector<std::vector<int>> out;
  while (unseen) {
    std::uint64_t comp = bit(std::countr_zero(unseen));
    std::uint64_t frontier = comp;
    while (frontier) {
      std::uint64_t next = 0;
      while (frontier) {
        const int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        next |= g.neighbours(v);
      }
      next &= unseen & ~comp;
      comp |= next;
      frontier = next;
    }
    unseen &= ~comp;
    std::vector<int> members;
    while (comp) {
      members.push_back(std::countr_zero(comp));
      comp &= comp - 1;
    }
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  return components_avoiding(g, 0);
}

bool is_connected(const Graph& g) { return connected_components(g).size() == 1; }

namespace {

// Hopcroft–Tarjan low-link DFS over the vertices not in `removed`.
// Reports articulation points and the number of blocks.
struct LowLink {
  const Graph& g;
  std::uint64_t removed;
  std::vector<int> order;
  std::vector<int> low;
  std::vector<bool> is_cut;
  int counter = 0;
  int blocks = 0;

  LowLink(const Graph& graph, std::uint64_t skip)
      : g(graph),
        removed(skip),
        order(static_cast<std::size_t>(graph.vertex_count()), -1),
        low(static_cast<std::size_t>(graph.vertex_count()), 0),
        is_cut(static_cast<std::size_t>(graph.vertex_count()), false) {}

  void run() {
    for (int v = 0; v < g.vertex_count(); ++v) {
      if ((removed & bit(v)) == 0 && order[static_cast<std::size_t>(v)] < 0) {
        int children = 0;
        order[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = counter++;
        std::uint64_t nbrs = g.neighbours(v) & ~removed;
        while (nbrs) {
          const int w = std::countr_zero(nbrs);
          nbrs &= nbrs - 1;
          if (order[static_cast<std::size_t>(w)] < 0) {
            ++children;
            visit(w, v);
            ++blocks;  // every root child closes a block
          }
        }
        if (children > 1) is_cut[static_cast<std::size_t>(v)] = true;
      }
    }
  }

  void visit(int v, int parent) {
    const auto vi = static_cast<std::size_t>(v);
    order[vi] = low[vi] = counter++;
    std::uint64_t nbrs = g.neighbours(v) & ~removed;
    while (nbrs) {
      const int w = std::countr_zero(nbrs);
      nbrs &= nbrs - 1;
      const auto wi = static_cast<std::size_t>(w);
      if (order[wi] < 0) {
        visit(w, v);
        low[vi] = std::min(low[vi], low[wi]);
        if (low[wi] >= order[vi]) {
          // v separates the subtree of w: a block ends here.
          if (parent >= 0) {
            is_cut[vi] = true;
            ++blocks;
          }
        }
      } else if (w != parent) {
        low[vi] = std::min(low[vi], order[wi]);
      }
    }
  }
};

}  // namespace

int biconnected_component_count(const Graph& g) {
  if (g.vertex_count() < 2) throw GraphError("block count needs at least two vertices");
  if (!is_connected(g)) throw GraphError("block count needs a connected graph");
  LowLink ll(g, 0);
  ll.run();
  return ll.blocks;
}

std::vector<int> articulation_points(const Graph& g, std::uint64_t removed) {
  LowLink ll(g, removed);
  ll.run();
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (ll.is_cut[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

namespace {

Cut2 make_cut(const Graph& g, int u, int v) {
  auto comps = components_avoiding(g, bit(u) | bit(v));
  Cut2 cut{u, v, {}};
  cut.sides[0] = comps.front();
  for (std::size_t k = 1; k < comps.size(); ++k) {
    cut.sides[1].insert(cut.sides[1].end(), comps[k].begin(), comps[k].end());
  }
  std::sort(cut.sides[1].begin(), cut.sides[1].end());
  auto key = [](const std::vector<int>& s) { return std::make_pair(s.size(), s.front()); };
  if (key(cut.sides[1]) < key(cut.sides[0])) std::swap(cut.sides[0], cut.sides[1]);
  return cut;
}

}  // namespace

std::vector<Cut2> find_two_cuts(const Graph& g) {
  const int n = g.vertex_count();
  if (n < 4) throw GraphError("2-cuts need at least four vertices");
  if (!is_connected(g)) throw GraphError("2-cuts need a connected graph");
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u) {
    if (components_avoiding(g, bit(u)).size() > 1) {
      // u alone separates; {u, v} separates unless v was a singleton side of a two-way split.
      for (int v = 0; v < n; ++v) {
        if (v != u && components_avoiding(g, bit(u) | bit(v)).size() > 1) {
          pairs.emplace_back(std::min(u, v), std::max(u, v));
        }
      }
      continue;
    }
    for (int v : articulation_points(g, bit(u))) pairs.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<Cut2> out;
  out.reserve(pairs.size());
  for (auto [u, v] : pairs) out.push_back(make_cut(g, u, v));
  return out;
}

CutSplit split_at_cut(const Graph& g, const Cut2& cut) {
  const int n = g.vertex_count();
  std::vector<int> seen(static_cast<std::size_t>(n), -1);
  auto mark = [&](int v, int side) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)] != -1) {
      throw GraphError("invalid 2-cut: vertex sets overlap or are out of range");
    }
    seen[static_cast<std::size_t>(v)] = side;
  };
  mark(cut.u, 2);
  mark(cut.v, 2);
  for (int s = 0; s < 2; ++s) {
    if (cut.sides[static_cast<std::size_t>(s)].empty()) throw GraphError("invalid 2-cut: empty side");
    for (int v : cut.sides[static_cast<std::size_t>(s)]) mark(v, s);
  }
  if (std::find(seen.begin(), seen.end(), -1) != seen.end()) {
    throw GraphError("invalid 2-cut: sides do not cover the graph");
  }
  for (const Edge& e : g.edges()) {
    const int a = seen[static_cast<std::size_t>(e.u)];
    const int b = seen[static_cast<std::size_t>(e.v)];
    if ((a == 0 && b == 1) || (a == 1 && b == 0)) {
      throw GraphError("invalid 2-cut: an edge joins the two sides");
    }
  }

  auto side_with_cut = [&](int s) {
    std::vector<int> vs = cut.sides[static_cast<std::size_t>(s)];
    vs.push_back(cut.u);
    vs.push_back(cut.v);
    std::sort(vs.begin(), vs.end());
    return vs;
  };
  const auto kv = side_with_cut(0);
  const auto lv = side_with_cut(1);
  CutSplit split{induced_subgraph(g, kv), induced_subgraph(g, lv)};

  // V(K) u V(L) = V, V(K) n V(L) = {u,v}, E(K) u E(L) = E.
  std::vector<Edge> joined = split.k.parent_edges();
  const auto le = split.l.parent_edges();
  joined.insert(joined.end(), le.begin(), le.end());
  std::sort(joined.begin(), joined.end());
  joined.erase(std::unique(joined.begin(), joined.end()), joined.end());
  if (joined != g.edges() || kv.size() + lv.size() != static_cast<std::size_t>(n) + 2) {
    throw std::logic_error("split_at_cut: decomposition identities violated");
  }
  return split;
}

Graph relabel(const Graph& g, std::span<const int> perm) {
  if (perm.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw GraphError("relabel: permutation size mismatch");
  }
  Graph out(g.vertex_count());
  for (const Edge& e : g.edges()) {
    out.add_edge(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]);
  }
  return out;
}

}  // namespace rigidity
