#include "rigidity/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "rigidity/matroid.hpp"

namespace rigidity {

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<Graph> graphs_up_to_isomorphism(int n) {
  if (n < 1 || n > 10) throw std::invalid_argument("enumeration supports 1 <= n <= 10");
  std::vector<Graph> level{Graph(1)};
  for (int k = 2; k <= n; ++k) {
    std::map<std::string, Graph> next;
    const int old = k - 1;
    for (const Graph& base : level) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << old); ++mask) {
        Graph g(k);
        for (const Edge& e : base.edges()) g.add_edge(e);
        for (int v = 0; v < old; ++v) {
          if ((mask >> v) & 1U) g.add_edge(v, old);
        }
        std::string key = canonical_form(g);
        if (next.find(key) == next.end()) next.emplace(std::move(key), std::move(g));
      }
    }
    level.clear();
    for (auto& [key, g] : next) level.push_back(std::move(g));
  }
  return level;
}

std::vector<Graph> rigid_graphs(int n, std::optional<std::size_t> edge_count) {
  std::vector<Graph> out;
  if (n < 2) return out;
  for (Graph& g : graphs_up_to_isomorphism(n)) {
    if (edge_count && g.edge_count() != *edge_count) continue;
    if (g.edge_count() + 3 < static_cast<std::size_t>(2 * n)) continue;
    if (is_rigid(g)) out.push_back(std::move(g));
  }
  return out;
}

StatsRow stats_row(int n) {
  StatsRow row;
  row.n = n;
  const std::vector<Graph> all = graphs_up_to_isomorphism(n);
  row.graphs = all.size();
  if (n < 2) return row;
  for (const Graph& g : all) {
    if (!is_rigid(g)) continue;
    ++row.rigid;
    const bool minimal = is_minimally_rigid(g);
    const bool redundant = is_redundantly_rigid(g);
    if (minimal) ++row.minimally_rigid;
    if (redundant) ++row.redundantly_rigid;
    if (is_globally_rigid(g)) ++row.globally_rigid;
    if (n >= 4) {
      const bool three = is_3connected(g);
      if (!three) ++row.two_cut;
      if (three && !minimal && !redundant) ++row.other;
    }
  }
  return row;
}

namespace {

CountOptions with_memo(const CountOptions& options) {
  CountOptions out = options;
  if (!out.memo) out.memo = std::make_shared<MemoCache>();
  out.trace = false;
  return out;
}

std::vector<mpz_class> count_all(const std::vector<Graph>& graphs, const CountOptions& options, int jobs) {
  std::vector<mpz_class> values(graphs.size());
  parallel_for(graphs.size(), jobs, [&](std::size_t i) { values[i] = realisation_count(graphs[i], options).value; });
  return values;
}

}  // namespace

TableEntry table_entry(int n, int excess, const CountOptions& options, int jobs) {
  if (n < 2 || excess < 0) throw std::invalid_argument("table needs n >= 2 and a non-negative excess");
  TableEntry entry;
  entry.n = n;
  entry.excess = excess;
  entry.mode = options.mode;
  const auto graphs = rigid_graphs(n, static_cast<std::size_t>(2 * n - 3 + excess));
  entry.graphs = graphs.size();
  const auto values = count_all(graphs, with_memo(options), jobs);
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (values[i] > entry.maximum) {
      entry.maximum = values[i];
      entry.certificate = graphs[i];
    }
  }
  return entry;
}

std::map<std::pair<mpz_class, mpz_class>, std::size_t> compare_counts(int n, const CountOptions& options, int jobs) {
  const auto graphs = rigid_graphs(n);
  CountOptions plane = with_memo(options);
  plane.mode = Mode::Plane;
  CountOptions sphere = plane;
  sphere.mode = Mode::Sphere;
  const auto p = count_all(graphs, plane, jobs);
  const auto s = count_all(graphs, sphere, jobs);
  std::map<std::pair<mpz_class, mpz_class>, std::size_t> out;
  for (std::size_t i = 0; i < graphs.size(); ++i) ++out[{p[i], s[i]}];
  return out;
}

Graph parse_graph_line(const std::string& line) {
  std::istringstream in(line);
  std::string token;
  in >> token;
  if (token.rfind("n=", 0) != 0) return decode_integer(parse_integer_code(line));
  int n = 0;
  try {
    n = std::stoi(token.substr(2));
  } catch (const std::exception&) {
    throw GraphError("bad vertex count in '" + line + "'");
  }
  if (n < 1 || n > Graph::kMaxVertices) throw GraphError("vertex count out of range in '" + line + "'");
  Graph g(n);
  while (in >> token) {
    const auto dash = token.find('-');
    int a = 0;
    int b = 0;
    try {
      if (dash == std::string::npos) throw GraphError("");
      std::size_t used_a = 0;
      std::size_t used_b = 0;
      a = std::stoi(token.substr(0, dash), &used_a);
      b = std::stoi(token.substr(dash + 1), &used_b);
      if (used_a != dash || used_b != token.size() - dash - 1) throw GraphError("");
    } catch (const std::exception&) {
      throw GraphError("bad edge token '" + token + "'");
    }
    if (a < 1 || b < 1 || a > n || b > n) throw GraphError("edge " + token + " out of range");
    if (g.has_edge(a - 1, b - 1)) throw GraphError("duplicate edge " + token);
    g.add_edge(a - 1, b - 1);
  }
  return g;
}

BatchRecord make_record(const std::string& id, const Graph& g, bool plane, bool sphere, const CountOptions& options) {
  BatchRecord r;
  r.id = id;
  r.n = g.vertex_count();
  r.m = g.edge_count();
  if (r.n < 2) {
    r.error = "needs at least 2 vertices";
    return r;
  }
  r.rigid = is_rigid(g);
  r.minimally_rigid = r.rigid && is_minimally_rigid(g);
  r.redundantly_rigid = r.rigid && is_redundantly_rigid(g);
  r.globally_rigid = r.rigid && is_globally_rigid(g);
  if (r.n >= 4 && is_connected(g)) {
    r.three_connected = is_3connected(g);
    r.has_two_cut = !r.three_connected;
  }
  if (!r.rigid) return r;
  auto timed = [&](Mode mode, std::optional<mpz_class>& value, double& seconds) {
    CountOptions o = options;
    o.mode = mode;
    o.trace = false;
    const auto t0 = std::chrono::steady_clock::now();
    value = realisation_count(g, o).value;
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  try {
    if (plane) timed(Mode::Plane, r.plane, r.plane_seconds);
    if (sphere) timed(Mode::Sphere, r.sphere, r.sphere_seconds);
  } catch (const std::exception& ex) {
    r.error = ex.what();
  }
  return r;
}

BatchRecord make_record(const std::string& line, bool plane, bool sphere, const CountOptions& options) {
  Graph g;
  try {
    g = parse_graph_line(line);
  } catch (const std::exception& ex) {
    BatchRecord r;
    r.id = line;
    r.error = ex.what();
    return r;
  }
  return make_record(line, g, plane, sphere, options);
}

std::string batch_tsv_header() {
  return "id\tn\tm\trigid\tminimally_rigid\tredundantly_rigid\tglobally_rigid\tthree_connected\thas_two_cut\t"
         "plane\tsphere\tplane_seconds\tsphere_seconds\terror";
}

std::string batch_tsv_line(const BatchRecord& r) {
  std::ostringstream out;
  auto flag = [](bool b) { return b ? "1" : "0"; };
  auto value = [](const std::optional<mpz_class>& v) { return v ? v->get_str() : std::string("-"); };
  auto text = [](std::string s) {
    std::replace_if(s.begin(), s.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
    return s;
  };
  out << text(r.id) << '\t' << r.n << '\t' << r.m << '\t' << flag(r.rigid) << '\t' << flag(r.minimally_rigid) << '\t'
      << flag(r.redundantly_rigid) << '\t' << flag(r.globally_rigid) << '\t' << flag(r.three_connected) << '\t'
      << flag(r.has_two_cut) << '\t' << value(r.plane) << '\t' << value(r.sphere) << '\t' << r.plane_seconds << '\t'
      << r.sphere_seconds << '\t' << text(r.error);
  return out.str();
}

}  // namespace rigidity
