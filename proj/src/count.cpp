#include "rigidity/count.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>

#include <json.hpp>

#include "rigidity/matroid.hpp"

namespace rigidity {

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::SingleEdge: return "SingleEdge";
    case Rule::GloballyRigid: return "GloballyRigid";
    case Rule::BaseSolver: return "BaseSolver";
    case Rule::NonRedundant: return "NonRedundant";
    case Rule::TwoCut: return "TwoCut";
    case Rule::DegreeTwoPeel: return "DegreeTwoPeel";
  }
  return "?";
}

// ---------------------------------------------------------------------------

std::shared_ptr<const TraceNode> MemoCache::find(const std::string& key, Mode mode) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find({key, mode});
  return it == entries_.end() ? nullptr : it->second;
}

std::shared_ptr<const TraceNode> MemoCache::insert(const std::string& key, Mode mode,
                                                   std::shared_ptr<const TraceNode> node) {
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(std::make_pair(key, mode), std::move(node));
  return it->second;
}

std::size_t MemoCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void MemoCache::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

// ---------------------------------------------------------------------------

namespace {

std::string describe(const Graph& g) {
  return format_integer_code(encode_integer(g)) + " edges " + format_edges(g.edges());
}

[[noreturn]] void engine_failure(const Graph& g, const std::string& what) {
  throw EngineError(what + " [graph " + describe(g) + "]");
}

mpz_class product(const std::vector<std::shared_ptr<const TraceNode>>& nodes, std::size_t from, std::size_t to) {
  mpz_class out = 1;
  for (std::size_t i = from; i < to; ++i) out *= nodes[i]->value;
  return out;
}

class Engine {
 public:
  explicit Engine(const CountOptions& options) : opt_(options), rng_(options.shuffle_seed) {
    if (!opt_.base) {
      const SolverConfig cfg = opt_.solver;
      base_ = [cfg](const Graph& g, Mode mode) { return base_count(g, mode, cfg); };
    } else {
      base_ = opt_.base;
    }
  }

  std::shared_ptr<const TraceNode> count(const Graph& g, bool top) {
    const int n = g.vertex_count();
    if (n < 2 || !is_rigid(g)) {
      throw NotRigid("graph is not rigid (rank " + std::to_string(n < 2 ? 0 : rank(g).rank) + " < " +
                     std::to_string(std::max(0, 2 * n - 3)) + "): infinitely many realisations");
    }
    ++stats_.nodes;
    if (n == 2) return leaf(g, Rule::SingleEdge, 1);
    if (is_globally_rigid(g)) return leaf(g, Rule::GloballyRigid, 1);
    if (opt_.peel && n >= 4 && g.min_degree() == 2) return peel(g);

    const bool overridden = top && (opt_.top_edge || opt_.top_cut || !opt_.top_spanning_order.empty());
    std::string key;
    if (opt_.memo) {
      key = canonical_form(g);
      if (!overridden) {
        if (auto hit = opt_.memo->find(key, opt_.mode)) {
          ++stats_.cache_hits;
          auto copy = std::make_shared<TraceNode>(*hit);
          copy->cached = true;
          if (!opt_.trace) copy->children.clear();
          return copy;
        }
      }
    }

    std::shared_ptr<TraceNode> node;
    if (is_minimally_rigid(g)) {
      ++stats_.base_calls;
      node = make_node(g, Rule::BaseSolver, base_(g, opt_.mode));
      if (node->value < 1) engine_failure(g, "base counter returned " + node->value.get_str());
    } else {
      std::optional<Edge> e = top && opt_.top_edge ? opt_.top_edge : find_non_redundant_edge(g);
      if (top && opt_.top_edge) {
        if (!g.has_edge(*e) || is_rigid(g.without_edge(*e))) {
          throw GraphError("requested edge " + format_edges(std::vector<Edge>{*e}) + " is not non-redundant");
        }
      }
      node = e ? non_redundant(g, *e, top) : two_cut(g, top);
    }
    if (!opt_.trace) node->children.clear();
    if (opt_.memo && !overridden) {
      auto stored = opt_.memo->insert(key, opt_.mode, node);
      if (stored->value != node->value) {
        engine_failure(g, "memo holds " + stored->value.get_str() + " for an isomorphic graph, computed " +
                              node->value.get_str());
      }
    }
    return node;
  }

  const CountStats& stats() const { return stats_; }

 private:
  std::shared_ptr<TraceNode> make_node(const Graph& g, Rule rule, mpz_class value) {
    auto node = std::make_shared<TraceNode>();
    node->rule = rule;
    node->value = std::move(value);
    node->code = encode_integer(g);
    node->edge_count = g.edge_count();
    return node;
  }

  std::shared_ptr<const TraceNode> leaf(const Graph& g, Rule rule, long value) {
    return make_node(g, rule, value);
  }

  std::shared_ptr<const TraceNode> peel(const Graph& g) {
    PeelResult p = peel_degree2(g);
    auto child = count(p.graph, false);
    auto node = make_node(g, Rule::DegreeTwoPeel, p.multiplier * child->value);
    node->peeled_vertex = p.vertex;
    node->children.push_back(std::move(child));
    return node;
  }

  std::vector<Edge> spanning_order(const Subgraph& part, bool top) {
    std::vector<Edge> local = part.graph.edges();
    if (top && !opt_.top_spanning_order.empty()) {
      const auto& pref = opt_.top_spanning_order;
      auto rank_of = [&](const Edge& le) {
        const Edge pe = part.to_parent(le);
        return static_cast<std::size_t>(std::find(pref.begin(), pref.end(), pe) - pref.begin());
      };
      std::stable_sort(local.begin(), local.end(), [&](const Edge& a, const Edge& b) { return rank_of(a) < rank_of(b); });
    } else if (!top && opt_.shuffle_seed != 0) {
      std::shuffle(local.begin(), local.end(), rng_);
    }
    return local;
  }

  std::shared_ptr<TraceNode> non_redundant(const Graph& g, Edge e, bool top) {
    const Graph rest = g.without_edge(e);
    const RigidDecomposition dec = maximal_rigid_subgraphs(rest);

    Graph h(g.vertex_count());
    h.add_edge(e);
    std::vector<Graph> spanning;
    for (const Subgraph& part : dec.components) {
      const std::vector<Edge> order = spanning_order(part, top);
      Graph hi = minimally_rigid_spanning_subgraph(part.graph, order);
      for (const Edge& le : hi.edges()) h.add_edge(part.to_parent(le));
      spanning.push_back(std::move(hi));
    }
    if (!is_minimally_rigid(h)) engine_failure(g, "assembled H = " + describe(h) + " is not minimally rigid");

    std::vector<std::shared_ptr<const TraceNode>> children;
    children.push_back(count(h, false));
    for (const Subgraph& part : dec.components) children.push_back(count(part.graph, false));
    for (const Graph& hi : spanning) children.push_back(count(hi, false));

    const std::size_t m = dec.components.size();
    const mpz_class denominator = product(children, 1 + m, 1 + 2 * m);
    if (!mpz_divisible_p(children[0]->value.get_mpz_t(), denominator.get_mpz_t())) {
      engine_failure(g, "product of c(H_i) = " + denominator.get_str() + " does not divide c(H) = " +
                            children[0]->value.get_str());
    }
    mpz_class value = children[0]->value / denominator;
    value *= product(children, 1, 1 + m);

    auto node = make_node(g, Rule::NonRedundant, value);
    node->edge = e;
    for (const Subgraph& part : dec.components) node->components.push_back(part.vertices);
    node->children = std::move(children);
    return node;
  }

  std::shared_ptr<TraceNode> two_cut(const Graph& g, bool top) {
    const std::vector<Cut2> cuts = find_two_cuts(g);
    if (cuts.empty()) engine_failure(g, "redundantly rigid, 3-connected and yet not globally rigid");
    const std::size_t index = top && opt_.top_cut ? *opt_.top_cut : 0;
    if (index >= cuts.size()) {
      throw GraphError("2-cut index " + std::to_string(index) + " out of range (" + std::to_string(cuts.size()) +
                       " cuts)");
    }
    const Cut2& cut = cuts[index];
    CutSplit split = split_at_cut(g, cut);
    const Edge s = make_edge(cut.u, cut.v);

    auto local_s = [&](const Subgraph& side) {
      const auto pos = [&](int v) {
        return static_cast<int>(std::find(side.vertices.begin(), side.vertices.end(), v) - side.vertices.begin());
      };
      return make_edge(pos(cut.u), pos(cut.v));
    };
    auto plus_s = [&](const Subgraph& side) {
      const Edge ls = local_s(side);
      return side.graph.has_edge(ls) ? side.graph : side.graph.with_edge(ls);
    };

    const bool s_in_e = g.has_edge(s);
    const bool k_rigid = is_rigid(split.k.graph);
    const bool l_rigid = is_rigid(split.l.graph);

    std::string which;
    Graph first;
    Graph second;
    if (s_in_e || (k_rigid && l_rigid)) {
      which = s_in_e ? "edge" : "both-rigid";
      first = plus_s(split.k);
      second = plus_s(split.l);
    } else if (k_rigid != l_rigid) {
      which = "one-rigid";
      if (!k_rigid) std::swap(split.k, split.l);
      first = split.k.graph;
      second = plus_s(split.l);
    } else {
      engine_failure(g, "2-cut " + format_edges(std::vector<Edge>{s}) + " with neither side rigid");
    }

    std::vector<std::shared_ptr<const TraceNode>> children;
    children.push_back(count(first, false));
    children.push_back(count(second, false));
    auto node = make_node(g, Rule::TwoCut, 2 * children[0]->value * children[1]->value);
    node->edge = s;
    node->cut_case = which;
    node->children = std::move(children);
    return node;
  }

  const CountOptions& opt_;
  BaseCounter base_;
  std::mt19937_64 rng_;
  CountStats stats_;
};

nlohmann::ordered_json to_json(const TraceNode& node) {
  nlohmann::ordered_json j;
  j["rule"] = std::string(to_string(node.rule));
  j["value"] = node.value.get_str();
  j["n"] = node.code.declared_n.value_or(minimal_vertex_count(node.code.value));
  j["m"] = node.edge_count;
  j["code"] = node.code.value.get_str();
  if (node.cached) j["cached"] = true;
  if (node.edge) j[node.rule == Rule::TwoCut ? "cut" : "edge"] = {node.edge->u + 1, node.edge->v + 1};
  if (!node.cut_case.empty()) j["case"] = node.cut_case;
  if (node.peeled_vertex >= 0) j["vertex"] = node.peeled_vertex + 1;
  if (!node.components.empty()) {
    auto comps = nlohmann::ordered_json::array();
    for (const auto& c : node.components) {
      auto vs = nlohmann::ordered_json::array();
      for (int v : c) vs.push_back(v + 1);
      comps.push_back(vs);
    }
    j["components"] = comps;
  }
  if (!node.children.empty()) {
    auto kids = nlohmann::ordered_json::array();
    for (const auto& c : node.children) kids.push_back(to_json(*c));
    j["children"] = kids;
  }
  return j;
}

}  // namespace

CountResult realisation_count(const Graph& g, const CountOptions& options) {
  Engine engine(options);
  CountResult out;
  out.trace = engine.count(g, true);
  out.value = out.trace->value;
  out.stats = engine.stats();
  return out;
}

mpz_class reevaluate(const TraceNode& node) {
  mpz_class value;
  const auto& ch = node.children;
  if (ch.empty()) return node.value;
  for (const auto& c : ch) reevaluate(*c);
  switch (node.rule) {
    case Rule::NonRedundant: {
      if (ch.size() % 2 == 0) throw EngineError("NonRedundant node needs 2m+1 children");
      const std::size_t m = (ch.size() - 1) / 2;
      const mpz_class den = product(ch, 1 + m, ch.size());
      if (!mpz_divisible_p(ch[0]->value.get_mpz_t(), den.get_mpz_t())) {
        throw EngineError("inexact division in NonRedundant node");
      }
      value = ch[0]->value / den * product(ch, 1, 1 + m);
      break;
    }
    case Rule::TwoCut:
      if (ch.size() != 2) throw EngineError("TwoCut node needs two children");
      value = 2 * ch[0]->value * ch[1]->value;
      break;
    case Rule::DegreeTwoPeel:
      if (ch.size() != 1) throw EngineError("DegreeTwoPeel node needs one child");
      value = 2 * ch[0]->value;
      break;
    default:
      throw EngineError("leaf rule with children");
  }
  if (value != node.value) {
    throw EngineError(std::string(to_string(node.rule)) + " node stores " + node.value.get_str() +
                      " but re-evaluates to " + value.get_str());
  }
  return value;
}

std::string trace_json(const TraceNode& node, int indent) { return to_json(node).dump(indent); }

PeelResult peel_degree2(const Graph& g) {
  if (g.vertex_count() < 4) throw GraphError("degree-2 peel needs at least 4 vertices");
  if (!is_rigid(g)) throw NotRigid("degree-2 peel needs a rigid graph");
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 2) return {remove_vertex(g, v).graph, v, 2};
  }
  throw GraphError("no vertex of degree 2");
}

PsdResult psd_completion_count(const Graph& g, int r, const CountOptions& options) {
  if (r < 1 || r > 3) throw std::invalid_argument("PSD rank must be 1, 2 or 3");
  if (r == 1 || g.vertex_count() == 1) return {mpz_class(1)};
  if (r == 2) {
    if (!is_connected(g)) throw std::invalid_argument("rank-2 completion count needs a connected pattern");
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, static_cast<unsigned long>(biconnected_component_count(g) - 1));
    return {out};
  }
  if (!is_rigid(g)) return {};
  CountOptions sphere = options;
  sphere.mode = Mode::Sphere;
  return {realisation_count(g, sphere).value};
}

mpz_class fan_lower_bound(int n, const mpz_class& seed_count, int seed_vertices) {
  if (seed_vertices < 5) throw std::invalid_argument("seed graph needs at least 5 vertices");
  if (n < 4) throw std::invalid_argument("fan bound needs n >= 4");
  const int step = seed_vertices - 4;
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, static_cast<unsigned long>((n - 4) % step));
  mpz_class power;
  mpz_pow_ui(power.get_mpz_t(), seed_count.get_mpz_t(), static_cast<unsigned long>((n - 4) / step));
  return out * power;
}

mpz_class fan_lower_bound_k1(int n) { return fan_lower_bound(n, 1216, 12); }

double growth_base(const mpz_class& seed_count, int seed_excess_vertices) {
  if (seed_count <= 0 || seed_excess_vertices <= 0) throw std::invalid_argument("growth base needs positive inputs");
  return std::pow(seed_count.get_d(), 1.0 / seed_excess_vertices);
}

}  // namespace rigidity
