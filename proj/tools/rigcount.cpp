// rigcount: realisation numbers of rigid graphs from the command line.
//
//   rigcount analyze 3327
//   rigcount count graph.txt --mode sphere --trace
//   rigcount batch codes.txt --mode both --jobs 4 > out.tsv
//   rigcount table --n 6 --k 1 --mode plane

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rigidity/census.hpp"
#include "rigidity/count.hpp"
#include "rigidity/matroid.hpp"

using namespace rigidity;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfinite = 2;

struct Common {
  std::string mode = "plane";
  std::string method = "auto";
  bool trace = false;
  int jobs = 1;
  std::vector<std::uint32_t> primes;
  std::uint64_t seed = SolverConfig{}.seed;
  int quorum = SolverConfig{}.quorum;
  int resamples = SolverConfig{}.max_resamples;
  bool json = false;
  bool tsv = false;
  std::optional<int> declared_n;
};

SolverConfig solver_config(const Common& c) {
  SolverConfig cfg;
  if (!c.primes.empty()) cfg.primes = c.primes;
  cfg.seed = c.seed;
  cfg.quorum = c.quorum;
  cfg.max_resamples = c.resamples;
  cfg.validate();
  return cfg;
}

CountOptions count_options(const Common& c, bool peel) {
  CountOptions o;
  o.mode = parse_mode(c.mode);
  o.solver = solver_config(c);
  o.peel = peel;
  o.trace = c.trace;
  o.memo = std::make_shared<MemoCache>();
  return o;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

// A graph argument is an integer code, an inline edge list "n=4 1-2 ...",
// "-" for an edge-list file on stdin, or the path of an edge-list file.
Graph load_graph(const std::string& arg, const Common& c) {
  if (all_digits(arg)) {
    IntegerCode code = parse_integer_code(arg);
    code.declared_n = c.declared_n;
    return decode_integer(code);
  }
  if (arg.rfind("n=", 0) == 0) return parse_graph_line(arg);
  if (arg == "-") return read_edge_list(std::cin);
  std::ifstream in(arg);
  if (!in) throw GraphError("cannot open graph file '" + arg + "'");
  return read_edge_list(in);
}

json one_based(const std::vector<int>& vs) {
  json out = json::array();
  for (int v : vs) out.push_back(v + 1);
  return out;
}

json edge_json(const Edge& e) { return json::array({e.u + 1, e.v + 1}); }

std::string vertex_set(const std::vector<int>& vs) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + std::to_string(vs[i] + 1);
  return out + "}";
}

// ---------------------------------------------------------------------------

int cmd_analyze(const std::string& input, const Common& c) {
  const Graph g = load_graph(input, c);
  const int n = g.vertex_count();
  if (n < 2) throw GraphError("analysis needs at least 2 vertices");
  const RankReport rk = rank(g);
  const bool rigid = rk.rank == 2 * n - 3;
  const bool connected = is_connected(g);
  json out;
  out["code"] = encode_integer(g).value.get_str();
  out["n"] = n;
  out["m"] = g.edge_count();
  out["rank"] = rk.rank;
  out["connected"] = connected;
  out["rigid"] = rigid;
  out["minimally_rigid"] = rigid && is_minimally_rigid(g);
  out["redundantly_rigid"] = rigid && is_redundantly_rigid(g);
  out["globally_rigid"] = rigid && is_globally_rigid(g);
  if (n >= 4) out["three_connected"] = is_3connected(g);
  if (connected) out["blocks"] = biconnected_component_count(g);

  if (rigid) {
    if (auto e = find_non_redundant_edge(g)) {
      out["non_redundant_edge"] = edge_json(*e);
      json comps = json::array();
      for (const Subgraph& part : maximal_rigid_subgraphs(g.without_edge(*e)).components) {
        comps.push_back(one_based(part.vertices));
      }
      out["components"] = comps;
    }
  }
  json cuts = json::array();
  if (connected && n >= 4) {
    for (const Cut2& cut : find_two_cuts(g)) {
      json jc;
      jc["pair"] = json::array({cut.u + 1, cut.v + 1});
      jc["sides"] = json::array({one_based(cut.sides[0]), one_based(cut.sides[1])});
      cuts.push_back(jc);
    }
  }
  out["two_cuts"] = cuts;

  if (c.json) {
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }
  auto yes = [](const json& v) { return v.get<bool>() ? "yes" : "no"; };
  std::cout << "graph          " << out["code"].get<std::string>() << " (n=" << n << ", m=" << g.edge_count() << ")\n"
            << "edges          " << format_edges(g.edges()) << '\n'
            << "rank           " << rk.rank << " of " << 2 * n - 3 << '\n'
            << "connected      " << yes(out["connected"]) << '\n'
            << "rigid          " << yes(out["rigid"]) << '\n'
            << "minimally      " << yes(out["minimally_rigid"]) << '\n'
            << "redundantly    " << yes(out["redundantly_rigid"]) << '\n'
            << "globally       " << yes(out["globally_rigid"]) << '\n';
  if (out.contains("three_connected")) std::cout << "3-connected    " << yes(out["three_connected"]) << '\n';
  if (out.contains("blocks")) std::cout << "blocks         " << out["blocks"].get<int>() << '\n';
  if (rigid) {
    if (auto e = find_non_redundant_edge(g)) {
      const auto comps = maximal_rigid_subgraphs(g.without_edge(*e)).components;
      std::cout << "non-redundant  " << format_edges(std::vector<Edge>{*e}) << '\n'
                << "components     " << comps.size() << " maximal rigid subgraphs of G - e\n";
      for (const Subgraph& part : comps) std::cout << "  " << vertex_set(part.vertices) << '\n';
    } else {
      std::cout << "non-redundant  none\n";
    }
  }
  std::cout << "2-cuts         " << cuts.size() << '\n';
  if (connected && n >= 4) {
    for (const Cut2& cut : find_two_cuts(g)) {
      std::cout << "  {" << cut.u + 1 << ',' << cut.v + 1 << "}  " << vertex_set(cut.sides[0]) << " | "
                << vertex_set(cut.sides[1]) << '\n';
    }
  }
  return kExitOk;
}

int cmd_count(const std::string& input, const Common& c, bool peel) {
  const Graph g = load_graph(input, c);
  CountOptions o = count_options(c, peel);
  if (c.method != "auto" && c.method != "recursive" && c.method != "algebraic") {
    throw std::invalid_argument("unknown method '" + c.method + "'");
  }
  if (g.vertex_count() < 2 || !is_rigid(g)) {
    if (c.json) {
      std::cout << json{{"mode", c.mode}, {"value", "infinite"}}.dump(2) << '\n';
    } else {
      std::cout << "infinite (graph is not rigid)\n";
    }
    return kExitInfinite;
  }
  const auto t0 = std::chrono::steady_clock::now();
  json out;
  out["mode"] = c.mode;
  out["method"] = c.method == "algebraic" ? "algebraic" : "recursive";
  if (c.method == "algebraic") {
    const DirectCountReport report = direct_count_report(g, o.mode, o.solver);
    out["value"] = report.value.get_str();
    json runs = json::array();
    for (const SolverRun& r : report.runs) {
      runs.push_back({{"prime", r.prime},
                      {"seed", r.seed},
                      {"resamples", r.resamples},
                      {"pinned_degree", r.pinned_degree},
                      {"pairs_reduced", r.stats.pairs_reduced}});
    }
    out["runs"] = runs;
    out["disagreements"] = report.disagreements;
  } else {
    const CountResult result = realisation_count(g, o);
    out["value"] = result.value.get_str();
    out["base_calls"] = result.stats.base_calls;
    out["cache_hits"] = result.stats.cache_hits;
    if (c.trace) out["trace"] = json::parse(trace_json(*result.trace));
  }
  out["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.json) {
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << out["value"].get<std::string>() << '\n';
    if (c.trace && out.contains("trace")) std::cout << out["trace"].dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_psd(const std::string& input, const Common& c, int r) {
  const Graph g = load_graph(input, c);
  const PsdResult result = psd_completion_count(g, r, count_options(c, false));
  const std::string text = result.finite() ? result.count->get_str() : "infinite";
  if (c.json) {
    std::cout << json{{"rank", r}, {"value", text}}.dump(2) << '\n';
  } else {
    std::cout << text << '\n';
  }
  return result.finite() ? kExitOk : kExitInfinite;
}

json record_json(const BatchRecord& r) {
  auto value = [](const std::optional<mpz_class>& v) { return v ? json(v->get_str()) : json(nullptr); };
  return {{"id", r.id},
          {"n", r.n},
          {"m", r.m},
          {"rigid", r.rigid},
          {"minimally_rigid", r.minimally_rigid},
          {"redundantly_rigid", r.redundantly_rigid},
          {"globally_rigid", r.globally_rigid},
          {"three_connected", r.three_connected},
          {"has_two_cut", r.has_two_cut},
          {"plane", value(r.plane)},
          {"sphere", value(r.sphere)},
          {"plane_seconds", r.plane_seconds},
          {"sphere_seconds", r.sphere_seconds},
          {"error", r.error}};
}

// Records are processed in blocks of 100; after each block the completed
// TSV lines are appended to the checkpoint file, which --resume replays.
int cmd_batch(const std::string& path, const Common& c, bool peel, std::string checkpoint, bool resume) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open batch file '" + path + "'");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    lines.push_back(line.substr(first, last - first + 1));
  }
  const bool plane = c.mode == "plane" || c.mode == "both";
  const bool sphere = c.mode == "sphere" || c.mode == "both";
  if (!plane && !sphere) throw std::invalid_argument("batch mode must be plane, sphere or both");
  Common solver_flags = c;
  solver_flags.mode = "plane";
  solver_flags.trace = false;
  const CountOptions options = count_options(solver_flags, peel);
  if (checkpoint.empty()) checkpoint = path + ".checkpoint";

  std::vector<std::string> done;
  if (resume && std::filesystem::exists(checkpoint)) {
    std::ifstream ck(checkpoint);
    std::string line;
    std::getline(ck, line);
    if (line != batch_tsv_header()) throw std::runtime_error("checkpoint '" + checkpoint + "' has an unexpected header");
    while (std::getline(ck, line)) {
      if (done.size() >= lines.size() || line.substr(0, line.find('\t')) != lines[done.size()]) {
        throw std::runtime_error("checkpoint '" + checkpoint + "' does not match the input file");
      }
      done.push_back(line);
    }
  } else {
    std::ofstream(checkpoint, std::ios::trunc) << batch_tsv_header() << '\n';
  }

  if (!c.json) std::cout << batch_tsv_header() << '\n';
  for (const std::string& line : done) {
    if (!c.json) std::cout << line << '\n';
  }
  if (c.json && !done.empty()) {
    std::cerr << "note: " << done.size() << " records restored from checkpoint are only replayed in TSV mode\n";
  }

  int failures = 0;
  constexpr std::size_t kBlock = 100;
  for (std::size_t start = done.size(); start < lines.size(); start += kBlock) {
    const std::size_t stop = std::min(lines.size(), start + kBlock);
    std::vector<BatchRecord> records(stop - start);
    parallel_for(records.size(), c.jobs,
                 [&](std::size_t i) { records[i] = make_record(lines[start + i], plane, sphere, options); });
    std::ofstream ck(checkpoint, std::ios::app);
    for (const BatchRecord& r : records) {
      if (!r.error.empty()) {
        ++failures;
        std::cerr << "error: " << r.id << ": " << r.error << '\n';
      }
      const std::string tsv = batch_tsv_line(r);
      ck << tsv << '\n';
      if (c.json) {
        std::cout << record_json(r).dump() << '\n';
      } else {
        std::cout << tsv << '\n';
      }
    }
  }
  return failures ? kExitError : kExitOk;
}

int cmd_stats(int n, const Common& c) {
  if (n > 8) std::cerr << "warning: n > 8 enumerates a very large census and may take a long time\n";
  const StatsRow row = stats_row(n);
  if (c.json) {
    std::cout << json{{"n", row.n},
                      {"graphs", row.graphs},
                      {"rigid", row.rigid},
                      {"minimally_rigid", row.minimally_rigid},
                      {"globally_rigid", row.globally_rigid},
                      {"redundantly_rigid", row.redundantly_rigid},
                      {"two_cut", row.two_cut},
                      {"other", row.other}}
                     .dump(2)
              << '\n';
  } else if (c.tsv) {
    std::cout << "n\tgraphs\trigid\tminimally_rigid\tglobally_rigid\tredundantly_rigid\ttwo_cut\tother\n"
              << row.n << '\t' << row.graphs << '\t' << row.rigid << '\t' << row.minimally_rigid << '\t'
              << row.globally_rigid << '\t' << row.redundantly_rigid << '\t' << row.two_cut << '\t' << row.other
              << '\n';
  } else {
    std::cout << "n=" << row.n << "  graphs=" << row.graphs << "  rigid=" << row.rigid
              << "  minimally=" << row.minimally_rigid << "  globally=" << row.globally_rigid
              << "  redundantly=" << row.redundantly_rigid << "  2-cut=" << row.two_cut << "  other=" << row.other
              << '\n';
  }
  return kExitOk;
}

int cmd_table(int n, int k, const Common& c, bool peel) {
  if (n > 7) std::cerr << "warning: n > 7 is beyond the tested range and may take a long time\n";
  const TableEntry entry = table_entry(n, k, count_options(c, peel), c.jobs);
  json out{{"n", n}, {"k", k}, {"mode", c.mode}, {"graphs", entry.graphs}, {"max", entry.maximum.get_str()}};
  if (entry.certificate) {
    out["certificate"] = encode_integer(*entry.certificate).value.get_str();
    out["edges"] = format_edges(entry.certificate->edges());
  }
  if (c.json) {
    std::cout << out.dump(2) << '\n';
  } else if (c.tsv) {
    std::cout << "n\tk\tmode\tgraphs\tmax\tcertificate\n"
              << n << '\t' << k << '\t' << c.mode << '\t' << entry.graphs << '\t' << entry.maximum << '\t'
              << (entry.certificate ? out["certificate"].get<std::string>() : "-") << '\n';
  } else {
    std::cout << "max c_" << k << (c.mode == "sphere" ? "° " : " ") << "(" << n << ") = " << entry.maximum << "  over "
              << entry.graphs << " graphs\n";
    if (entry.certificate) {
      std::cout << "certificate " << out["certificate"].get<std::string>() << "  " << out["edges"].get<std::string>()
                << '\n';
    }
  }
  return kExitOk;
}

int cmd_compare(int n, const Common& c, bool peel) {
  const auto rows = compare_counts(n, count_options(c, peel), c.jobs);
  if (c.json) {
    json out = json::array();
    for (const auto& [key, freq] : rows) {
      out.push_back({{"c2", key.first.get_str()}, {"c2_sphere", key.second.get_str()}, {"count", freq}});
    }
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }
  std::cout << "c2,c2_sphere,count\n";
  for (const auto& [key, freq] : rows) std::cout << key.first << ',' << key.second << ',' << freq << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex realisation numbers of rigid graphs in the plane and on the sphere"};
  app.require_subcommand(1);
  Common c;

  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--primes", c.primes, "Primes for the modular solver")->delimiter(',');
    sub->add_option("--seed", c.seed, "Seed for the sampled realisations");
    sub->add_option("--quorum", c.quorum, "Number of agreeing runs required");
    sub->add_option("--resamples", c.resamples, "Resample budget per run");
    sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto add_input = [&](CLI::App* sub, std::string& target) {
    sub->add_option("graph", target, "Integer code, \"n=<k> i-j ...\", edge-list file, or - for stdin")->required();
    sub->add_option("--n", c.declared_n, "Vertex count for an integer code");
  };

  std::string input;
  bool peel_count = false;
  bool peel_enum = true;
  int psd_rank = 3;
  int n = 6;
  int k = 0;
  std::string checkpoint;
  bool resume = false;

  auto* analyze = app.add_subcommand("analyze", "Classify a graph and show its decompositions");
  add_input(analyze, input);
  analyze->add_flag("--json", c.json, "JSON output");

  auto* count = app.add_subcommand("count", "Realisation number of a rigid graph");
  add_input(count, input);
  count->add_option("--mode", c.mode, "plane or sphere")->check(CLI::IsMember({"plane", "sphere"}));
  count->add_option("--method", c.method, "auto, recursive or algebraic")
      ->check(CLI::IsMember({"auto", "recursive", "algebraic"}));
  count->add_flag("--trace", c.trace, "Print the derivation tree");
  count->add_flag("--peel,!--no-peel", peel_count, "Remove degree-2 vertices first");
  count->add_flag("--json", c.json, "JSON output");
  add_solver(count);

  auto* psd = app.add_subcommand("psd", "Completions of a partial rank-r PSD matrix with the graph as pattern");
  add_input(psd, input);
  psd->add_option("--rank,-r", psd_rank, "Rank 1, 2 or 3")->check(CLI::Range(1, 3));
  psd->add_flag("--json", c.json, "JSON output");
  add_solver(psd);

  auto* batch = app.add_subcommand("batch", "Classify and count every graph in a file");
  batch->add_option("file", input, "One integer code or \"n=<k> i-j ...\" per line")->required();
  batch->add_option("--mode", c.mode, "plane, sphere or both")->check(CLI::IsMember({"plane", "sphere", "both"}));
  batch->add_flag("--peel,!--no-peel", peel_count, "Remove degree-2 vertices first");
  batch->add_option("--checkpoint", checkpoint, "Progress file (default <file>.checkpoint)");
  batch->add_flag("--resume", resume, "Continue from the progress file");
  batch->add_flag("--json", c.json, "JSON lines instead of TSV");
  batch->add_flag("--tsv", c.tsv, "TSV output (default)");
  add_solver(batch);

  auto* stats = app.add_subcommand("stats", "Counts of graph classes on n vertices");
  stats->add_option("--n", n, "Number of vertices")->check(CLI::Range(1, 10));
  stats->add_flag("--json", c.json, "JSON output");
  stats->add_flag("--tsv", c.tsv, "TSV output");

  auto* table = app.add_subcommand("table", "Maximum count over rigid graphs with 2n-3+k edges");
  table->add_option("--n", n, "Number of vertices")->check(CLI::Range(2, 10));
  table->add_option("--k", k, "Edges beyond 2n-3")->check(CLI::NonNegativeNumber);
  table->add_option("--mode", c.mode, "plane or sphere")->check(CLI::IsMember({"plane", "sphere"}));
  table->add_flag("--peel,!--no-peel", peel_enum, "Remove degree-2 vertices first (default on)");
  table->add_flag("--json", c.json, "JSON output");
  table->add_flag("--tsv", c.tsv, "TSV output");
  add_solver(table);

  auto* compare = app.add_subcommand("compare", "CSV of (plane, sphere) count pairs over rigid graphs");
  compare->add_option("--n", n, "Number of vertices")->check(CLI::Range(2, 10));
  compare->add_flag("--peel,!--no-peel", peel_enum, "Remove degree-2 vertices first (default on)");
  compare->add_flag("--json", c.json, "JSON output");
  add_solver(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*analyze) return cmd_analyze(input, c);
    if (*count) return cmd_count(input, c, peel_count);
    if (*psd) return cmd_psd(input, c, psd_rank);
    if (*batch) return cmd_batch(input, c, peel_count, checkpoint, resume);
    if (*stats) return cmd_stats(n, c);
    if (*table) return cmd_table(n, k, c, peel_enum);
    if (*compare) return cmd_compare(n, c, peel_enum);
  } catch (const NotRigid& e) {
    std::cerr << "infinite: " << e.what() << '\n';
    return kExitInfinite;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
