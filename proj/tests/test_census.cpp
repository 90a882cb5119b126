#include "doctest.h"

#include <atomic>
#include <set>

#include "support.hpp"

using namespace rigidity;

namespace {

CountOptions table_options(Mode mode) {
  CountOptions opt;
  opt.mode = mode;
  opt.peel = true;
  return opt;
}

mpz_class count_code(const char* code, Mode mode) {
  CountOptions opt;
  opt.mode = mode;
  return realisation_count(decode_integer(parse_integer_code(code)), opt).value;
}

}  // namespace

TEST_CASE("parallel_for visits every index once and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) CHECK(h.load() == 1);
  parallel_for(0, 4, [](std::size_t) { FAIL("called on empty range"); });
  CHECK_THROWS_AS(parallel_for(100, 3,
                               [](std::size_t i) {
                                 if (i == 57) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("graph census is complete and canonical") {
  for (int n = 1; n <= 6; ++n) {
    const auto graphs = graphs_up_to_isomorphism(n);
    std::set<std::string> keys;
    for (const Graph& g : graphs) keys.insert(canonical_form(g));
    CHECK(keys.size() == graphs.size());
  }
  CHECK_THROWS_AS(graphs_up_to_isomorphism(0), std::invalid_argument);
  for (int n = 3; n <= 7; ++n) {
    for (const Graph& g : rigid_graphs(n, static_cast<std::size_t>(2 * n - 3))) CHECK(is_minimally_rigid(g));
  }
}

TEST_CASE("statistics rows for 6 and 7 vertices") {
  const StatsRow six = stats_row(6);
  CHECK(six.graphs == 156);
  CHECK(six.rigid == 42);
  CHECK(six.minimally_rigid == 13);
  CHECK(six.globally_rigid == 15);
  CHECK(six.redundantly_rigid == 17);
  CHECK(six.two_cut == 25);
  CHECK(six.other == 0);

  const StatsRow seven = stats_row(7);
  CHECK(seven.graphs == 1044);
  CHECK(seven.rigid == 377);
  CHECK(seven.minimally_rigid == 70);
  CHECK(seven.globally_rigid == 132);
  CHECK(seven.redundantly_rigid == 142);
  CHECK(seven.two_cut == 241);
  CHECK(seven.other == 1);
}

TEST_CASE("statistics rows agree with direct classification") {
  for (int n = 4; n <= 7; ++n) {
    const StatsRow row = stats_row(n);
    std::size_t rigid = 0;
    std::size_t minimal = 0;
    std::size_t global = 0;
    std::size_t redundant = 0;
    std::size_t cut = 0;
    std::size_t other = 0;
    for (const Graph& g : fixtures::rigid_classes(n)) {
      ++rigid;
      const bool min = is_minimally_rigid(g);
      const bool red = is_redundantly_rigid(g);
      // 2-cut by brute-force vertex-pair removal.
      bool has_cut = false;
      for (int u = 0; u < n && !has_cut; ++u) {
        for (int v = u + 1; v < n && !has_cut; ++v) {
          has_cut = !fixtures::flood_connected(g, (std::uint64_t{1} << u) | (std::uint64_t{1} << v));
        }
      }
      minimal += min;
      redundant += red;
      global += red && !has_cut;
      cut += has_cut;
      other += !min && !red && !has_cut;
    }
    CHECK(row.rigid == rigid);
    CHECK(row.minimally_rigid == minimal);
    CHECK(row.globally_rigid == global);
    CHECK(row.redundantly_rigid == redundant);
    CHECK(row.two_cut == cut);
    CHECK(row.other == other);
    CHECK(row.graphs == fixtures::classes(n).size());
  }
}

TEST_CASE("maximum counts for 6 vertices") {
  const std::vector<long> plane{12, 4, 2, 2};
  const std::vector<long> sphere{16, 4, 2, 2};
  for (int k = 0; k <= 3; ++k) {
    const TableEntry p = table_entry(6, k, table_options(Mode::Plane), 2);
    const TableEntry s = table_entry(6, k, table_options(Mode::Sphere), 2);
    CHECK(p.maximum == plane[static_cast<std::size_t>(k)]);
    CHECK(s.maximum == sphere[static_cast<std::size_t>(k)]);
    for (const TableEntry* t : {&p, &s}) {
      REQUIRE(t->certificate.has_value());
      CHECK(t->certificate->edge_count() == static_cast<std::size_t>(9 + k));
      CountOptions opt;
      opt.mode = t->mode;
      CHECK(realisation_count(*t->certificate, opt).value == t->maximum);
    }
  }
  CHECK(table_entry(6, 0, table_options(Mode::Plane)).graphs == 13);
  CHECK(table_entry(6, 20, table_options(Mode::Plane)).maximum == 0);
}

TEST_CASE("maximum counts for 7 vertices") {
  const std::vector<long> plane{28, 12, 4, 4};
  const std::vector<long> sphere{32, 16, 4, 4};
  for (int k = 0; k <= 3; ++k) {
    CHECK(table_entry(7, k, table_options(Mode::Plane), 4).maximum == plane[static_cast<std::size_t>(k)]);
    CHECK(table_entry(7, k, table_options(Mode::Sphere), 4).maximum == sphere[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("published certificate graphs") {
  for (const char* code : {"3327", "3583", "4095", "1624383", "101887", "102399"}) {
    const Graph g = decode_integer(parse_integer_code(code));
    CHECK(is_rigid(g));
    CHECK(g.edge_count() > static_cast<std::size_t>(2 * g.vertex_count() - 3));
  }
  CHECK(count_code("3327", Mode::Plane) == 4);
  CHECK(count_code("3583", Mode::Plane) == 2);
  CHECK(count_code("4095", Mode::Plane) == 2);
  CHECK(count_code("3327", Mode::Sphere) == 4);
  CHECK(count_code("3583", Mode::Sphere) == 2);
  CHECK(count_code("4095", Mode::Sphere) == 2);
  CHECK(count_code("1624383", Mode::Plane) == 12);
  CHECK(count_code("101887", Mode::Plane) == 4);
  CHECK(count_code("102399", Mode::Plane) == 4);
  CHECK(count_code("1624383", Mode::Sphere) == 16);
  CHECK(count_code("101887", Mode::Sphere) == 4);
  CHECK(count_code("102399", Mode::Sphere) == 4);
}

TEST_CASE("plane and sphere counts compared over 6 vertices") {
  const auto freq = compare_counts(6, table_options(Mode::Plane), 2);
  std::size_t total = 0;
  for (const auto& [pair, count] : freq) {
    total += count;
    CHECK(pair.first <= pair.second);
  }
  CHECK(total == 42);
  CHECK(freq.at({mpz_class(1), mpz_class(1)}) == 15);
  CHECK(freq.at({mpz_class(12), mpz_class(16)}) == 1);
}

TEST_CASE("batch line parsing") {
  CHECK(parse_graph_line("31") == fixtures::k4_minus_edge());
  CHECK(parse_graph_line("31 n=5").vertex_count() == 5);
  CHECK(parse_graph_line("n=4 1-3 1-4 2-3 2-4 3-4") == fixtures::k4_minus_edge());
  CHECK(parse_graph_line("n=3").edge_count() == 0);
  CHECK_THROWS_AS(parse_graph_line("4 1-2"), GraphError);
  CHECK_THROWS_AS(parse_graph_line("n=3 1-4"), GraphError);
  CHECK_THROWS_AS(parse_graph_line("n=3 1-2 2-1"), GraphError);
  CHECK_THROWS_AS(parse_graph_line("n=3 1-x"), GraphError);
  CHECK_THROWS_AS(parse_graph_line("n=0"), GraphError);
  CHECK_THROWS_AS(parse_graph_line("abc"), GraphError);
}

TEST_CASE("batch records") {
  CountOptions opt;
  const BatchRecord k4e = make_record("31", true, true, opt);
  CHECK(k4e.error.empty());
  CHECK(k4e.n == 4);
  CHECK(k4e.m == 5);
  CHECK(k4e.rigid);
  CHECK(k4e.minimally_rigid);
  CHECK_FALSE(k4e.globally_rigid);
  CHECK(k4e.has_two_cut);
  CHECK(k4e.plane == mpz_class(2));
  CHECK(k4e.sphere == mpz_class(2));

  const BatchRecord cycle = make_record("c4", fixtures::cycle(4), true, false, opt);
  CHECK_FALSE(cycle.rigid);
  CHECK_FALSE(cycle.plane.has_value());
  CHECK(cycle.error.empty());

  const BatchRecord plane_only = make_record("1624383", true, false, opt);
  CHECK(plane_only.plane == mpz_class(12));
  CHECK_FALSE(plane_only.sphere.has_value());

  const BatchRecord bad = make_record("n=3 1-9", true, true, opt);
  CHECK_FALSE(bad.error.empty());

  const auto columns = [](const std::string& line) { return std::count(line.begin(), line.end(), '\t') + 1; };
  CHECK(columns(batch_tsv_header()) == 14);
  CHECK(columns(batch_tsv_line(k4e)) == 14);
  BatchRecord messy = bad;
  messy.error = "first\tsecond\nthird";
  CHECK(columns(batch_tsv_line(messy)) == 14);
  CHECK(batch_tsv_line(messy).find('\n') == std::string::npos);
  const std::string line = batch_tsv_line(k4e);
  CHECK(line.rfind("31\t4\t5\t1\t1\t0\t0\t0\t1\t2\t2\t", 0) == 0);
}
