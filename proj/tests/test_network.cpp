#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "lobnet/network.hpp"
#include "lobnet/random.hpp"

using namespace lobnet;

namespace {

std::vector<double> degrees(const Graph& g) {
  std::vector<double> d(g.node_count());
  for (AgentId i = 0; i < g.node_count(); ++i) d[i] = static_cast<double>(g.degree(i));
  return d;
}

double fraction_at_least(const Graph& g, std::size_t k) {
  std::size_t c = 0;
  for (AgentId i = 0; i < g.node_count(); ++i) c += g.degree(i) >= k;
  return static_cast<double>(c) / static_cast<double>(g.node_count());
}

} // namespace

TEST_SUITE("network") {

TEST_CASE("graph validates its edges") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
  const Graph g(4, {{2, 1}, {0, 3}, {1, 3}});
  CHECK(g.edge_count() == 3);
  const auto n = g.neighbors(3);
  CHECK(std::vector<AgentId>(n.begin(), n.end()) == std::vector<AgentId>{0, 1});
  CHECK(g.edges().front() == Edge{0, 3});
  CHECK_THROWS_AS(g.neighbors(4), std::out_of_range);
}

TEST_CASE("3x3 diagonal torus is the complete graph on nine nodes") {
  const Graph g = build_lattice_x(3, 3);
  CHECK(g.node_count() == 9);
  CHECK(g.edge_count() == 36);
  for (AgentId i = 0; i < 9; ++i) CHECK(g.degree(i) == 8);
}

TEST_CASE("25x40 lattice is 8-regular with 4000 edges") {
  const Graph g = build_lattice_x(25, 40);
  CHECK(g.node_count() == 1000);
  CHECK(g.edge_count() == 4000);
  for (AgentId i = 0; i < 1000; ++i) REQUIRE(g.degree(i) == 8);
  // Wrap-around: node 0 is adjacent to the last row and column.
  const auto n0 = g.neighbors(0);
  CHECK(std::binary_search(n0.begin(), n0.end(), AgentId{999}));
  CHECK(std::binary_search(n0.begin(), n0.end(), AgentId{39}));
  CHECK_THROWS_AS(build_lattice_x(2, 5), std::invalid_argument);
}

TEST_CASE("Erdos-Renyi has exactly the requested edges") {
  Rng rng(3);
  CHECK(build_erdos_renyi(1000, 4000, rng).edge_count() == 4000);
  const Graph k5 = build_erdos_renyi(5, 10, rng);
  for (AgentId i = 0; i < 5; ++i) CHECK(k5.degree(i) == 4);
  CHECK_THROWS(build_erdos_renyi(5, 11, rng));
  CHECK(build_erdos_renyi(40, 700, rng).edge_count() == 700);
}

TEST_CASE("Erdos-Renyi degree moments match the binomial") {
  Rng rng(11);
  const double n = 200, m = 800;
  const double p = m / (n * (n - 1) / 2);
  double sum = 0, sq = 0, count = 0;
  for (int b = 0; b < 200; ++b) {
    for (double d : degrees(build_erdos_renyi(200, 800, rng))) {
      sum += d;
      sq += d * d;
      ++count;
    }
  }
  const double mean = sum / count;
  const double var = sq / count - mean * mean;
  CHECK(mean == doctest::Approx((n - 1) * p).epsilon(0.02));
  CHECK(var == doctest::Approx((n - 1) * p * (1 - p)).epsilon(0.15));
}

TEST_CASE("Barabasi-Albert edge count, minimum degree and hubs") {
  Rng rng(5);
  const Graph g = build_barabasi_albert(1000, 4, rng);
  CHECK(g.edge_count() == 3990);
  std::size_t min_deg = g.node_count();
  for (AgentId i = 0; i < 1000; ++i) min_deg = std::min(min_deg, g.degree(i));
  CHECK(min_deg == 4);

  std::size_t with_hub = 0;
  for (int b = 0; b < 100; ++b) {
    const auto d = degrees(build_barabasi_albert(1000, 4, rng));
    with_hub += *std::max_element(d.begin(), d.end()) > 24;
  }
  CHECK(with_hub >= 95);
}

TEST_CASE("Barabasi-Albert tail is heavier than Erdos-Renyi at equal mean degree") {
  Rng rng(8);
  double ba = 0, er = 0;
  for (int b = 0; b < 20; ++b) {
    ba += fraction_at_least(build_barabasi_albert(1000, 4, rng), 32);
    er += fraction_at_least(build_erdos_renyi(1000, 3990, rng), 32);
  }
  CHECK(ba > 0);
  CHECK(ba >= 10 * er);
}

TEST_CASE("builders are deterministic in the seed") {
  Rng a(77), b(77);
  CHECK(build_barabasi_albert(300, 4, a).edges() == build_barabasi_albert(300, 4, b).edges());
  CHECK(build_erdos_renyi(300, 1200, a).edges() == build_erdos_renyi(300, 1200, b).edges());
}

TEST_CASE("network spec dispatch and edge export") {
  Rng rng(1);
  CHECK_FALSE(build_network(NetworkSpec{}, 1000, rng));
  NetworkSpec lattice;
  lattice.kind = NetworkKind::LatticeX;
  lattice.lattice_rows = 3;
  lattice.lattice_cols = 3;
  const auto g = build_network(lattice, 9, rng);
  REQUIRE(g);
  std::ostringstream out;
  write_edge_list(*g, out);
  std::istringstream in(out.str());
  std::string line;
  std::set<std::pair<int, int>> seen;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    const int u = std::stoi(line.substr(0, comma)), v = std::stoi(line.substr(comma + 1));
    CHECK(u < v);
    seen.emplace(u, v);
  }
  CHECK(seen.size() == 36);
  lattice.lattice_rows = 4;
  CHECK_THROWS(build_network(lattice, 9, rng));

  CHECK(parse_network_kind("ba") == NetworkKind::BarabasiAlbert);
  CHECK(parse_network_kind("lattice") == NetworkKind::LatticeX);
  CHECK_THROWS(parse_network_kind("grid"));
}

} // TEST_SUITE
