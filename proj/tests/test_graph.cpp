#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <sstream>

#include "falqon/graph.hpp"
#include "falqon/reference.hpp"
#include "test_util.hpp"

using namespace falqon;
using namespace falqon::testutil;

TEST_CASE("three-regular generator: K4 is the only option at n=4") {
  const Graph k4 = make_complete(4);
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 987654321ull}) {
    const Graph g = gen_three_regular(4, seed);
    CHECK(g.edges == k4.edges);
    CHECK(g.family == GraphFamily::ThreeRegular);
    CHECK(g.seed == seed);
  }
}

TEST_CASE("three-regular generator is deterministic") {
  const Graph a = gen_three_regular(8, 1);
  const Graph b = gen_three_regular(8, 1);
  CHECK(a.edges == b.edges);
  CHECK(gen_three_regular(8, 2).edges != a.edges);
}

TEST_CASE("three-regular generator: 1000 samples all pass the degree check") {
  for (int i = 0; i < 1000; ++i) {
    const Graph g = gen_three_regular(10, 9000 + static_cast<std::uint64_t>(i));
    CHECK(g.edges.size() == 15);  // |E| = 3n/2
    std::vector<int> degree(g.n, 0);
    for (const Edge& e : g.edges) {
      ++degree[e.u];
      ++degree[e.v];
    }
    for (int v = 0; v < g.n; ++v) {
      REQUIRE(degree[v] == 3);
    }
  }
}

TEST_CASE("three-regular generator rejects bad n") {
  CHECK_THROWS_AS(gen_three_regular(9, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_three_regular(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_three_regular(-4, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_three_regular(32, 1), std::invalid_argument);
}

TEST_CASE("erdos-renyi: p = 1 gives the complete graph") {
  const Graph g = gen_erdos_renyi(14, 1.0, 7);
  CHECK(g.edges.size() == 91);
  CHECK(g.edges == make_complete(14).edges);
}

TEST_CASE("erdos-renyi generator is deterministic") {
  const Graph a = gen_erdos_renyi(8, 0.5, 123);
  const Graph b = gen_erdos_renyi(8, 0.5, 123);
  CHECK(a.edges == b.edges);
  CHECK(a.edge_probability == 0.5);
  CHECK(a.seed == 123);
}

TEST_CASE("erdos-renyi rejects bad p") {
  CHECK_THROWS_AS(gen_erdos_renyi(8, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_erdos_renyi(8, -0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_erdos_renyi(8, 1.2, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_erdos_renyi(1, 0.5, 1), std::invalid_argument);
}

TEST_CASE("erdos-renyi edge count statistics: 2000 samples at n=14, p=0.3") {
  double total = 0.0;
  for (int i = 0; i < 2000; ++i) {
    total += static_cast<double>(
        gen_erdos_renyi(14, 0.3, 7000 + static_cast<std::uint64_t>(i)).edges.size());
  }
  const double mean = total / 2000.0;
  // E = 0.3 * 91 = 27.3, three standard errors = 3 * sqrt(91 * 0.3 * 0.7 / 2000)
  CHECK(mean > 27.3 - 0.2932);
  CHECK(mean < 27.3 + 0.2932);
}

TEST_CASE("erdos-renyi never returns a zero-edge graph") {
  // At n=2, p=0.05 most seeds need the resampling path.
  int resampled = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = gen_erdos_renyi(2, 0.05, seed);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.seed == seed);
    RngEngine first_attempt(seed);
    if (!(uniform_unit(first_attempt) < 0.05)) ++resampled;
  }
  CHECK(resampled > 20);
  const Graph a = gen_erdos_renyi(2, 0.05, 3);
  const Graph b = gen_erdos_renyi(2, 0.05, 3);
  CHECK(a.edges == b.edges);
}

TEST_CASE("cut_value on bit strings") {
  const Graph k3 = make_complete(3);
  CHECK(cut_value(k3, "001") == 2);
  CHECK(cut_value(k3, "000") == 0);
  const Graph c4 = make_cycle(4);
  CHECK(cut_value(c4, "0101") == 4);
  CHECK(cut_value(c4, std::uint64_t{0}) == 0);
  CHECK_THROWS_AS(cut_value(k3, "01"), std::invalid_argument);
  CHECK_THROWS_AS(cut_value(k3, "0012"), std::invalid_argument);
  CHECK_THROWS_AS(cut_value(k3, "01x"), std::invalid_argument);
}

TEST_CASE("complement symmetry of the cut") {
  RngEngine rng(2024);
  for (int i = 0; i < 50; ++i) {
    const Graph g = random_test_graph(rng);
    const std::uint64_t all = (std::uint64_t{1} << g.n) - 1;
    for (int j = 0; j < 8; ++j) {
      const std::uint64_t m = uniform_index(rng, all + 1);
      CHECK(cut_value(g, m) == cut_value(g, m ^ all));
    }
  }
}

TEST_CASE("brute force on complete graphs") {
  for (int n = 2; n <= 14; ++n) {
    const MaxCutSolution sol = max_cut_brute_force(make_complete(n));
    CHECK(sol.optimum == (n / 2) * ((n + 1) / 2));
    CHECK(cut_value(make_complete(n), sol.witness) == sol.optimum);
  }
}

TEST_CASE("brute force on cycles") {
  for (int n = 4; n <= 14; n += 2) {
    CHECK(max_cut_brute_force(make_cycle(n)).optimum == n);
  }
  for (int n = 3; n <= 13; n += 2) {
    CHECK(max_cut_brute_force(make_cycle(n)).optimum == n - 1);
  }
}

TEST_CASE("brute force matches the full-scan oracle on the Petersen graph") {
  const Graph petersen = make_petersen();
  const MaxCutSolution fast = max_cut_brute_force(petersen);
  const MaxCutSolution slow = ref::max_cut_full_scan(petersen);
  CHECK(fast.optimum == slow.optimum);
  CHECK(fast.optimum == 12);
  CHECK(cut_value(petersen, fast.witness) == fast.optimum);
}

TEST_CASE("brute force matches the full-scan oracle on random graphs") {
  RngEngine rng(555);
  for (int i = 0; i < 25; ++i) {
    const Graph g = random_test_graph(rng);
    CHECK(max_cut_brute_force(g).optimum == ref::max_cut_full_scan(g).optimum);
  }
}

TEST_CASE("brute force witness: vertex 0 on side 0, lowest assignment wins") {
  const MaxCutSolution edge = max_cut_brute_force(make_single_edge());
  CHECK(edge.optimum == 1);
  CHECK(assignment_bits(edge.witness, 2) == "01");

  const MaxCutSolution c4 = max_cut_brute_force(make_cycle(4));
  CHECK(c4.witness == 0b1010);
  CHECK(assignment_bits(c4.witness, 4) == "0101");

  RngEngine rng(808);
  for (int i = 0; i < 20; ++i) {
    const Graph g = random_test_graph(rng);
    CHECK((max_cut_brute_force(g).witness & 1u) == 0);
  }
}

TEST_CASE("graph validation catches broken inputs") {
  CHECK_THROWS_AS(make_graph(3, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK(make_graph(3, {{2, 0}, {0, 1}}).edges == std::vector<Edge>{{0, 1}, {0, 2}});
}

TEST_CASE("edge-list serialization round-trips") {
  std::stringstream buffer;
  const Graph g = gen_erdos_renyi(14, 1.0, 7);
  write_graph(g, buffer);
  std::string header;
  std::getline(buffer, header);
  CHECK(header == "14 91 er 1.0 7");

  buffer.clear();
  buffer.seekg(0);
  const Graph back = read_graph(buffer);
  CHECK(back.n == g.n);
  CHECK(back.edges == g.edges);
  CHECK(back.family == g.family);
  CHECK(back.edge_probability == g.edge_probability);
  CHECK(back.seed == g.seed);
}

TEST_CASE("serialization round-trips every family") {
  for (const Graph& g :
       {gen_three_regular(8, 17), gen_erdos_renyi(9, 0.35, 99), make_petersen()}) {
    std::stringstream buffer;
    write_graph(g, buffer);
    const Graph back = read_graph(buffer);
    CHECK(back.n == g.n);
    CHECK(back.edges == g.edges);
    CHECK(back.family == g.family);
  }
}

TEST_CASE("reading malformed graph files fails") {
  const auto reject = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS(read_graph(in));
  };
  reject("");
  reject("2 1 er 0.5\n0 1\n");                // header too short
  reject("2 2 er 0.5 1\n0 1\n");              // fewer edges than declared
  reject("2 1 weird 0.5 1\n0 1\n");           // unknown family
  reject("3 2 custom 0.0 0\n0 1\n0 1\n");     // duplicate edge
  reject("3 1 custom 0.0 0\n1 1\n");          // self loop
  reject("3 1 custom 0.0 0\n0 3\n");          // vertex out of range
  reject("6 3 3reg 0.0 1\n0 1\n2 3\n4 5\n");  // degree-1 vertices tagged 3reg
  reject("2 1 er 0.0 1\n0 1\n");              // p outside (0, 1]
}

TEST_CASE("assignment bit strings round-trip") {
  CHECK(assignment_bits(0b0110, 4) == "0110");
  CHECK(parse_assignment_bits("0110") == 0b0110);
  RngEngine rng(31337);
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 20));
    const std::uint64_t m = uniform_index(rng, std::uint64_t{1} << n);
    CHECK(parse_assignment_bits(assignment_bits(m, n)) == m);
  }
}
