#include "falqon/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "falqon/numfmt.hpp"
#include "falqon/rng.hpp"

namespace falqon {

namespace {

constexpr int kThreeRegularDegree = 3;
constexpr int kMaxGenAttempts = 10000;

void check_vertex_count(const char* who, int n) {
  if (n < 2) {
    throw std::invalid_argument(std::string(who) + ": need at least 2 vertices");
  }
  if (n > kMaxVertices) {
    throw std::invalid_argument(std::string(who) + ": vertex count exceeds " +
                                std::to_string(kMaxVertices));
  }
}

}  // namespace

std::string family_name(GraphFamily family) {
  switch (family) {
    case GraphFamily::ThreeRegular: return "3reg";
    case GraphFamily::ErdosRenyi: return "er";
    case GraphFamily::Custom: return "custom";
  }
  throw std::invalid_argument("family_name: unknown family");
}

GraphFamily family_from_name(std::string_view name) {
  if (name == "3reg") return GraphFamily::ThreeRegular;
  if (name == "er") return GraphFamily::ErdosRenyi;
  if (name == "custom") return GraphFamily::Custom;
  throw std::invalid_argument("unknown graph family '" + std::string(name) + "'");
}

void validate_graph(const Graph& g) {
  check_vertex_count("graph", g.n);
  if (g.edges.empty()) {
    throw std::invalid_argument("graph: at least one edge required");
  }
  for (const Edge& e : g.edges) {
    if (e.u < 0 || e.v >= g.n || e.u >= e.v) {
      throw std::invalid_argument("graph: edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ") is not normalized within range");
    }
  }
  if (!std::is_sorted(g.edges.begin(), g.edges.end()) ||
      std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end()) {
    throw std::invalid_argument("graph: edges must be sorted and unique");
  }
  if (g.family == GraphFamily::ThreeRegular) {
    if (g.n % 2 != 0 || g.n < 4) {
      throw std::invalid_argument("graph: 3-regular graphs need even n >= 4");
    }
    std::vector<int> degree(g.n, 0);
    for (const Edge& e : g.edges) {
      ++degree[e.u];
      ++degree[e.v];
    }
    for (int v = 0; v < g.n; ++v) {
      if (degree[v] != kThreeRegularDegree) {
        throw std::invalid_argument("graph: vertex " + std::to_string(v) +
                                    " has degree " + std::to_string(degree[v]) +
                                    ", expected 3");
      }
    }
  }
  if (g.family == GraphFamily::ErdosRenyi) {
    if (!(g.edge_probability > 0.0) || g.edge_probability > 1.0) {
      throw std::invalid_argument("graph: edge probability must lie in (0, 1]");
    }
  }
}

Graph gen_three_regular(int n, std::uint64_t seed) {
  if (n % 2 != 0 || n < 4) {
    throw std::invalid_argument("gen_three_regular: n must be even and >= 4");
  }
  check_vertex_count("gen_three_regular", n);

  RngEngine rng(seed);
  std::vector<int> stubs(static_cast<std::size_t>(n) * kThreeRegularDegree);
  for (int v = 0; v < n; ++v) {
    for (int k = 0; k < kThreeRegularDegree; ++k) {
      stubs[static_cast<std::size_t>(v) * kThreeRegularDegree + k] = v;
    }
  }

  for (int attempt = 0; attempt < kMaxGenAttempts; ++attempt) {
    for (std::size_t i = stubs.size() - 1; i > 0; --i) {
      const std::size_t j = uniform_index(rng, i + 1);
      std::swap(stubs[i], stubs[j]);
    }

    // Pair consecutive stubs; reject the whole pairing on any loop or
    // multi-edge so accepted samples stay (asymptotically) uniform.
    std::vector<std::uint32_t> adjacency(n, 0);
    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    bool simple = true;
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
      int u = stubs[k];
      int v = stubs[k + 1];
      if (u == v) {
        simple = false;
        break;
      }
      if (u > v) std::swap(u, v);
      if (adjacency[u] & (1u << v)) {
        simple = false;
        break;
      }
      adjacency[u] |= 1u << v;
      edges.push_back({u, v});
    }
    if (!simple) continue;

    std::sort(edges.begin(), edges.end());
    Graph g{n, std::move(edges), GraphFamily::ThreeRegular, 0.0, seed};
    validate_graph(g);
    return g;
  }
  throw std::runtime_error("gen_three_regular: no simple pairing found after " +
                           std::to_string(kMaxGenAttempts) + " attempts");
}

Graph gen_erdos_renyi(int n, double p, std::uint64_t seed) {
  if (!(p > 0.0) || p > 1.0) {
    throw std::invalid_argument("gen_erdos_renyi: p must lie in (0, 1]");
  }
  check_vertex_count("gen_erdos_renyi", n);

  for (int attempt = 0; attempt < kMaxGenAttempts; ++attempt) {
    // Empty samples are resampled under a derived sub-seed so the ratio
    // denominator (the optimum) is never zero.
    RngEngine rng(seed ^ static_cast<std::uint64_t>(attempt));
    std::vector<Edge> edges;
    for (int u = 0; u < n - 1; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (uniform_unit(rng) < p) {
          edges.push_back({u, v});
        }
      }
    }
    if (edges.empty()) continue;

    Graph g{n, std::move(edges), GraphFamily::ErdosRenyi, p, seed};
    validate_graph(g);
    return g;
  }
  throw std::runtime_error("gen_erdos_renyi: all " + std::to_string(kMaxGenAttempts) +
                           " samples came out empty");
}

Graph make_graph(int n, std::vector<Edge> edges) {
  for (Edge& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  Graph g{n, std::move(edges), GraphFamily::Custom, 0.0, 0};
  validate_graph(g);
  return g;
}

int cut_value(const Graph& g, std::uint64_t assignment) {
  int cut = 0;
  for (const Edge& e : g.edges) {
    cut += static_cast<int>((assignment >> e.u ^ assignment >> e.v) & 1u);
  }
  return cut;
}

int cut_value(const Graph& g, std::string_view bits) {
  if (static_cast<int>(bits.size()) != g.n) {
    throw std::invalid_argument("cut_value: assignment has " +
                                std::to_string(bits.size()) + " bits, graph has " +
                                std::to_string(g.n) + " vertices");
  }
  return cut_value(g, parse_assignment_bits(bits));
}

std::uint64_t parse_assignment_bits(std::string_view bits) {
  std::uint64_t mask = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1') {
      mask |= std::uint64_t{1} << k;
    } else if (bits[k] != '0') {
      throw std::invalid_argument("assignment bits must be '0' or '1'");
    }
  }
  return mask;
}

std::string assignment_bits(std::uint64_t assignment, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k) {
    if ((assignment >> k) & 1u) s[k] = '1';
  }
  return s;
}

MaxCutSolution max_cut_brute_force(const Graph& g) {
  validate_graph(g);

  std::vector<std::uint64_t> edge_masks;
  edge_masks.reserve(g.edges.size());
  for (const Edge& e : g.edges) {
    edge_masks.push_back((std::uint64_t{1} << e.u) | (std::uint64_t{1} << e.v));
  }

  // Vertex 0 fixed to side 0: scan assignments t<<1 for t in [0, 2^(n-1)).
  const std::uint64_t half = std::uint64_t{1} << (g.n - 1);
  constexpr std::uint64_t kBlock = 1u << 16;
  const std::uint64_t nblocks = (half + kBlock - 1) / kBlock;

  std::vector<int> block_best(nblocks, -1);
  std::vector<std::uint64_t> block_arg(nblocks, 0);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(nblocks); ++blk) {
    const std::uint64_t lo = static_cast<std::uint64_t>(blk) * kBlock;
    const std::uint64_t hi = std::min(half, lo + kBlock);
    int best = -1;
    std::uint64_t arg = 0;
    for (std::uint64_t t = lo; t < hi; ++t) {
      const std::uint64_t m = t << 1;
      int cut = 0;
      for (const std::uint64_t em : edge_masks) {
        cut += std::popcount(m & em) & 1;
      }
      if (cut > best) {
        best = cut;
        arg = t;
      }
    }
    block_best[blk] = best;
    block_arg[blk] = arg;
  }

  // Combine in block order: strict improvement keeps the lowest assignment.
  int best = -1;
  std::uint64_t arg = 0;
  for (std::uint64_t blk = 0; blk < nblocks; ++blk) {
    if (block_best[blk] > best) {
      best = block_best[blk];
      arg = block_arg[blk];
    }
  }
  return MaxCutSolution{best, arg << 1};
}

void write_graph(const Graph& g, std::ostream& out) {
  validate_graph(g);
  out << g.n << ' ' << g.edges.size() << ' ' << family_name(g.family) << ' '
      << format_shortest(g.edge_probability) << ' ' << g.seed << '\n';
  for (const Edge& e : g.edges) {
    out << e.u << ' ' << e.v << '\n';
  }
}

void write_graph_file(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  write_graph(g, out);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

Graph read_graph(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw std::runtime_error("graph file: missing header line");
  }
  std::istringstream hs(header);
  std::string family_tag, p_text;
  Graph g;
  std::size_t m = 0;
  if (!(hs >> g.n >> m >> family_tag >> p_text >> g.seed)) {
    throw std::runtime_error("graph file: malformed header '" + header + "'");
  }
  g.family = family_from_name(family_tag);
  g.edge_probability = parse_double(p_text);

  g.edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    Edge e;
    if (!(in >> e.u >> e.v)) {
      throw std::runtime_error("graph file: expected " + std::to_string(m) +
                               " edges, found " + std::to_string(k));
    }
    g.edges.push_back(e);
  }
  validate_graph(g);
  return g;
}

Graph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open graph file '" + path.string() + "'");
  }
  return read_graph(in);
}

}  // namespace falqon
