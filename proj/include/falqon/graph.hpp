#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace falqon {

/// Brute-force scans walk 2^(n-1) bipartitions; keep instances addressable.
inline constexpr int kMaxVertices = 30;

enum class GraphFamily { ThreeRegular, ErdosRenyi, Custom };

std::string family_name(GraphFamily family);
GraphFamily family_from_name(std::string_view name);

struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected, unweighted simple graph plus the provenance needed to
/// regenerate it. Edges are normalized u < v and sorted ascending.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;
  GraphFamily family = GraphFamily::Custom;
  double edge_probability = 0.0;  // meaningful for ErdosRenyi only
  std::uint64_t seed = 0;
};

struct MaxCutSolution {
  int optimum = 0;
  /// Bit i holds the side of vertex i; bit 0 is always 0 (cut symmetry).
  std::uint64_t witness = 0;
};

/// Simple 3-regular graph sampled via the pairing (configuration) model with
/// rejection of loops and multi-edges. n must be even and >= 4.
Graph gen_three_regular(int n, std::uint64_t seed);

/// G(n, p): each of the C(n,2) pairs included independently with probability
/// p in (0, 1]. Zero-edge outcomes are resampled with sub-seed
/// seed XOR attempt.
Graph gen_erdos_renyi(int n, double p, std::uint64_t seed);

/// Hand-built graph (family tag Custom); validates simplicity.
Graph make_graph(int n, std::vector<Edge> edges);

/// Throws std::invalid_argument if any structural invariant is violated.
void validate_graph(const Graph& g);

/// Number of edges whose endpoints lie on different sides. Bit i of
/// `assignment` is the side of vertex i.
int cut_value(const Graph& g, std::uint64_t assignment);

/// Same, from a bit string with exactly g.n characters, vertex 0 first.
int cut_value(const Graph& g, std::string_view assignment_bits);

/// Exhaustive maximum over 2^(n-1) bipartitions (vertex 0 fixed to side 0);
/// ties resolved to the lowest assignment index.
MaxCutSolution max_cut_brute_force(const Graph& g);

/// Renders an assignment as a bit string, vertex 0 first.
std::string assignment_bits(std::uint64_t assignment, int n);
std::uint64_t parse_assignment_bits(std::string_view bits);

// Edge-list text format: one header line "n m family p seed", then m lines
// "u v" with u < v.
void write_graph(const Graph& g, std::ostream& out);
void write_graph_file(const Graph& g, const std::filesystem::path& path);
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::filesystem::path& path);

}  // namespace falqon
