#include "falqon/hamiltonian.hpp"

#include <cstddef>
#include <stdexcept>

namespace falqon {

CutDiagonal build_cut_diagonal(const Graph& g) {
  validate_graph(g);
  const std::size_t dim = std::size_t{1} << g.n;
  CutDiagonal diag{g.n, std::vector<std::int32_t>(dim)};

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(dim); ++b) {
    std::int32_t cut = 0;
    for (const Edge& e : g.edges) {
      cut += static_cast<std::int32_t>((b >> e.u ^ b >> e.v) & 1);
    }
    diag.values[static_cast<std::size_t>(b)] = cut;
  }
  return diag;
}

CostDiagonal build_cost_diagonal(const Graph& g) {
  const CutDiagonal cut = build_cut_diagonal(g);
  CostDiagonal cost{cut.n, std::vector<double>(cut.values.size())};
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(cut.values.size()); ++b) {
    cost.values[static_cast<std::size_t>(b)] =
        -static_cast<double>(cut.values[static_cast<std::size_t>(b)]);
  }
  return cost;
}

std::vector<MixerTerm> mixer_pauli_terms(int n) {
  if (n < 1) {
    throw std::invalid_argument("mixer_pauli_terms: need at least one qubit");
  }
  std::vector<MixerTerm> terms;
  terms.reserve(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    terms.push_back({q, 1.0});
  }
  return terms;
}

}  // namespace falqon
