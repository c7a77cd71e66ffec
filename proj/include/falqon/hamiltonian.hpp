#pragma once

#include <cstdint>
#include <vector>

#include "falqon/graph.hpp"

namespace falqon {

/// Diagonal of the cut operator in the computational basis: entry b is the
/// number of edges cut by assignment b. Bit i of the index is the basis value
/// of qubit i (qubit 0 = least-significant bit).
struct CutDiagonal {
  int n = 0;
  std::vector<std::int32_t> values;
};

/// Diagonal the dynamics minimize: elementwise negation of the cut diagonal,
/// so its minimum entries sit exactly on maximum-cut bitstrings.
struct CostDiagonal {
  int n = 0;
  std::vector<double> values;
};

CutDiagonal build_cut_diagonal(const Graph& g);
CostDiagonal build_cost_diagonal(const Graph& g);

/// One Pauli-X term of the transverse-field driver.
struct MixerTerm {
  int qubit = 0;
  double coefficient = 1.0;
  friend bool operator==(const MixerTerm&, const MixerTerm&) = default;
};

/// The driver is the transverse field: one unit-coefficient X per qubit.
std::vector<MixerTerm> mixer_pauli_terms(int n);

}  // namespace falqon
