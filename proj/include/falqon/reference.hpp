#pragma once

#include <complex>
#include <span>
#include <vector>

#include "falqon/graph.hpp"
#include "falqon/state_vector.hpp"

// Plain serial implementations of the simulator kernels plus independent
// oracles. Kept for tests and the kernel benchmark; the production path never
// calls into this namespace.
namespace falqon::ref {

void apply_cost_phase(StateVector& state, const CostDiagonal& cost, double dt);
void apply_mixer(StateVector& state, double beta, double dt);

/// Mixer with an explicit qubit order (the rotations commute, so every order
/// must agree).
void apply_mixer_ordered(StateVector& state, double beta, double dt,
                         std::span<const int> qubit_order);

double expected_cut(const StateVector& state, const CutDiagonal& cut);
double expected_cost(const StateVector& state, const CostDiagonal& cost);

/// A via an explicit H_C|psi> temporary followed by n bit-flip passes.
double measure_commutator(const StateVector& state, const CostDiagonal& cost);

/// A via the edge-local Pauli decomposition sum_(u,v) <Y_u Z_v> + <Z_u Y_v>
/// (the sign matching the negated-cut diagonal).
double commutator_pauli_yz(const StateVector& state, const Graph& g);

/// Row-major dim x dim dense matrix.
using DenseMatrix = std::vector<std::complex<double>>;

/// i(H_M H_C - H_C H_M) assembled from explicit Kronecker products and dense
/// matrix products. Guarded to n <= 10.
DenseMatrix dense_commutator(const CostDiagonal& cost);

double dense_expectation(const DenseMatrix& m, const StateVector& state);

/// Exhaustive scan over all 2^n assignments, no symmetry reduction.
MaxCutSolution max_cut_full_scan(const Graph& g);

}  // namespace falqon::ref
