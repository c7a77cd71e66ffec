#pragma once

#include <complex>
#include <vector>

#include "falqon/hamiltonian.hpp"

namespace falqon {

/// Full 2^n complex amplitude representation of an n-qubit pure state.
struct StateVector {
  int n = 0;
  std::vector<std::complex<double>> amplitudes;
};

/// Uniform superposition |+>^n: every amplitude 2^(-n/2), real.
StateVector init_plus_state(int n);

// Layer kernels. Parallelized with OpenMP; results are identical for every
// thread count: elementwise updates carry no ordering, and reductions sum
// fixed-size blocks combined serially in block order.

/// amplitude[b] *= exp(-i * cost.values[b] * dt).
void apply_cost_phase(StateVector& state, const CostDiagonal& cost, double dt);

/// exp(-i * beta * dt * X_i) on every qubit i (the rotations commute).
void apply_mixer(StateVector& state, double beta, double dt);

/// sum_b |amplitude[b]|^2 * cut.values[b].
double expected_cut(const StateVector& state, const CutDiagonal& cut);

/// sum_b |amplitude[b]|^2 * cost.values[b]; equals -expected_cut.
double expected_cost(const StateVector& state, const CostDiagonal& cost);

/// A = <i[H_M, H_C]> = -2 Im <psi| H_M H_C |psi> with H_M the transverse
/// field and H_C the cost diagonal. One diagonal multiply plus n bit-flip
/// accumulations; no dense matrices.
double measure_commutator(const StateVector& state, const CostDiagonal& cost);

double norm_squared(const StateVector& state);

}  // namespace falqon
