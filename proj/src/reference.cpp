#include "falqon/reference.hpp"

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>

namespace falqon::ref {

namespace {

using Complex = std::complex<double>;

void check_dims(const char* who, const StateVector& state, int n) {
  if (state.n != n || state.amplitudes.size() != (std::size_t{1} << state.n)) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
}

void rotate_pairs(StateVector& state, int qubit, double c, double s) {
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t lo_mask = mask - 1;
  const std::size_t hi_mask = ~lo_mask;
  const std::size_t pairs = state.amplitudes.size() >> 1;
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t i0 = ((i & hi_mask) << 1) | (i & lo_mask);
    const std::size_t i1 = i0 | mask;
    const Complex a = state.amplitudes[i0];
    const Complex b = state.amplitudes[i1];
    state.amplitudes[i0] = {c * a.real() + s * b.imag(), c * a.imag() - s * b.real()};
    state.amplitudes[i1] = {s * a.imag() + c * b.real(), -s * a.real() + c * b.imag()};
  }
}

}  // namespace

void apply_cost_phase(StateVector& state, const CostDiagonal& cost, double dt) {
  check_dims("ref::apply_cost_phase", state, cost.n);
  if (!(dt > 0.0)) {
    throw std::invalid_argument("ref::apply_cost_phase: dt must be positive");
  }
  for (std::size_t b = 0; b < state.amplitudes.size(); ++b) {
    state.amplitudes[b] *= std::polar(1.0, -cost.values[b] * dt);
  }
}

void apply_mixer(StateVector& state, double beta, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("ref::apply_mixer: dt must be positive");
  }
  const double c = std::cos(beta * dt);
  const double s = std::sin(beta * dt);
  for (int q = 0; q < state.n; ++q) {
    rotate_pairs(state, q, c, s);
  }
}

void apply_mixer_ordered(StateVector& state, double beta, double dt,
                         std::span<const int> qubit_order) {
  if (static_cast<int>(qubit_order.size()) != state.n) {
    throw std::invalid_argument("ref::apply_mixer_ordered: order must list every qubit");
  }
  const double c = std::cos(beta * dt);
  const double s = std::sin(beta * dt);
  for (const int q : qubit_order) {
    rotate_pairs(state, q, c, s);
  }
}

double expected_cut(const StateVector& state, const CutDiagonal& cut) {
  check_dims("ref::expected_cut", state, cut.n);
  double sum = 0.0;
  for (std::size_t b = 0; b < state.amplitudes.size(); ++b) {
    sum += std::norm(state.amplitudes[b]) * static_cast<double>(cut.values[b]);
  }
  return sum;
}

double expected_cost(const StateVector& state, const CostDiagonal& cost) {
  check_dims("ref::expected_cost", state, cost.n);
  double sum = 0.0;
  for (std::size_t b = 0; b < state.amplitudes.size(); ++b) {
    sum += std::norm(state.amplitudes[b]) * cost.values[b];
  }
  return sum;
}

double measure_commutator(const StateVector& state, const CostDiagonal& cost) {
  check_dims("ref::measure_commutator", state, cost.n);
  const std::size_t dim = state.amplitudes.size();

  std::vector<Complex> diag(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    diag[b] = cost.values[b] * state.amplitudes[b];
  }
  std::vector<Complex> driven(dim, Complex{0.0, 0.0});
  for (int q = 0; q < state.n; ++q) {
    const std::size_t flip = std::size_t{1} << q;
    for (std::size_t b = 0; b < dim; ++b) {
      driven[b] += diag[b ^ flip];
    }
  }
  Complex overlap{0.0, 0.0};
  for (std::size_t b = 0; b < dim; ++b) {
    overlap += std::conj(state.amplitudes[b]) * driven[b];
  }
  return -2.0 * overlap.imag();
}

double commutator_pauli_yz(const StateVector& state, const Graph& g) {
  check_dims("ref::commutator_pauli_yz", state, g.n);
  const std::size_t dim = state.amplitudes.size();

  // <Y_u Z_v>: Y flips bit u with phase +-i, Z signs on bit v.
  const auto yz_expectation = [&](int u, int v) {
    Complex sum{0.0, 0.0};
    for (std::size_t b = 0; b < dim; ++b) {
      const std::size_t f = b ^ (std::size_t{1} << u);
      const Complex y = ((b >> u) & 1u) ? Complex{0.0, 1.0} * state.amplitudes[f]
                                        : Complex{0.0, -1.0} * state.amplitudes[f];
      const double z = ((b >> v) & 1u) ? -1.0 : 1.0;
      sum += std::conj(state.amplitudes[b]) * (z * y);
    }
    return sum.real();
  };

  double a = 0.0;
  for (const Edge& e : g.edges) {
    a += yz_expectation(e.u, e.v) + yz_expectation(e.v, e.u);
  }
  return a;
}

DenseMatrix dense_commutator(const CostDiagonal& cost) {
  if (cost.n < 1 || cost.n > 10) {
    throw std::invalid_argument("ref::dense_commutator: n must lie in [1, 10]");
  }
  const std::size_t dim = std::size_t{1} << cost.n;

  // H_M = sum_q I x ... x X_q x ... x I via explicit Kronecker products.
  const auto kron = [](const DenseMatrix& a, std::size_t da, const DenseMatrix& b,
                       std::size_t db) {
    DenseMatrix out(da * db * da * db, Complex{0.0, 0.0});
    for (std::size_t ra = 0; ra < da; ++ra)
      for (std::size_t ca = 0; ca < da; ++ca)
        for (std::size_t rb = 0; rb < db; ++rb)
          for (std::size_t cb = 0; cb < db; ++cb)
            out[(ra * db + rb) * (da * db) + (ca * db + cb)] =
                a[ra * da + ca] * b[rb * db + cb];
    return out;
  };

  const DenseMatrix identity2{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};
  const DenseMatrix pauli_x{{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};

  DenseMatrix hm(dim * dim, Complex{0.0, 0.0});
  for (const MixerTerm& term : mixer_pauli_terms(cost.n)) {
    // Qubit 0 is the least-significant bit, so it sits rightmost in the
    // Kronecker chain.
    DenseMatrix factor{{1.0, 0.0}};
    std::size_t dfac = 1;
    for (int q = cost.n - 1; q >= 0; --q) {
      factor = kron(factor, dfac, q == term.qubit ? pauli_x : identity2, 2);
      dfac *= 2;
    }
    for (std::size_t k = 0; k < hm.size(); ++k) {
      hm[k] += term.coefficient * factor[k];
    }
  }

  DenseMatrix hc(dim * dim, Complex{0.0, 0.0});
  for (std::size_t b = 0; b < dim; ++b) {
    hc[b * dim + b] = cost.values[b];
  }

  const auto matmul = [dim](const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(dim * dim, Complex{0.0, 0.0});
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t k = 0; k < dim; ++k) {
        const Complex arc = a[r * dim + k];
        if (arc == Complex{0.0, 0.0}) continue;
        for (std::size_t c = 0; c < dim; ++c) {
          out[r * dim + c] += arc * b[k * dim + c];
        }
      }
    return out;
  };

  const DenseMatrix hm_hc = matmul(hm, hc);
  const DenseMatrix hc_hm = matmul(hc, hm);
  DenseMatrix commutator(dim * dim);
  for (std::size_t k = 0; k < commutator.size(); ++k) {
    commutator[k] = Complex{0.0, 1.0} * (hm_hc[k] - hc_hm[k]);
  }
  return commutator;
}

double dense_expectation(const DenseMatrix& m, const StateVector& state) {
  const std::size_t dim = state.amplitudes.size();
  if (m.size() != dim * dim) {
    throw std::invalid_argument("ref::dense_expectation: matrix/state mismatch");
  }
  Complex sum{0.0, 0.0};
  for (std::size_t r = 0; r < dim; ++r) {
    Complex row{0.0, 0.0};
    for (std::size_t c = 0; c < dim; ++c) {
      row += m[r * dim + c] * state.amplitudes[c];
    }
    sum += std::conj(state.amplitudes[r]) * row;
  }
  return sum.real();
}

MaxCutSolution max_cut_full_scan(const Graph& g) {
  validate_graph(g);
  const std::uint64_t dim = std::uint64_t{1} << g.n;
  int best = -1;
  std::uint64_t arg = 0;
  for (std::uint64_t m = 0; m < dim; ++m) {
    int cut = 0;
    for (const Edge& e : g.edges) {
      cut += static_cast<int>((m >> e.u ^ m >> e.v) & 1u);
    }
    if (cut > best) {
      best = cut;
      arg = m;
    }
  }
  return MaxCutSolution{best, arg};
}

}  // namespace falqon::ref
