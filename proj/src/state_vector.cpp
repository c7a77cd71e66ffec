#include "falqon/state_vector.hpp"

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>

#include "falqon/graph.hpp"

namespace falqon {

namespace {

// Reductions sum fixed-size blocks and combine them serially in block order,
// so the result is bitwise independent of the OpenMP thread count.
constexpr std::size_t kReduceBlock = 4096;

std::size_t block_count(std::size_t dim) {
  return (dim + kReduceBlock - 1) / kReduceBlock;
}

void check_dims(const char* who, const StateVector& state, int n) {
  if (state.n != n) {
    throw std::invalid_argument(std::string(who) + ": state has " +
                                std::to_string(state.n) + " qubits, diagonal has " +
                                std::to_string(n));
  }
  if (state.amplitudes.size() != (std::size_t{1} << state.n)) {
    throw std::invalid_argument(std::string(who) + ": amplitude count is not 2^n");
  }
}

void check_dt(const char* who, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": dt must be positive");
  }
}

}  // namespace

StateVector init_plus_state(int n) {
  if (n < 1 || n > kMaxVertices) {
    throw std::invalid_argument("init_plus_state: n must lie in [1, " +
                                std::to_string(kMaxVertices) + "]");
  }
  const std::size_t dim = std::size_t{1} << n;
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  return StateVector{n, std::vector<std::complex<double>>(dim, {amp, 0.0})};
}

void apply_cost_phase(StateVector& state, const CostDiagonal& cost, double dt) {
  check_dims("apply_cost_phase", state, cost.n);
  check_dt("apply_cost_phase", dt);
  const std::size_t dim = state.amplitudes.size();

  // The diagonal is a negated integer cut count in every production path, so
  // the distinct phases fit a small table; fall back to elementwise phases
  // for arbitrary diagonals.
  double max_level = 0.0;
  bool integral = true;
  for (std::size_t b = 0; b < dim && integral; ++b) {
    const double level = -cost.values[b];
    if (level < 0.0 || level != std::floor(level) || level > 1e6) {
      integral = false;
    } else if (level > max_level) {
      max_level = level;
    }
  }

  if (integral) {
    std::vector<std::complex<double>> phase(static_cast<std::size_t>(max_level) + 1);
    for (std::size_t c = 0; c < phase.size(); ++c) {
      // Identical bits to the elementwise form: -values[b] == double(c).
      phase[c] = std::polar(1.0, static_cast<double>(c) * dt);
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(dim); ++b) {
      const auto c = static_cast<std::size_t>(-cost.values[static_cast<std::size_t>(b)]);
      state.amplitudes[static_cast<std::size_t>(b)] *= phase[c];
    }
  } else {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(dim); ++b) {
      state.amplitudes[static_cast<std::size_t>(b)] *=
          std::polar(1.0, -cost.values[static_cast<std::size_t>(b)] * dt);
    }
  }
}

void apply_mixer(StateVector& state, double beta, double dt) {
  check_dims("apply_mixer", state, state.n);
  check_dt("apply_mixer", dt);
  const double theta = beta * dt;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  auto* amps = state.amplitudes.data();
  const std::size_t pairs = state.amplitudes.size() >> 1;

  for (int q = 0; q < state.n; ++q) {
    const std::size_t mask = std::size_t{1} << q;
    const std::size_t lo_mask = mask - 1;
    const std::size_t hi_mask = ~lo_mask;

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pairs); ++i) {
      const std::size_t i0 = ((static_cast<std::size_t>(i) & hi_mask) << 1) |
                             (static_cast<std::size_t>(i) & lo_mask);
      const std::size_t i1 = i0 | mask;
      const std::complex<double> a = amps[i0];
      const std::complex<double> b = amps[i1];
      // exp(-i theta X): (a, b) -> (c a - i s b, -i s a + c b)
      amps[i0] = {c * a.real() + s * b.imag(), c * a.imag() - s * b.real()};
      amps[i1] = {s * a.imag() + c * b.real(), -s * a.real() + c * b.imag()};
    }
  }
}

double expected_cut(const StateVector& state, const CutDiagonal& cut) {
  check_dims("expected_cut", state, cut.n);
  const std::size_t dim = state.amplitudes.size();
  const std::size_t nblocks = block_count(dim);
  std::vector<double> partial(nblocks, 0.0);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(nblocks); ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kReduceBlock;
    const std::size_t hi = std::min(dim, lo + kReduceBlock);
    double sum = 0.0;
    for (std::size_t b = lo; b < hi; ++b) {
      sum += std::norm(state.amplitudes[b]) * static_cast<double>(cut.values[b]);
    }
    partial[static_cast<std::size_t>(blk)] = sum;
  }
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

double expected_cost(const StateVector& state, const CostDiagonal& cost) {
  check_dims("expected_cost", state, cost.n);
  const std::size_t dim = state.amplitudes.size();
  const std::size_t nblocks = block_count(dim);
  std::vector<double> partial(nblocks, 0.0);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(nblocks); ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kReduceBlock;
    const std::size_t hi = std::min(dim, lo + kReduceBlock);
    double sum = 0.0;
    for (std::size_t b = lo; b < hi; ++b) {
      sum += std::norm(state.amplitudes[b]) * cost.values[b];
    }
    partial[static_cast<std::size_t>(blk)] = sum;
  }
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

double measure_commutator(const StateVector& state, const CostDiagonal& cost) {
  check_dims("measure_commutator", state, cost.n);
  const std::size_t dim = state.amplitudes.size();
  const std::size_t nblocks = block_count(dim);
  std::vector<double> partial(nblocks, 0.0);
  const auto* amps = state.amplitudes.data();
  const int n = state.n;

  // Im <psi| H_M H_C |psi> accumulated per basis state: the transverse field
  // connects b to its n single-bit flips.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(nblocks); ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kReduceBlock;
    const std::size_t hi = std::min(dim, lo + kReduceBlock);
    double im = 0.0;
    for (std::size_t b = lo; b < hi; ++b) {
      const std::complex<double> a = amps[b];
      double acc = 0.0;
      for (int q = 0; q < n; ++q) {
        const std::size_t f = b ^ (std::size_t{1} << q);
        acc += cost.values[f] * (a.real() * amps[f].imag() - a.imag() * amps[f].real());
      }
      im += acc;
    }
    partial[static_cast<std::size_t>(blk)] = im;
  }
  return -2.0 * std::accumulate(partial.begin(), partial.end(), 0.0);
}

double norm_squared(const StateVector& state) {
  const std::size_t dim = state.amplitudes.size();
  const std::size_t nblocks = block_count(dim);
  std::vector<double> partial(nblocks, 0.0);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(nblocks); ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kReduceBlock;
    const std::size_t hi = std::min(dim, lo + kReduceBlock);
    double sum = 0.0;
    for (std::size_t b = lo; b < hi; ++b) {
      sum += std::norm(state.amplitudes[b]);
    }
    partial[static_cast<std::size_t>(blk)] = sum;
  }
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

}  // namespace falqon
