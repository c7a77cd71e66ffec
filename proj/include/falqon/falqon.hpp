#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "falqon/graph.hpp"
#include "falqon/state_vector.hpp"

namespace falqon {

// Single variants today; fields exist so alternatives slot in without
// changing file formats.
enum class MixerKind { TransverseFieldX };
enum class InitialStateKind { PlusState };

std::string mixer_name(MixerKind kind);
std::string initial_state_name(InitialStateKind kind);

struct FalqonConfig {
  double dt = 0.03;
  int layers = 300;
  double beta_init = 0.0;
  MixerKind mixer = MixerKind::TransverseFieldX;
  InitialStateKind initial_state = InitialStateKind::PlusState;
};

void validate_config(const FalqonConfig& cfg);

struct GraphProvenance {
  GraphFamily family = GraphFamily::Custom;
  int n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
};

GraphProvenance provenance_of(const Graph& g);

/// Per-layer record of one run. Entry k describes the state after layer k+1
/// (betas[k] is the gain applied in that layer, a_values[k] the commutator
/// expectation measured after it).
struct FalqonTrace {
  std::vector<double> betas;
  std::vector<double> a_values;
  std::vector<double> cost;
  std::vector<double> cut;
  std::vector<double> ratio;
  int optimum = 0;
  GraphProvenance graph;
};

/// Closed loop: beta_1 = cfg.beta_init, then beta_{k+1} = -A_k. Each layer
/// applies the cost phase first, then the mixer.
FalqonTrace run_falqon(const Graph& g, const FalqonConfig& cfg);

/// Open loop: the gains come from `betas` one-to-one per layer (cfg.layers
/// must equal betas.size()); A_k is still recorded but never fed back.
FalqonTrace replay_schedule(const Graph& g, std::span<const double> betas,
                            const FalqonConfig& cfg);

// Trace CSV: header "layer,beta,a_value,cost,cut,ratio", one row per layer,
// 17 significant digits for round-trip fidelity.
void write_trace_csv(const FalqonTrace& trace, std::ostream& out);
void write_trace_csv_file(const FalqonTrace& trace,
                          const std::filesystem::path& path);

/// Reads back the beta column of a trace CSV.
std::vector<double> read_betas_csv_file(const std::filesystem::path& path);

}  // namespace falqon
