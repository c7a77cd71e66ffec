#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "falqon/falqon.hpp"

namespace falqon {

struct DonorSpec {
  GraphFamily family = GraphFamily::ErdosRenyi;
  int n = 8;
  double p = 0.0;  // ErdosRenyi only
  std::uint64_t seed = 0;
};

struct RecipientSpec {
  GraphFamily family = GraphFamily::ErdosRenyi;
  int n = 14;
  double p = 0.0;  // ErdosRenyi only
};

struct TransferSpec {
  DonorSpec donor;
  RecipientSpec recipient;
  int recipients_count = 10;
  std::uint64_t recipient_seed_base = 0;
  FalqonConfig cfg;  // shared by donor and recipients (strict 1:1 mapping)
};

struct TransferResult {
  TransferSpec spec;
  FalqonTrace donor_trace;
  std::vector<FalqonTrace> recipient_traces;
  std::vector<double> mean_ratio;  // per-layer mean over recipients
  std::vector<double> std_ratio;   // per-layer sample std (N-1 divisor)
  double final_mean = 0.0;
  double final_std = 0.0;
};

Graph generate_graph(GraphFamily family, int n, double p, std::uint64_t seed);

/// Trains closed-loop on the donor, replays its schedule on
/// recipients_count graphs seeded recipient_seed_base + k, and aggregates
/// the per-layer ratio statistics. Deterministic given the spec.
TransferResult run_transfer(const TransferSpec& spec);

struct DonorSizeEntry {
  int donor_n = 0;
  double final_mean = 0.0;
  double final_std = 0.0;
};

struct DonorSizeSummary {
  std::vector<DonorSizeEntry> entries;  // sorted by donor_n
  bool intervals_overlap = false;       // [mean-std, mean+std] pairwise
};

/// Requires every result to target the same recipient spec and config.
DonorSizeSummary aggregate_by_donor_size(std::span<const TransferResult> results);

nlohmann::json transfer_spec_json(const TransferSpec& spec);
TransferSpec transfer_spec_from_json(const nlohmann::json& j);

/// Result JSON: spec echo, donor trace path, per-recipient final ratios,
/// mean/std trajectories, final statistics.
nlohmann::json transfer_result_json(const TransferResult& result,
                                    const std::string& donor_trace_path);

}  // namespace falqon
