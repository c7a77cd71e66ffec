#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "falqon/transfer.hpp"

namespace falqon {

/// Recipient size is a grid-level constant.
inline constexpr int kRecipientVertices = 14;

struct SweepGrid {
  std::vector<GraphFamily> donor_families;
  std::vector<int> donor_sizes;     // subset of {8, 10, 12}
  std::vector<double> donor_ps;     // ErdosRenyi donors only
  std::vector<GraphFamily> recipient_families;
  std::vector<double> recipient_ps;  // ErdosRenyi recipients only
  int recipients_count = 10;
  std::vector<std::uint64_t> donor_seeds;
  std::uint64_t recipient_seed_base = 0;
  FalqonConfig cfg;
};

void validate_grid(const SweepGrid& grid);

struct Cell {
  std::string id;
  TransferSpec spec;
};

/// Valid Cartesian product of donor and recipient configurations, in a fixed
/// order. Cells sharing a recipient configuration share recipient seeds, so
/// donor comparisons are paired over identical recipient graphs.
std::vector<Cell> enumerate_cells(const SweepGrid& grid);

struct CellStatus {
  std::string id;
  std::string dir;     // relative to the sweep output directory
  std::string status;  // "done", "skipped" (valid output existed), "failed"
  std::string error;   // non-empty for failed cells
};

struct RunManifest {
  SweepGrid grid;
  std::vector<CellStatus> cells;
  std::string rng_name;
  std::string version;
  std::string started_at;
  std::string finished_at;
};

// Sweep config: line-based "key = value" text mirroring the grid fields;
// comma-separated lists, '#' comments, unknown keys rejected.
SweepGrid parse_sweep_config(std::istream& in);
SweepGrid parse_sweep_config_file(const std::filesystem::path& path);

/// Runs every cell, writing <out>/cells/<id>/{result.json, donor_trace.csv,
/// recipient_<k>.csv} atomically plus <out>/manifest.json. Cells with valid
/// existing outputs are skipped unless force; per-cell failures are recorded
/// without aborting the sweep.
RunManifest run_sweep(const SweepGrid& grid, const std::filesystem::path& out_dir,
                      int workers = 1, bool force = false);

nlohmann::json grid_json(const SweepGrid& grid);
SweepGrid grid_from_json(const nlohmann::json& j);
nlohmann::json manifest_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& j);

struct DenseRecipientRow {
  GraphFamily donor_family = GraphFamily::ErdosRenyi;
  int donor_n = 0;
  double donor_p = 0.0;
  double recipient_p = 0.0;
  double target = 0.0;  // reported final ratio for this recipient density
  double final_mean = 0.0;
  double final_std = 0.0;
};

struct SparseCrossFamilyRow {
  int donor_n = 0;
  double recipient_p = 0.0;
  double donor_reference = 0.0;    // donor-side final ratio
  double transferred_mean = 0.0;
  double gap = 0.0;                // donor_reference - transferred_mean
};

struct ResilienceRow {
  GraphFamily donor_family = GraphFamily::ErdosRenyi;
  double donor_p = 0.0;
  int donor_n = 0;
  double final_mean = 0.0;
  double final_std = 0.0;
};

struct GapNarrowsFlag {
  int donor_n = 0;
  bool narrows = false;  // gap(0.2) > gap(0.3) > gap(0.4)
};

struct OverlapFlag {
  GraphFamily donor_family = GraphFamily::ErdosRenyi;
  bool overlap = false;  // mean +- std intervals pairwise intersect
};

struct Findings {
  std::vector<DenseRecipientRow> dense;
  std::vector<SparseCrossFamilyRow> sparse;
  std::vector<GapNarrowsFlag> sparse_gap_narrows;
  std::vector<ResilienceRow> resilience;
  std::vector<OverlapFlag> resilience_overlap;
};

/// Recomputes the three summary tables from the per-cell result files.
/// Throws listing absent cells if any manifest cell lacks a valid result.
Findings summarize_findings(const std::filesystem::path& out_dir);

std::string findings_text(const Findings& findings);
nlohmann::json findings_json(const Findings& findings);

}  // namespace falqon
