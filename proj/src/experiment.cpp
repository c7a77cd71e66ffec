#include "falqon/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "falqon/numfmt.hpp"
#include "falqon/rng.hpp"
#include "falqon/version.hpp"

namespace falqon {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Cells that share a recipient configuration get the same seed block, so the
// same recipient graphs pair up across every donor.
constexpr std::uint64_t kRecipientSeedStride = 1000003;

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::istringstream vs(value);
  std::string item;
  while (std::getline(vs, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

bool near(double a, double b) { return std::abs(a - b) < 1e-9; }

std::string donor_label(GraphFamily family, int n, double p) {
  std::string label = family_name(family) + " n=" + std::to_string(n);
  if (family == GraphFamily::ErdosRenyi) {
    label += " p=" + format_shortest(p);
  }
  return label;
}

}  // namespace

void validate_grid(const SweepGrid& grid) {
  if (grid.donor_families.empty()) {
    throw std::invalid_argument("sweep grid: donor_families is empty");
  }
  if (grid.donor_sizes.empty()) {
    throw std::invalid_argument("sweep grid: donor_sizes is empty");
  }
  if (grid.recipient_families.empty()) {
    throw std::invalid_argument("sweep grid: recipient_families is empty");
  }
  if (grid.donor_seeds.empty()) {
    throw std::invalid_argument("sweep grid: donor_seeds is empty");
  }
  if (grid.recipients_count < 1) {
    throw std::invalid_argument("sweep grid: recipients_count must be >= 1");
  }
  for (const int n : grid.donor_sizes) {
    if (n != 8 && n != 10 && n != 12) {
      throw std::invalid_argument("sweep grid: donor sizes must come from {8, 10, 12}");
    }
  }
  const auto check_family = [](GraphFamily f, const char* where) {
    if (f == GraphFamily::Custom) {
      throw std::invalid_argument(std::string("sweep grid: ") + where +
                                  " must be '3reg' or 'er'");
    }
  };
  for (const GraphFamily f : grid.donor_families) check_family(f, "donor families");
  for (const GraphFamily f : grid.recipient_families) {
    check_family(f, "recipient families");
  }
  const bool er_donor =
      std::find(grid.donor_families.begin(), grid.donor_families.end(),
                GraphFamily::ErdosRenyi) != grid.donor_families.end();
  if (er_donor && grid.donor_ps.empty()) {
    throw std::invalid_argument("sweep grid: ER donors need donor_ps");
  }
  const bool er_recipient =
      std::find(grid.recipient_families.begin(), grid.recipient_families.end(),
                GraphFamily::ErdosRenyi) != grid.recipient_families.end();
  if (er_recipient && grid.recipient_ps.empty()) {
    throw std::invalid_argument("sweep grid: ER recipients need recipient_ps");
  }
  for (const double p : grid.donor_ps) {
    if (!(p > 0.0) || p > 1.0) {
      throw std::invalid_argument("sweep grid: donor p values must lie in (0, 1]");
    }
  }
  for (const double p : grid.recipient_ps) {
    if (!(p > 0.0) || p > 1.0) {
      throw std::invalid_argument("sweep grid: recipient p values must lie in (0, 1]");
    }
  }
  validate_config(grid.cfg);
}

std::vector<Cell> enumerate_cells(const SweepGrid& grid) {
  validate_grid(grid);

  std::vector<DonorSpec> donors;
  for (const GraphFamily family : grid.donor_families) {
    for (const int n : grid.donor_sizes) {
      if (family == GraphFamily::ErdosRenyi) {
        for (const double p : grid.donor_ps) {
          for (const std::uint64_t seed : grid.donor_seeds) {
            donors.push_back({family, n, p, seed});
          }
        }
      } else {
        for (const std::uint64_t seed : grid.donor_seeds) {
          donors.push_back({family, n, 0.0, seed});
        }
      }
    }
  }

  std::vector<RecipientSpec> recipients;
  for (const GraphFamily family : grid.recipient_families) {
    if (family == GraphFamily::ErdosRenyi) {
      for (const double p : grid.recipient_ps) {
        recipients.push_back({family, kRecipientVertices, p});
      }
    } else {
      recipients.push_back({family, kRecipientVertices, 0.0});
    }
  }

  std::vector<Cell> cells;
  cells.reserve(donors.size() * recipients.size());
  for (const DonorSpec& donor : donors) {
    for (std::size_t ri = 0; ri < recipients.size(); ++ri) {
      const RecipientSpec& recipient = recipients[ri];
      TransferSpec spec;
      spec.donor = donor;
      spec.recipient = recipient;
      spec.recipients_count = grid.recipients_count;
      spec.recipient_seed_base =
          grid.recipient_seed_base + kRecipientSeedStride * static_cast<std::uint64_t>(ri);
      spec.cfg = grid.cfg;

      std::string id = "d-" + family_name(donor.family) + "-n" + std::to_string(donor.n);
      if (donor.family == GraphFamily::ErdosRenyi) {
        id += "-p" + format_shortest(donor.p);
      }
      id += "-s" + std::to_string(donor.seed);
      id += "__r-" + family_name(recipient.family) + "-n" + std::to_string(recipient.n);
      if (recipient.family == GraphFamily::ErdosRenyi) {
        id += "-p" + format_shortest(recipient.p);
      }
      cells.push_back({std::move(id), spec});
    }
  }
  return cells;
}

SweepGrid parse_sweep_config(std::istream& in) {
  SweepGrid grid;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("sweep config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw std::invalid_argument("sweep config: duplicate key '" + key + "'");
    }

    if (key == "donor_families") {
      for (const auto& t : split_list(value)) grid.donor_families.push_back(family_from_name(t));
    } else if (key == "donor_sizes") {
      for (const auto& t : split_list(value)) grid.donor_sizes.push_back(parse_int(t));
    } else if (key == "donor_ps") {
      for (const auto& t : split_list(value)) grid.donor_ps.push_back(parse_double(t));
    } else if (key == "recipient_families") {
      for (const auto& t : split_list(value)) {
        grid.recipient_families.push_back(family_from_name(t));
      }
    } else if (key == "recipient_ps") {
      for (const auto& t : split_list(value)) grid.recipient_ps.push_back(parse_double(t));
    } else if (key == "recipients_count") {
      grid.recipients_count = parse_int(value);
    } else if (key == "donor_seeds") {
      for (const auto& t : split_list(value)) grid.donor_seeds.push_back(parse_u64(t));
    } else if (key == "recipient_seed_base") {
      grid.recipient_seed_base = parse_u64(value);
    } else if (key == "dt") {
      grid.cfg.dt = parse_double(value);
    } else if (key == "layers") {
      grid.cfg.layers = parse_int(value);
    } else if (key == "beta_init") {
      grid.cfg.beta_init = parse_double(value);
    } else {
      throw std::invalid_argument("sweep config: unknown key '" + key + "'");
    }
  }
  validate_grid(grid);
  return grid;
}

SweepGrid parse_sweep_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open sweep config '" + path.string() + "'");
  }
  return parse_sweep_config(in);
}

json grid_json(const SweepGrid& grid) {
  json donor_families = json::array();
  for (const GraphFamily f : grid.donor_families) donor_families.push_back(family_name(f));
  json recipient_families = json::array();
  for (const GraphFamily f : grid.recipient_families) {
    recipient_families.push_back(family_name(f));
  }
  return json{
      {"donor_families", donor_families},
      {"donor_sizes", grid.donor_sizes},
      {"donor_ps", grid.donor_ps},
      {"recipient_families", recipient_families},
      {"recipient_ps", grid.recipient_ps},
      {"recipients_count", grid.recipients_count},
      {"donor_seeds", grid.donor_seeds},
      {"recipient_seed_base", grid.recipient_seed_base},
      {"dt", grid.cfg.dt},
      {"layers", grid.cfg.layers},
      {"beta_init", grid.cfg.beta_init},
      {"mixer", mixer_name(grid.cfg.mixer)},
      {"initial_state", initial_state_name(grid.cfg.initial_state)},
  };
}

SweepGrid grid_from_json(const json& j) {
  SweepGrid grid;
  for (const auto& t : j.at("donor_families")) {
    grid.donor_families.push_back(family_from_name(t.get<std::string>()));
  }
  grid.donor_sizes = j.at("donor_sizes").get<std::vector<int>>();
  grid.donor_ps = j.at("donor_ps").get<std::vector<double>>();
  for (const auto& t : j.at("recipient_families")) {
    grid.recipient_families.push_back(family_from_name(t.get<std::string>()));
  }
  grid.recipient_ps = j.at("recipient_ps").get<std::vector<double>>();
  grid.recipients_count = j.at("recipients_count").get<int>();
  grid.donor_seeds = j.at("donor_seeds").get<std::vector<std::uint64_t>>();
  grid.recipient_seed_base = j.at("recipient_seed_base").get<std::uint64_t>();
  grid.cfg.dt = j.at("dt").get<double>();
  grid.cfg.layers = j.at("layers").get<int>();
  grid.cfg.beta_init = j.at("beta_init").get<double>();
  return grid;
}

json manifest_json(const RunManifest& manifest) {
  json cells = json::array();
  for (const CellStatus& c : manifest.cells) {
    cells.push_back(json{{"id", c.id}, {"dir", c.dir}, {"status", c.status}, {"error", c.error}});
  }
  return json{
      {"grid", grid_json(manifest.grid)},
      {"cells", cells},
      {"rng", manifest.rng_name},
      {"version", manifest.version},
      {"started_at", manifest.started_at},
      {"finished_at", manifest.finished_at},
  };
}

RunManifest manifest_from_json(const json& j) {
  RunManifest manifest;
  manifest.grid = grid_from_json(j.at("grid"));
  for (const auto& c : j.at("cells")) {
    manifest.cells.push_back({c.at("id").get<std::string>(), c.at("dir").get<std::string>(),
                              c.at("status").get<std::string>(),
                              c.at("error").get<std::string>()});
  }
  manifest.rng_name = j.at("rng").get<std::string>();
  manifest.version = j.at("version").get<std::string>();
  manifest.started_at = j.at("started_at").get<std::string>();
  manifest.finished_at = j.at("finished_at").get<std::string>();
  return manifest;
}

namespace {

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "'");
  }
  return json::parse(in);
}

/// A cell output counts as valid only if its result.json echoes this spec.
bool cell_output_valid(const fs::path& cell_dir, const TransferSpec& spec) {
  const fs::path result_path = cell_dir / "result.json";
  if (!fs::exists(result_path)) return false;
  try {
    const json j = read_json_file(result_path);
    return j.at("spec") == transfer_spec_json(spec);
  } catch (const std::exception&) {
    return false;
  }
}

void write_cell_outputs(const fs::path& cells_dir, const std::string& id,
                        const TransferResult& result) {
  // Assemble under a temp name, then rename; a crash never leaves a
  // directory that the idempotence check would accept.
  const fs::path tmp_dir = cells_dir / ("." + id + ".tmp");
  const fs::path final_dir = cells_dir / id;
  fs::remove_all(tmp_dir);
  fs::create_directories(tmp_dir);

  write_trace_csv_file(result.donor_trace, tmp_dir / "donor_trace.csv");
  for (std::size_t k = 0; k < result.recipient_traces.size(); ++k) {
    write_trace_csv_file(result.recipient_traces[k],
                         tmp_dir / ("recipient_" + std::to_string(k) + ".csv"));
  }
  write_text_file(tmp_dir / "result.json",
                  transfer_result_json(result, "donor_trace.csv").dump(2) + "\n");

  fs::remove_all(final_dir);
  fs::rename(tmp_dir, final_dir);
}

}  // namespace

RunManifest run_sweep(const SweepGrid& grid, const fs::path& out_dir, int workers,
                      bool force) {
  if (workers < 1) {
    throw std::invalid_argument("run_sweep: workers must be >= 1");
  }
  const std::vector<Cell> cells = enumerate_cells(grid);

  const fs::path cells_dir = out_dir / "cells";
  fs::create_directories(cells_dir);

  RunManifest manifest;
  manifest.grid = grid;
  manifest.rng_name = kRngName;
  manifest.version = kVersion;
  manifest.started_at = utc_now();
  manifest.cells.resize(cells.size());

#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cells.size()); ++i) {
    const Cell& cell = cells[static_cast<std::size_t>(i)];
    CellStatus status;
    status.id = cell.id;
    status.dir = "cells/" + cell.id;
    try {
      if (!force && cell_output_valid(cells_dir / cell.id, cell.spec)) {
        status.status = "skipped";
      } else {
        const TransferResult result = run_transfer(cell.spec);
        write_cell_outputs(cells_dir, cell.id, result);
        status.status = "done";
      }
    } catch (const std::exception& e) {
      status.status = "failed";
      status.error = e.what();
    }
    manifest.cells[static_cast<std::size_t>(i)] = std::move(status);
  }

  manifest.finished_at = utc_now();
  write_text_file(out_dir / "manifest.json", manifest_json(manifest).dump(2) + "\n");
  return manifest;
}

namespace {

struct CellData {
  TransferSpec spec;
  double donor_final_ratio = 0.0;
  std::vector<double> recipient_finals;
};

struct PooledStats {
  double mean = 0.0;
  double stddev = 0.0;
};

PooledStats pool(const std::vector<double>& xs) {
  PooledStats s;
  for (const double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (const double x : xs) {
      const double d = x - s.mean;
      ss += d * d;
    }
    s.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

/// Reported final ratios for dense recipients.
double dense_target(double recipient_p) {
  if (near(recipient_p, 0.8)) return 0.95;
  if (near(recipient_p, 0.9)) return 0.96;
  if (near(recipient_p, 1.0)) return 0.98;
  return 0.0;
}

}  // namespace

Findings summarize_findings(const fs::path& out_dir) {
  const RunManifest manifest = manifest_from_json(read_json_file(out_dir / "manifest.json"));

  std::vector<CellData> data;
  std::vector<std::string> missing;
  for (const CellStatus& status : manifest.cells) {
    if (status.status == "failed") {
      missing.push_back(status.id);
      continue;
    }
    const fs::path result_path = out_dir / status.dir / "result.json";
    if (!fs::exists(result_path)) {
      missing.push_back(status.id);
      continue;
    }
    const json j = read_json_file(result_path);
    CellData cell;
    cell.spec = transfer_spec_from_json(j.at("spec"));
    cell.donor_final_ratio = j.at("donor_final_ratio").get<double>();
    cell.recipient_finals = j.at("recipient_final_ratios").get<std::vector<double>>();
    data.push_back(std::move(cell));
  }
  if (!missing.empty()) {
    std::string msg = "summarize_findings: missing cells:";
    for (const std::string& id : missing) msg += " " + id;
    throw std::runtime_error(msg);
  }

  Findings findings;

  // Donor group key: (family, n, p); cells pool recipient finals over donor
  // seeds, donor references average over seeds.
  using DonorKey = std::tuple<GraphFamily, int, double>;

  // (1) Dense ER recipients.
  {
    std::map<std::pair<DonorKey, double>, std::vector<double>> finals;
    for (const CellData& cell : data) {
      if (cell.spec.recipient.family != GraphFamily::ErdosRenyi) continue;
      const double rp = cell.spec.recipient.p;
      if (dense_target(rp) == 0.0) continue;
      const DonorKey key{cell.spec.donor.family, cell.spec.donor.n, cell.spec.donor.p};
      auto& xs = finals[{key, rp}];
      xs.insert(xs.end(), cell.recipient_finals.begin(), cell.recipient_finals.end());
    }
    for (const auto& [key, xs] : finals) {
      const auto& [donor, rp] = key;
      const PooledStats s = pool(xs);
      findings.dense.push_back({std::get<0>(donor), std::get<1>(donor), std::get<2>(donor),
                                rp, dense_target(rp), s.mean, s.stddev});
    }
  }

  // (2) Sparse recipients from 3-regular donors.
  {
    std::map<std::pair<int, double>, std::vector<double>> finals;
    std::map<std::pair<int, double>, std::vector<double>> refs;
    for (const CellData& cell : data) {
      if (cell.spec.donor.family != GraphFamily::ThreeRegular) continue;
      if (cell.spec.recipient.family != GraphFamily::ErdosRenyi) continue;
      const double rp = cell.spec.recipient.p;
      if (!near(rp, 0.2) && !near(rp, 0.3) && !near(rp, 0.4)) continue;
      const std::pair<int, double> key{cell.spec.donor.n, rp};
      auto& xs = finals[key];
      xs.insert(xs.end(), cell.recipient_finals.begin(), cell.recipient_finals.end());
      refs[key].push_back(cell.donor_final_ratio);
    }
    std::map<int, std::map<double, double>> gaps;
    for (const auto& [key, xs] : finals) {
      const auto& [donor_n, rp] = key;
      const double transferred = pool(xs).mean;
      const double donor_ref = pool(refs[key]).mean;
      const double gap = donor_ref - transferred;
      findings.sparse.push_back({donor_n, rp, donor_ref, transferred, gap});
      gaps[donor_n][rp] = gap;
    }
    for (const auto& [donor_n, by_p] : gaps) {
      if (by_p.size() == 3) {
        auto it = by_p.begin();
        const double g2 = it->second;
        const double g3 = (++it)->second;
        const double g4 = (++it)->second;
        findings.sparse_gap_narrows.push_back({donor_n, g2 > g3 && g3 > g4});
      }
    }
  }

  // (3) Donor-size resilience at recipient ER p = 0.5; ER donors restricted
  // to p = 0.5.
  {
    std::map<std::pair<GraphFamily, int>, std::vector<double>> finals;
    for (const CellData& cell : data) {
      if (cell.spec.recipient.family != GraphFamily::ErdosRenyi) continue;
      if (!near(cell.spec.recipient.p, 0.5)) continue;
      const GraphFamily df = cell.spec.donor.family;
      if (df == GraphFamily::ErdosRenyi && !near(cell.spec.donor.p, 0.5)) continue;
      auto& xs = finals[{df, cell.spec.donor.n}];
      xs.insert(xs.end(), cell.recipient_finals.begin(), cell.recipient_finals.end());
    }
    std::map<GraphFamily, std::vector<ResilienceRow>> by_family;
    for (const auto& [key, xs] : finals) {
      const auto& [family, donor_n] = key;
      const PooledStats s = pool(xs);
      const double donor_p = family == GraphFamily::ErdosRenyi ? 0.5 : 0.0;
      const ResilienceRow row{family, donor_p, donor_n, s.mean, s.stddev};
      findings.resilience.push_back(row);
      by_family[family].push_back(row);
    }
    for (const auto& [family, rows] : by_family) {
      if (rows.size() < 2) continue;
      bool overlap = true;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
          const double lo = std::max(rows[i].final_mean - rows[i].final_std,
                                     rows[j].final_mean - rows[j].final_std);
          const double hi = std::min(rows[i].final_mean + rows[i].final_std,
                                     rows[j].final_mean + rows[j].final_std);
          if (lo > hi) overlap = false;
        }
      }
      findings.resilience_overlap.push_back({family, overlap});
    }
  }

  return findings;
}

std::string findings_text(const Findings& findings) {
  std::ostringstream out;
  char buf[256];

  out << "== Dense ER recipients (final mean +- std vs reported target) ==\n";
  if (findings.dense.empty()) {
    out << "(no cells with recipient p in {0.8, 0.9, 1.0})\n";
  } else {
    out << "donor                 rec_p   target   final_mean     final_std\n";
    for (const DenseRecipientRow& row : findings.dense) {
      std::snprintf(buf, sizeof(buf), "%-20s  %-5s   %-6s   %-12.12g  %-12.12g\n",
                    donor_label(row.donor_family, row.donor_n, row.donor_p).c_str(),
                    format_shortest(row.recipient_p).c_str(),
                    format_shortest(row.target).c_str(), row.final_mean, row.final_std);
      out << buf;
    }
  }

  out << "\n== Sparse ER recipients from 3-regular donors ==\n";
  if (findings.sparse.empty()) {
    out << "(no 3-regular donor cells with recipient p in {0.2, 0.3, 0.4})\n";
  } else {
    out << "donor_n  rec_p   donor_ref     transferred   gap\n";
    for (const SparseCrossFamilyRow& row : findings.sparse) {
      std::snprintf(buf, sizeof(buf), "%-7d  %-5s   %-12.12g  %-12.12g  %-12.12g\n",
                    row.donor_n, format_shortest(row.recipient_p).c_str(),
                    row.donor_reference, row.transferred_mean, row.gap);
      out << buf;
    }
    for (const GapNarrowsFlag& flag : findings.sparse_gap_narrows) {
      std::snprintf(buf, sizeof(buf),
                    "gap narrows with density (donor n=%d): %s\n", flag.donor_n,
                    flag.narrows ? "true" : "false");
      out << buf;
    }
  }

  out << "\n== Donor-size resilience (recipients ER p=0.5) ==\n";
  if (findings.resilience.empty()) {
    out << "(no cells with recipient p = 0.5)\n";
  } else {
    out << "donor family  donor_n  final_mean     final_std\n";
    for (const ResilienceRow& row : findings.resilience) {
      std::string family = family_name(row.donor_family);
      if (row.donor_family == GraphFamily::ErdosRenyi) {
        family += " p=" + format_shortest(row.donor_p);
      }
      std::snprintf(buf, sizeof(buf), "%-12s  %-7d  %-12.12g  %-12.12g\n", family.c_str(),
                    row.donor_n, row.final_mean, row.final_std);
      out << buf;
    }
    for (const OverlapFlag& flag : findings.resilience_overlap) {
      std::snprintf(buf, sizeof(buf), "intervals overlap (%s donors): %s\n",
                    family_name(flag.donor_family).c_str(),
                    flag.overlap ? "true" : "false");
      out << buf;
    }
  }
  return out.str();
}

json findings_json(const Findings& findings) {
  json dense = json::array();
  for (const DenseRecipientRow& row : findings.dense) {
    dense.push_back(json{{"donor_family", family_name(row.donor_family)},
                         {"donor_n", row.donor_n},
                         {"donor_p", row.donor_p},
                         {"recipient_p", row.recipient_p},
                         {"target", row.target},
                         {"final_mean", row.final_mean},
                         {"final_std", row.final_std}});
  }
  json sparse = json::array();
  for (const SparseCrossFamilyRow& row : findings.sparse) {
    sparse.push_back(json{{"donor_n", row.donor_n},
                          {"recipient_p", row.recipient_p},
                          {"donor_reference", row.donor_reference},
                          {"transferred_mean", row.transferred_mean},
                          {"gap", row.gap}});
  }
  json narrows = json::array();
  for (const GapNarrowsFlag& flag : findings.sparse_gap_narrows) {
    narrows.push_back(json{{"donor_n", flag.donor_n}, {"narrows", flag.narrows}});
  }
  json resilience = json::array();
  for (const ResilienceRow& row : findings.resilience) {
    resilience.push_back(json{{"donor_family", family_name(row.donor_family)},
                              {"donor_p", row.donor_p},
                              {"donor_n", row.donor_n},
                              {"final_mean", row.final_mean},
                              {"final_std", row.final_std}});
  }
  json overlap = json::array();
  for (const OverlapFlag& flag : findings.resilience_overlap) {
    overlap.push_back(json{{"donor_family", family_name(flag.donor_family)},
                           {"overlap", flag.overlap}});
  }
  return json{{"dense_recipients", dense},
              {"sparse_cross_family", json{{"rows", sparse}, {"gap_narrows", narrows}}},
              {"donor_size_resilience", json{{"rows", resilience}, {"overlap", overlap}}}};
}

}  // namespace falqon
