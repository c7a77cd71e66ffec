// fqt: FALQON Max-Cut simulator and parameter-transfer harness.
//
// Subcommands: gen-graph, maxcut, falqon, replay, transfer, sweep, report.
// Exit codes: 0 success, 1 domain/runtime error, 2 usage error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"

#include "falqon/experiment.hpp"
#include "falqon/numfmt.hpp"
#include "falqon/version.hpp"

namespace fs = std::filesystem;

namespace {

falqon::GraphFamily parse_family(const std::string& name) {
  const falqon::GraphFamily family = falqon::family_from_name(name);
  if (family == falqon::GraphFamily::Custom) {
    throw std::invalid_argument("family must be 'er' or '3reg'");
  }
  return family;
}

void write_json_file(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

void add_gen_graph(CLI::App& app) {
  auto* cmd = app.add_subcommand("gen-graph", "Generate a random graph instance");
  auto family = std::make_shared<std::string>();
  auto n = std::make_shared<int>(0);
  auto p = std::make_shared<double>(0.0);
  auto seed = std::make_shared<std::uint64_t>(0);
  auto out = std::make_shared<std::string>();
  cmd->add_option("--family", *family, "Graph family: er or 3reg")->required();
  cmd->add_option("--n", *n, "Vertex count")->required();
  cmd->add_option("--p", *p, "Edge probability (er only)");
  cmd->add_option("--seed", *seed, "RNG seed")->required();
  cmd->add_option("--out", *out, "Output edge-list path")->required();
  cmd->callback([=]() {
    const falqon::Graph g = falqon::generate_graph(parse_family(*family), *n, *p, *seed);
    falqon::write_graph_file(g, *out);
  });
}

void add_maxcut(CLI::App& app) {
  auto* cmd = app.add_subcommand("maxcut", "Exact Max-Cut by brute force");
  auto graph_path = std::make_shared<std::string>();
  cmd->add_option("--graph", *graph_path, "Edge-list file")->required();
  cmd->callback([=]() {
    const falqon::Graph g = falqon::read_graph_file(*graph_path);
    const falqon::MaxCutSolution sol = falqon::max_cut_brute_force(g);
    std::cout << "optimum=" << sol.optimum
              << " witness=" << falqon::assignment_bits(sol.witness, g.n) << '\n';
  });
}

void add_falqon(CLI::App& app) {
  auto* cmd = app.add_subcommand("falqon", "Closed-loop feedback run on one graph");
  auto graph_path = std::make_shared<std::string>();
  auto cfg = std::make_shared<falqon::FalqonConfig>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--graph", *graph_path, "Edge-list file")->required();
  cmd->add_option("--dt", cfg->dt, "Layer time step")->capture_default_str();
  cmd->add_option("--layers", cfg->layers, "Number of layers")->capture_default_str();
  cmd->add_option("--beta-init", cfg->beta_init, "Gain for the first layer")
      ->capture_default_str();
  cmd->add_option("--out", *out, "Output trace CSV path")->required();
  cmd->callback([=]() {
    const falqon::Graph g = falqon::read_graph_file(*graph_path);
    const falqon::FalqonTrace trace = falqon::run_falqon(g, *cfg);
    falqon::write_trace_csv_file(trace, *out);
    std::cout << "layers=" << cfg->layers << " optimum=" << trace.optimum
              << " final_ratio=" << falqon::format_sig(trace.ratio.back(), 12) << '\n';
  });
}

void add_replay(CLI::App& app) {
  auto* cmd = app.add_subcommand("replay", "Replay a fixed gain schedule on a graph");
  auto graph_path = std::make_shared<std::string>();
  auto betas_path = std::make_shared<std::string>();
  auto dt = std::make_shared<double>(falqon::FalqonConfig{}.dt);
  auto out = std::make_shared<std::string>();
  cmd->add_option("--graph", *graph_path, "Edge-list file")->required();
  cmd->add_option("--betas", *betas_path, "Trace CSV providing the beta column")
      ->required();
  cmd->add_option("--dt", *dt, "Layer time step (must match the donor run)")
      ->capture_default_str();
  cmd->add_option("--out", *out, "Output trace CSV path")->required();
  cmd->callback([=]() {
    const falqon::Graph g = falqon::read_graph_file(*graph_path);
    const std::vector<double> betas = falqon::read_betas_csv_file(*betas_path);
    falqon::FalqonConfig cfg;
    cfg.dt = *dt;
    cfg.layers = static_cast<int>(betas.size());
    const falqon::FalqonTrace trace = falqon::replay_schedule(g, betas, cfg);
    falqon::write_trace_csv_file(trace, *out);
    std::cout << "layers=" << cfg.layers << " optimum=" << trace.optimum
              << " final_ratio=" << falqon::format_sig(trace.ratio.back(), 12) << '\n';
  });
}

void add_transfer(CLI::App& app) {
  auto* cmd = app.add_subcommand("transfer", "Donor -> recipients transfer experiment");
  auto spec = std::make_shared<falqon::TransferSpec>();
  auto donor_family = std::make_shared<std::string>();
  auto recipient_family = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--donor-family", *donor_family, "er or 3reg")->required();
  cmd->add_option("--donor-n", spec->donor.n, "Donor vertex count")->capture_default_str();
  cmd->add_option("--donor-p", spec->donor.p, "Donor edge probability (er only)");
  cmd->add_option("--donor-seed", spec->donor.seed, "Donor graph seed")->required();
  cmd->add_option("--recipient-family", *recipient_family, "er or 3reg")->required();
  cmd->add_option("--recipient-n", spec->recipient.n, "Recipient vertex count")
      ->capture_default_str();
  cmd->add_option("--recipient-p", spec->recipient.p,
                  "Recipient edge probability (er only)");
  cmd->add_option("--recipients", spec->recipients_count, "Number of recipient graphs")
      ->capture_default_str();
  cmd->add_option("--recipient-seed-base", spec->recipient_seed_base,
                  "Recipient k uses seed base + k")
      ->required();
  cmd->add_option("--dt", spec->cfg.dt, "Layer time step")->capture_default_str();
  cmd->add_option("--layers", spec->cfg.layers, "Number of layers")->capture_default_str();
  cmd->add_option("--beta-init", spec->cfg.beta_init, "Gain for the first layer")
      ->capture_default_str();
  cmd->add_option("--out", *out, "Output directory")->required();
  cmd->callback([=]() {
    spec->donor.family = parse_family(*donor_family);
    spec->recipient.family = parse_family(*recipient_family);
    const falqon::TransferResult result = falqon::run_transfer(*spec);

    const fs::path dir(*out);
    fs::create_directories(dir);
    falqon::write_trace_csv_file(result.donor_trace, dir / "donor_trace.csv");
    for (std::size_t k = 0; k < result.recipient_traces.size(); ++k) {
      falqon::write_trace_csv_file(result.recipient_traces[k],
                                   dir / ("recipient_" + std::to_string(k) + ".csv"));
    }
    write_json_file(dir / "result.json",
                    falqon::transfer_result_json(result, "donor_trace.csv"));
    std::cout << "final_mean=" << falqon::format_sig(result.final_mean, 12)
              << " final_std=" << falqon::format_sig(result.final_std, 12) << '\n';
  });
}

void add_sweep(CLI::App& app) {
  auto* cmd = app.add_subcommand("sweep", "Run every cell of a transfer grid");
  auto config_path = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto workers = std::make_shared<int>(omp_get_max_threads());
  auto force = std::make_shared<bool>(false);
  cmd->add_option("--config", *config_path, "Sweep config file")->required();
  cmd->add_option("--out", *out, "Output directory")->required();
  cmd->add_option("--workers", *workers, "Concurrent cells")->capture_default_str();
  cmd->add_flag("--force", *force, "Re-run cells with existing outputs");
  cmd->callback([=]() {
    const falqon::SweepGrid grid = falqon::parse_sweep_config_file(*config_path);
    const falqon::RunManifest manifest = falqon::run_sweep(grid, *out, *workers, *force);
    int done = 0, skipped = 0, failed = 0;
    for (const falqon::CellStatus& c : manifest.cells) {
      if (c.status == "done") ++done;
      if (c.status == "skipped") ++skipped;
      if (c.status == "failed") ++failed;
    }
    std::cout << "cells=" << manifest.cells.size() << " done=" << done
              << " skipped=" << skipped << " failed=" << failed << '\n';
    if (failed > 0) {
      throw std::runtime_error("sweep finished with failed cells (see manifest.json)");
    }
  });
}

void add_report(CLI::App& app) {
  auto* cmd = app.add_subcommand("report", "Summary tables from a finished sweep");
  auto out_dir = std::make_shared<std::string>();
  cmd->add_option("--out", *out_dir, "Sweep output directory")->required();
  cmd->callback([=]() {
    const falqon::Findings findings = falqon::summarize_findings(*out_dir);
    std::cout << falqon::findings_text(findings);
    write_json_file(fs::path(*out_dir) / "findings.json", falqon::findings_json(findings));
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FALQON Max-Cut simulator and parameter-transfer harness"};
  app.set_version_flag("--version", falqon::kVersion);
  app.require_subcommand(1);

  add_gen_graph(app);
  add_maxcut(app);
  add_falqon(app);
  add_replay(app);
  add_transfer(app);
  add_sweep(app);
  add_report(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
