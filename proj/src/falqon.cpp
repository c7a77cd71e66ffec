#include "falqon/falqon.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "falqon/numfmt.hpp"

namespace falqon {

std::string mixer_name(MixerKind kind) {
  switch (kind) {
    case MixerKind::TransverseFieldX: return "transverse-field-x";
  }
  throw std::invalid_argument("mixer_name: unknown mixer");
}

std::string initial_state_name(InitialStateKind kind) {
  switch (kind) {
    case InitialStateKind::PlusState: return "plus";
  }
  throw std::invalid_argument("initial_state_name: unknown initial state");
}

void validate_config(const FalqonConfig& cfg) {
  if (!(cfg.dt > 0.0)) {
    throw std::invalid_argument("falqon config: dt must be positive");
  }
  if (cfg.layers < 1) {
    throw std::invalid_argument("falqon config: need at least one layer");
  }
}

GraphProvenance provenance_of(const Graph& g) {
  return GraphProvenance{g.family, g.n, g.edge_probability, g.seed};
}

namespace {

// Closed loop and replay share one layer loop; a non-empty schedule switches
// the gain source from feedback to the given sequence.
FalqonTrace run_layers(const Graph& g, const FalqonConfig& cfg,
                       std::span<const double> schedule) {
  validate_config(cfg);
  validate_graph(g);

  const CutDiagonal cut = build_cut_diagonal(g);
  const CostDiagonal cost = build_cost_diagonal(g);
  const int optimum = max_cut_brute_force(g).optimum;

  FalqonTrace trace;
  trace.optimum = optimum;
  trace.graph = provenance_of(g);
  trace.betas.reserve(cfg.layers);
  trace.a_values.reserve(cfg.layers);
  trace.cost.reserve(cfg.layers);
  trace.cut.reserve(cfg.layers);
  trace.ratio.reserve(cfg.layers);

  StateVector state = init_plus_state(g.n);
  double beta = cfg.beta_init;
  for (int k = 0; k < cfg.layers; ++k) {
    if (!schedule.empty()) {
      beta = schedule[static_cast<std::size_t>(k)];
    }
    apply_cost_phase(state, cost, cfg.dt);
    apply_mixer(state, beta, cfg.dt);

    const double a = measure_commutator(state, cost);
    const double v = expected_cost(state, cost);
    const double c = expected_cut(state, cut);
    trace.betas.push_back(beta);
    trace.a_values.push_back(a);
    trace.cost.push_back(v);
    trace.cut.push_back(c);
    trace.ratio.push_back(c / optimum);

    beta = -a;  // feedback law; overwritten next layer when replaying
  }
  return trace;
}

}  // namespace

FalqonTrace run_falqon(const Graph& g, const FalqonConfig& cfg) {
  return run_layers(g, cfg, {});
}

FalqonTrace replay_schedule(const Graph& g, std::span<const double> betas,
                            const FalqonConfig& cfg) {
  if (betas.empty()) {
    throw std::invalid_argument("replay_schedule: empty schedule");
  }
  if (static_cast<std::size_t>(cfg.layers) != betas.size()) {
    throw std::invalid_argument("replay_schedule: cfg.layers = " +
                                std::to_string(cfg.layers) + " but schedule has " +
                                std::to_string(betas.size()) + " gains");
  }
  return run_layers(g, cfg, betas);
}

void write_trace_csv(const FalqonTrace& trace, std::ostream& out) {
  out << "layer,beta,a_value,cost,cut,ratio\n";
  char buf[160];
  for (std::size_t k = 0; k < trace.betas.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", k + 1,
                  trace.betas[k], trace.a_values[k], trace.cost[k], trace.cut[k],
                  trace.ratio[k]);
    out << buf;
  }
}

void write_trace_csv_file(const FalqonTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  write_trace_csv(trace, out);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

std::vector<double> read_betas_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open trace file '" + path.string() + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("trace file '" + path.string() + "': missing header");
  }

  // Locate the beta column by name rather than position.
  int beta_col = -1;
  {
    std::istringstream hs(line);
    std::string col;
    for (int idx = 0; std::getline(hs, col, ','); ++idx) {
      if (col == "beta") beta_col = idx;
    }
  }
  if (beta_col < 0) {
    throw std::runtime_error("trace file '" + path.string() + "': no beta column");
  }

  std::vector<double> betas;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::string beta_text;
    for (int idx = 0; std::getline(ls, field, ','); ++idx) {
      if (idx == beta_col) beta_text = field;
    }
    betas.push_back(parse_double(beta_text));
  }
  if (betas.empty()) {
    throw std::runtime_error("trace file '" + path.string() + "': no data rows");
  }
  return betas;
}

}  // namespace falqon
