#include "falqon/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <utility>

namespace falqon {

using nlohmann::json;

Graph generate_graph(GraphFamily family, int n, double p, std::uint64_t seed) {
  switch (family) {
    case GraphFamily::ThreeRegular:
      return gen_three_regular(n, seed);
    case GraphFamily::ErdosRenyi:
      return gen_erdos_renyi(n, p, seed);
    case GraphFamily::Custom:
      break;
  }
  throw std::invalid_argument("generate_graph: custom graphs cannot be generated");
}

TransferResult run_transfer(const TransferSpec& spec) {
  if (spec.recipients_count < 1) {
    throw std::invalid_argument("run_transfer: need at least one recipient");
  }
  validate_config(spec.cfg);

  TransferResult result;
  result.spec = spec;

  const Graph donor =
      generate_graph(spec.donor.family, spec.donor.n, spec.donor.p, spec.donor.seed);
  result.donor_trace = run_falqon(donor, spec.cfg);

  // Recipients replay the donor schedule independently; slots are stored by
  // index so the outcome is scheduling-invariant.
  const std::size_t count = static_cast<std::size_t>(spec.recipients_count);
  result.recipient_traces.resize(count);
  std::vector<std::exception_ptr> errors(count);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k) {
    try {
      const Graph recipient = generate_graph(
          spec.recipient.family, spec.recipient.n, spec.recipient.p,
          spec.recipient_seed_base + static_cast<std::uint64_t>(k));
      result.recipient_traces[static_cast<std::size_t>(k)] =
          replay_schedule(recipient, result.donor_trace.betas, spec.cfg);
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const std::size_t layers = result.donor_trace.betas.size();
  result.mean_ratio.resize(layers);
  result.std_ratio.resize(layers);
  for (std::size_t k = 0; k < layers; ++k) {
    double mean = 0.0;
    for (const FalqonTrace& t : result.recipient_traces) {
      mean += t.ratio[k];
    }
    mean /= static_cast<double>(count);
    double ss = 0.0;
    for (const FalqonTrace& t : result.recipient_traces) {
      const double d = t.ratio[k] - mean;
      ss += d * d;
    }
    result.mean_ratio[k] = mean;
    result.std_ratio[k] = count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
  }
  result.final_mean = result.mean_ratio.back();
  result.final_std = result.std_ratio.back();
  return result;
}

namespace {

bool same_recipient_setup(const TransferSpec& a, const TransferSpec& b) {
  return a.recipient.family == b.recipient.family && a.recipient.n == b.recipient.n &&
         a.recipient.p == b.recipient.p && a.recipients_count == b.recipients_count &&
         a.recipient_seed_base == b.recipient_seed_base && a.cfg.dt == b.cfg.dt &&
         a.cfg.layers == b.cfg.layers && a.cfg.beta_init == b.cfg.beta_init;
}

}  // namespace

DonorSizeSummary aggregate_by_donor_size(std::span<const TransferResult> results) {
  if (results.empty()) {
    throw std::invalid_argument("aggregate_by_donor_size: no results");
  }
  for (const TransferResult& r : results) {
    if (!same_recipient_setup(r.spec, results.front().spec)) {
      throw std::invalid_argument("aggregate_by_donor_size: mismatched recipient specs");
    }
  }

  DonorSizeSummary summary;
  for (const TransferResult& r : results) {
    summary.entries.push_back({r.spec.donor.n, r.final_mean, r.final_std});
  }
  std::sort(summary.entries.begin(), summary.entries.end(),
            [](const DonorSizeEntry& a, const DonorSizeEntry& b) {
              return a.donor_n < b.donor_n;
            });

  summary.intervals_overlap = true;
  for (std::size_t i = 0; i < summary.entries.size(); ++i) {
    for (std::size_t j = i + 1; j < summary.entries.size(); ++j) {
      const auto& a = summary.entries[i];
      const auto& b = summary.entries[j];
      const double lo = std::max(a.final_mean - a.final_std, b.final_mean - b.final_std);
      const double hi = std::min(a.final_mean + a.final_std, b.final_mean + b.final_std);
      if (lo > hi) summary.intervals_overlap = false;
    }
  }
  return summary;
}

json transfer_spec_json(const TransferSpec& spec) {
  return json{
      {"donor",
       {{"family", family_name(spec.donor.family)},
        {"n", spec.donor.n},
        {"p", spec.donor.p},
        {"seed", spec.donor.seed}}},
      {"recipient",
       {{"family", family_name(spec.recipient.family)},
        {"n", spec.recipient.n},
        {"p", spec.recipient.p}}},
      {"recipients_count", spec.recipients_count},
      {"recipient_seed_base", spec.recipient_seed_base},
      {"dt", spec.cfg.dt},
      {"layers", spec.cfg.layers},
      {"beta_init", spec.cfg.beta_init},
      {"mixer", mixer_name(spec.cfg.mixer)},
      {"initial_state", initial_state_name(spec.cfg.initial_state)},
  };
}

TransferSpec transfer_spec_from_json(const json& j) {
  TransferSpec spec;
  spec.donor.family = family_from_name(j.at("donor").at("family").get<std::string>());
  spec.donor.n = j.at("donor").at("n").get<int>();
  spec.donor.p = j.at("donor").at("p").get<double>();
  spec.donor.seed = j.at("donor").at("seed").get<std::uint64_t>();
  spec.recipient.family =
      family_from_name(j.at("recipient").at("family").get<std::string>());
  spec.recipient.n = j.at("recipient").at("n").get<int>();
  spec.recipient.p = j.at("recipient").at("p").get<double>();
  spec.recipients_count = j.at("recipients_count").get<int>();
  spec.recipient_seed_base = j.at("recipient_seed_base").get<std::uint64_t>();
  spec.cfg.dt = j.at("dt").get<double>();
  spec.cfg.layers = j.at("layers").get<int>();
  spec.cfg.beta_init = j.at("beta_init").get<double>();
  return spec;
}

json transfer_result_json(const TransferResult& result,
                          const std::string& donor_trace_path) {
  json recipient_finals = json::array();
  json recipient_optima = json::array();
  for (const FalqonTrace& t : result.recipient_traces) {
    recipient_finals.push_back(t.ratio.back());
    recipient_optima.push_back(t.optimum);
  }
  return json{
      {"spec", transfer_spec_json(result.spec)},
      {"donor_trace", donor_trace_path},
      {"donor_optimum", result.donor_trace.optimum},
      {"donor_final_ratio", result.donor_trace.ratio.back()},
      {"recipient_final_ratios", recipient_finals},
      {"recipient_optima", recipient_optima},
      {"mean_ratio", result.mean_ratio},
      {"std_ratio", result.std_ratio},
      {"final_mean", result.final_mean},
      {"final_std", result.final_std},
  };
}

}  // namespace falqon
