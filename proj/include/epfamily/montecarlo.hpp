#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "epfamily/distribution.hpp"
#include "epfamily/fit.hpp"

namespace epfamily {

struct SimScenario {
  std::string model;                // family id: eep, ewp, ge2p, egevp
  std::vector<double> true_params;  // lambda first, then baseline parameters
  std::size_t n = 0;                // observations per replication
  double censor_fraction = 0.0;     // target share of censored records, 0 disables
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  FitConfig fit_config;
  bool fit_none = false;  // generate samples only, skip estimation
};

struct SimSummary {
  std::vector<std::string> param_names;
  std::vector<double> true_params;
  std::vector<double> bias;
  std::vector<double> mse;
  std::vector<double> coverage;  // share of kept replications whose CI covers the truth
  std::size_t replications = 0;
  std::size_t n_used = 0;
  std::size_t n_dropped = 0;  // non-converged or non-identifiable fits
  double censor_bound = 0.0;  // upper end of the U(0, c) censoring draw, 0 when disabled
  double realized_censoring = 0.0;
  bool unreliable = false;  // more than 20% of replications dropped
};

// Solves E[min(T / c, 1)] = target for c over a pilot sample of `pilot` draws
// from `model`. The pilot stream is disjoint from every replication stream.
double calibrate_censoring(const Distribution& model, double target,
                           std::uint64_t seed, std::size_t pilot = 100000);

// key = value lines, one per key; '#' starts a comment. Required keys: model,
// params, n, censoring, replications, seed. Optional: starts, tolerance,
// max_iterations, fit (mle | none).
SimScenario parse_scenario(const std::string& text);
SimScenario load_scenario(const std::string& path);

// Runs the scenario, fanning replications out across threads (capped by
// EPFAMILY_THREADS). Results are identical for any thread count.
SimSummary run_scenario(const SimScenario& sc);

}  // namespace epfamily
