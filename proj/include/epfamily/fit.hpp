#pragma once

#include "epfamily/families.hpp"
#include "epfamily/linalg.hpp"

#include <utility>
#include <vector>

namespace epfamily {

struct FitConfig {
  int starts = 8;              // multi-start points used (at most 8)
  long max_iterations = 2000;  // simplex iteration cap per start
  double tolerance = 1e-8;     // simplex/step convergence
  double ci_level = 0.95;
  double hessian_step = 0.0;   // relative FD step; 0 = eps^(1/4)
};

struct FitResult {
  std::vector<double> estimates; // lambda first, reporting order
  double loglik = 0.0;
  Matrix varcov;                 // empty unless identifiable
  std::vector<double> se;
  std::vector<std::pair<double, double>> ci;
  double aic = 0.0;
  double aicc = 0.0;             // NaN when n <= k + 1
  bool converged = false;
  bool identifiable = false;
  std::size_t n_used = 0;
  long iterations = 0;
};

/// Maximize the censored log-likelihood: multi-start Nelder-Mead in the
/// transformed parameter space, then a BFGS polish, best optimum wins (ties
/// broken by start index). Throws std::invalid_argument when the data has
/// fewer than k + 1 events.
FitResult fit_mle(const ModelFamily& fam, const CensoredSample& data, const FitConfig& cfg = {});

/// Negative Hessian of the log-likelihood at params, in original
/// coordinates, by central differences with per-coordinate relative steps
/// (rel_step = 0 uses eps^(1/4)); symmetrized. Throws std::runtime_error
/// naming the coordinate if the stencil hits a non-finite value.
Matrix observed_information(const ModelFamily& fam, const std::vector<double>& params,
                            const CensoredSample& data, double rel_step = 0.0);

/// Standard errors and level-CIs from a fit's varcov (Wald intervals,
/// estimate +- z se). level = 0 gives zero-width intervals. Empty vectors
/// when the fit is not identifiable.
std::pair<std::vector<double>, std::vector<std::pair<double, double>>>
standard_errors_ci(const FitResult& fit, double level);

/// AIC = -2 loglik + 2k; AICc adds 2k(k+1)/(n-k-1), NaN when n <= k + 1.
std::pair<double, double> information_criteria(double loglik, int k, std::size_t n);

} // namespace epfamily
