#include "epfamily/fit.hpp"

#include "epfamily/likelihood.hpp"
#include "epfamily/math.hpp"
#include "epfamily/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace epfamily {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

Objective make_objective(const ModelFamily& fam, const LikelihoodEvaluator& ev) {
  return [&fam, &ev](const std::vector<double>& z) {
    std::vector<double> p = fam.from_transformed(z);
    DistributionPtr model;
    try {
      model = fam.build(p);
    } catch (const std::domain_error&) {
      return kInf;
    }
    return -ev(*model);
  };
}

} // namespace

std::pair<double, double> information_criteria(double loglik, int k, std::size_t n) {
  double aic = -2.0 * loglik + 2.0 * k;
  double aicc = kNan;
  if (n > static_cast<std::size_t>(k) + 1)
    aicc = aic + 2.0 * k * (k + 1.0) / (static_cast<double>(n) - k - 1.0);
  return {aic, aicc};
}

Matrix observed_information(const ModelFamily& fam, const std::vector<double>& params,
                            const CensoredSample& data, double rel_step) {
  const std::size_t k = params.size();
  if (k != fam.k()) throw std::invalid_argument("observed_information: wrong parameter count");
  double h0 = rel_step > 0.0 ? rel_step : std::pow(std::numeric_limits<double>::epsilon(), 0.25);
  LikelihoodEvaluator ev(data);
  auto ll = [&](const std::vector<double>& p) {
    DistributionPtr m;
    try {
      m = fam.build(p);
    } catch (const std::domain_error&) {
      return -kInf;
    }
    return ev(*m);
  };

  std::vector<double> h(k);
  for (std::size_t i = 0; i < k; ++i) h[i] = h0 * std::max(1.0, std::fabs(params[i]));

  auto check = [&](double v, std::size_t i) {
    if (!std::isfinite(v))
      throw std::runtime_error("observed_information: non-finite log-likelihood perturbing '" +
                               fam.params()[i].name + "'");
    return v;
  };

  double f0 = check(ll(params), 0);
  Matrix H(k);
  std::vector<double> p = params;
  for (std::size_t i = 0; i < k; ++i) {
    p[i] = params[i] + h[i];
    double fp = check(ll(p), i);
    p[i] = params[i] - h[i];
    double fm = check(ll(p), i);
    p[i] = params[i];
    H(i, i) = -(fp - 2.0 * f0 + fm) / (h[i] * h[i]);
    for (std::size_t j = i + 1; j < k; ++j) {
      p[i] = params[i] + h[i];
      p[j] = params[j] + h[j];
      double fpp = check(ll(p), j);
      p[j] = params[j] - h[j];
      double fpm = check(ll(p), j);
      p[i] = params[i] - h[i];
      p[j] = params[j] + h[j];
      double fmp = check(ll(p), j);
      p[j] = params[j] - h[j];
      double fmm = check(ll(p), j);
      p[i] = params[i];
      p[j] = params[j];
      double hij = -(fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
      H(i, j) = H(j, i) = hij;
    }
  }
  return H;
}

std::pair<std::vector<double>, std::vector<std::pair<double, double>>>
standard_errors_ci(const FitResult& fit, double level) {
  if (!(level >= 0.0 && level < 1.0))
    throw std::domain_error("standard_errors_ci: level must be in [0, 1)");
  std::vector<double> se;
  std::vector<std::pair<double, double>> ci;
  if (!fit.identifiable || fit.varcov.empty()) return {se, ci};
  double z = level == 0.0 ? 0.0 : normal_quantile(0.5 * (1.0 + level));
  for (std::size_t i = 0; i < fit.estimates.size(); ++i) {
    double s = std::sqrt(fit.varcov(i, i));
    se.push_back(s);
    ci.emplace_back(fit.estimates[i] - z * s, fit.estimates[i] + z * s);
  }
  return {se, ci};
}

FitResult fit_mle(const ModelFamily& fam, const CensoredSample& data, const FitConfig& cfg) {
  const std::size_t k = fam.k();
  if (data.records.empty()) throw std::invalid_argument("fit_mle: empty data");
  if (data.n_events() < k + 1)
    throw std::invalid_argument("fit_mle: need at least " + std::to_string(k + 1) +
                                " event records for " + fam.id() + ", got " +
                                std::to_string(data.n_events()));

  LikelihoodEvaluator ev(data);
  Objective obj = make_objective(fam, ev);

  std::vector<std::vector<double>> starts = fam.starts(data);
  int n_starts = std::clamp<int>(cfg.starts, 1, static_cast<int>(starts.size()));
  starts.resize(static_cast<std::size_t>(n_starts));

  OptimResult best;
  best.f = kInf;
  bool have = false;
  for (const auto& s : starts) {
    OptimResult nm = nelder_mead(obj, fam.to_transformed(s), cfg.tolerance, cfg.max_iterations);
    OptimResult bf = bfgs_polish(obj, nm.x);
    bf.iterations += nm.iterations;
    bf.converged = nm.converged || bf.converged;
    if (!std::isfinite(bf.f)) continue;
    if (!have || bf.f < best.f) {
      best = bf;
      have = true;
    }
  }

  FitResult r;
  r.n_used = data.size();
  if (!have) { // every start stuck at a rejected region; report the first
    r.estimates = starts.front();
    r.loglik = -kInf;
    r.aic = kInf;
    r.aicc = kNan;
    return r;
  }

  r.estimates = fam.from_transformed(best.x);
  r.loglik = -best.f;
  r.iterations = best.iterations;

  std::vector<double> grad = fd_gradient(obj, best.x);
  double gnorm = 0.0;
  for (double g : grad) gnorm = std::max(gnorm, std::fabs(g));
  r.converged = best.converged && gnorm < 1e-4 * (1.0 + std::fabs(r.loglik));

  auto [aic, aicc] = information_criteria(r.loglik, static_cast<int>(k), r.n_used);
  r.aic = aic;
  r.aicc = aicc;

  try {
    Matrix info = observed_information(fam, r.estimates, data, cfg.hessian_step);
    Matrix v;
    if (cholesky_inverse(info, v)) {
      r.identifiable = true;
      r.varcov = v;
    } else if (gauss_jordan_inverse(info, v)) {
      // invertible but not positive definite: a ridge, not a maximum; the
      // inverse is kept for diagnostics but the fit is flagged and CIs are
      // omitted
      r.varcov = v;
    }
  } catch (const std::runtime_error&) {
    r.identifiable = false;
  }

  if (r.identifiable) {
    auto [se, ci] = standard_errors_ci(r, cfg.ci_level);
    r.se = std::move(se);
    r.ci = std::move(ci);
  }
  return r;
}

} // namespace epfamily
