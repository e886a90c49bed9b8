#include "epfamily/ep_family.hpp"

#include "epfamily/kernels.hpp"
#include "epfamily/math.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace epfamily {

namespace {
thread_local std::vector<double> tl_fbar;
}

EPFamily::EPFamily(DistributionPtr baseline, double lambda)
    : baseline_(std::move(baseline)), lambda_(lambda) {
  if (!baseline_) throw std::domain_error("EPFamily: baseline required");
  if (!std::isfinite(lambda)) throw std::domain_error("EPFamily: lambda must be finite");
  if (std::fabs(lambda) > kLambdaMax) throw std::domain_error("EPFamily: |lambda| exceeds 700");
  limit_ = std::fabs(lambda) < kLambdaThreshold;
  log_c_ = log_norm_const(lambda);
  em1_lambda_ = std::expm1(lambda);
  em1_neg_lambda_ = std::expm1(-lambda);
  log_abs_em1_neg_ = limit_ ? 0.0 : std::log(std::fabs(em1_neg_lambda_));
}

double EPFamily::cdf(double t) const {
  double F = baseline_->cdf(t);
  if (limit_) return F;
  return std::expm1(lambda_ * F) / em1_lambda_;
}

double EPFamily::log_density(double t) const {
  double lf = baseline_->log_density(t);
  if (limit_) return lf;
  return log_c_ + lf - lambda_ * baseline_->survival(t);
}

double EPFamily::survival(double t) const {
  double fbar = baseline_->survival(t);
  if (limit_) return fbar;
  return std::expm1(-lambda_ * fbar) / em1_neg_lambda_;
}

double EPFamily::log_survival(double t) const {
  double fbar = baseline_->survival(t);
  if (limit_) return baseline_->log_survival(t);
  return std::log(std::fabs(std::expm1(-lambda_ * fbar))) - log_abs_em1_neg_;
}

double EPFamily::hazard(double t) const {
  if (limit_) return baseline_->hazard(t);
  double fbar = baseline_->survival(t);
  double denom = std::expm1(lambda_ * fbar);
  if (denom == 0.0) throw std::domain_error("EPFamily::hazard: survival is zero");
  return lambda_ * baseline_->density(t) / denom;
}

double EPFamily::quantile(double p) const {
  if (limit_) return baseline_->quantile(p);
  return baseline_->quantile(q_transform(p, lambda_));
}

void EPFamily::log_density_batch(const double* t, double* out, std::size_t n) const {
  baseline_->log_density_batch(t, out, n);
  if (limit_) return;
  tl_fbar.resize(n);
  baseline_->survival_batch(t, tl_fbar.data(), n);
  for (std::size_t i = 0; i < n; ++i) out[i] += log_c_ - lambda_ * tl_fbar[i];
}

void EPFamily::survival_batch(const double* t, double* out, std::size_t n) const {
  baseline_->survival_batch(t, out, n);
  if (limit_) return;
  for (std::size_t i = 0; i < n; ++i) out[i] *= -lambda_;
  kernels::expm1_v(out, out, n);
  double inv = 1.0 / em1_neg_lambda_;
  for (std::size_t i = 0; i < n; ++i) out[i] *= inv;
}

void EPFamily::log_survival_batch(const double* t, double* out, std::size_t n) const {
  if (limit_) {
    baseline_->log_survival_batch(t, out, n);
    return;
  }
  baseline_->survival_batch(t, out, n);
  for (std::size_t i = 0; i < n; ++i) out[i] *= -lambda_;
  kernels::expm1_v(out, out, n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::fabs(out[i]);
  kernels::log_v(out, out, n);
  for (std::size_t i = 0; i < n; ++i) out[i] -= log_abs_em1_neg_;
}

std::optional<double> EPFamily::density_at_zero() const {
  double h0 = baseline_->hazard(support().lower);
  if (std::isnan(h0)) throw std::domain_error("EPFamily::density_at_zero: baseline hazard undefined");
  if (!(h0 > 0.0) || std::isinf(h0)) return std::nullopt;
  if (limit_) return h0;
  return lambda_ * h0 / em1_lambda_;
}

double min_form_density(const Distribution& baseline, double phi, double t) {
  if (!(phi > 0.0) || !std::isfinite(phi))
    throw std::domain_error("min_form_density: phi must be finite and > 0");
  double c = phi / -std::expm1(-phi);
  return c * baseline.density(t) * std::exp(-phi * baseline.cdf(t));
}

} // namespace epfamily
