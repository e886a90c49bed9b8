#include "epfamily/baselines.hpp"

#include "epfamily/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace epfamily {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite_positive(double v, const char* what) {
  if (!(std::isfinite(v) && v > 0.0)) throw std::domain_error(std::string(what) + " must be finite and > 0");
}

thread_local std::vector<double> tl_scratch;
} // namespace

double Distribution::density(double t) const { return std::exp(log_density(t)); }

double Distribution::survival(double t) const { return 1.0 - cdf(t); }

double Distribution::log_survival(double t) const { return std::log(survival(t)); }

double Distribution::hazard(double t) const {
  double s = survival(t);
  if (s <= 0.0) throw std::domain_error("hazard: survival is zero");
  return density(t) / s;
}

void Distribution::log_density_batch(const double* t, double* out, std::size_t n) const {
  for (std::size_t i = 0; i < n; ++i) out[i] = log_density(t[i]);
}

void Distribution::survival_batch(const double* t, double* out, std::size_t n) const {
  for (std::size_t i = 0; i < n; ++i) out[i] = survival(t[i]);
}

void Distribution::log_survival_batch(const double* t, double* out, std::size_t n) const {
  for (std::size_t i = 0; i < n; ++i) out[i] = log_survival(t[i]);
}

// ---------------------------------------------------------------- Exponential

Exponential::Exponential(double beta) : beta_(beta) {
  require_finite_positive(beta, "Exponential: beta");
}

double Exponential::cdf(double t) const {
  if (t <= 0.0) return 0.0;
  return -std::expm1(-beta_ * t);
}

double Exponential::log_density(double t) const {
  if (t < 0.0) return -kInf;
  return std::log(beta_) - beta_ * t;
}

double Exponential::survival(double t) const {
  if (t <= 0.0) return 1.0;
  return std::exp(-beta_ * t);
}

double Exponential::log_survival(double t) const {
  if (t <= 0.0) return 0.0;
  return -beta_ * t;
}

double Exponential::hazard(double t) const { return t < 0.0 ? 0.0 : beta_; }

double Exponential::quantile(double p) const {
  if (p == 0.0) return 0.0;
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("Exponential::quantile: p must be in [0, 1)");
  return -std::log1p(-p) / beta_;
}

void Exponential::log_density_batch(const double* t, double* out, std::size_t n) const {
  double lb = std::log(beta_);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = t[i] < 0.0 ? -kInf : lb - beta_ * t[i];
}

void Exponential::survival_batch(const double* t, double* out, std::size_t n) const {
  for (std::size_t i = 0; i < n; ++i) out[i] = t[i] <= 0.0 ? 0.0 : -beta_ * t[i];
  kernels::exp_v(out, out, n);
}

void Exponential::log_survival_batch(const double* t, double* out, std::size_t n) const {
  for (std::size_t i = 0; i < n; ++i) out[i] = t[i] <= 0.0 ? 0.0 : -beta_ * t[i];
}

// -------------------------------------------------------------------- Weibull

Weibull::Weibull(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  require_finite_positive(alpha, "Weibull: alpha");
  require_finite_positive(beta, "Weibull: beta");
}

double Weibull::cdf(double t) const {
  if (t <= 0.0) return 0.0;
  return -std::expm1(-beta_ * std::pow(t, alpha_));
}

double Weibull::log_density(double t) const {
  if (t < 0.0) return -kInf;
  if (t == 0.0) {
    if (alpha_ == 1.0) return std::log(beta_);
    return alpha_ > 1.0 ? -kInf : kInf;
  }
  double lt = std::log(t);
  return std::log(alpha_ * beta_) + (alpha_ - 1.0) * lt - beta_ * std::exp(alpha_ * lt);
}

double Weibull::survival(double t) const {
  if (t <= 0.0) return 1.0;
  return std::exp(-beta_ * std::pow(t, alpha_));
}

double Weibull::log_survival(double t) const {
  if (t <= 0.0) return 0.0;
  return -beta_ * std::pow(t, alpha_);
}

double Weibull::hazard(double t) const {
  if (t < 0.0) return 0.0;
  return alpha_ * beta_ * std::pow(t, alpha_ - 1.0);
}

double Weibull::quantile(double p) const {
  if (p == 0.0) return 0.0;
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("Weibull::quantile: p must be in [0, 1)");
  return std::pow(-std::log1p(-p) / beta_, 1.0 / alpha_);
}

// Shared stage for the batch paths: out[i] = -beta * t[i]^alpha via
// exp(alpha * log t), with the t = 0 lanes falling out correctly
// (log 0 = -inf, exp(-inf) = 0).
void Weibull::log_survival_batch(const double* t, double* out, std::size_t n) const {
  kernels::log_v(t, out, n);
  for (std::size_t i = 0; i < n; ++i) out[i] *= alpha_;
  kernels::exp_v(out, out, n);
  for (std::size_t i = 0; i < n; ++i) out[i] *= -beta_;
}

void Weibull::survival_batch(const double* t, double* out, std::size_t n) const {
  log_survival_batch(t, out, n);
  kernels::exp_v(out, out, n);
}

void Weibull::log_density_batch(const double* t, double* out, std::size_t n) const {
  tl_scratch.resize(n);
  double* lt = tl_scratch.data();
  kernels::log_v(t, lt, n);
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha_ * lt[i];
  kernels::exp_v(out, out, n);
  double lab = std::log(alpha_ * beta_);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lab + (alpha_ - 1.0) * lt[i] - beta_ * out[i];
  if (alpha_ == 1.0)
    for (std::size_t i = 0; i < n; ++i)
      if (t[i] == 0.0) out[i] = lab;
}

// ------------------------------------------------------------------------ Gev

Gev::Gev(double mu, double sigma, double xi) : mu_(mu), sigma_(sigma), xi_(xi) {
  if (!std::isfinite(mu) || !std::isfinite(xi)) throw std::domain_error("Gev: mu and xi must be finite");
  require_finite_positive(sigma, "Gev: sigma");
}

Support Gev::support() const {
  if (std::fabs(xi_) < kXiThreshold) return {-kInf, kInf};
  double edge = mu_ - sigma_ / xi_;
  return xi_ > 0.0 ? Support{edge, kInf} : Support{-kInf, edge};
}

double Gev::r(double t) const {
  double z = (t - mu_) / sigma_;
  if (std::fabs(xi_) < kXiThreshold) return std::exp(-z);
  double w = 1.0 + xi_ * z;
  if (w <= 0.0) return xi_ > 0.0 ? kInf : 0.0;
  return std::exp(-std::log1p(xi_ * z) / xi_);
}

double Gev::cdf(double t) const { return std::exp(-r(t)); }

double Gev::log_density(double t) const {
  double rt = r(t);
  if (rt == 0.0 || std::isinf(rt)) return -kInf;
  return (1.0 + xi_) * std::log(rt) - rt - std::log(sigma_);
}

double Gev::quantile(double p) const {
  bool zero_branch = std::fabs(xi_) < kXiThreshold;
  if (p == 0.0) {
    if (!zero_branch && xi_ > 0.0) return mu_ - sigma_ / xi_;
    throw std::domain_error("Gev::quantile: p = 0 with unbounded lower support");
  }
  if (p == 1.0) {
    if (!zero_branch && xi_ < 0.0) return mu_ - sigma_ / xi_;
    throw std::domain_error("Gev::quantile: p = 1 with unbounded upper support");
  }
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("Gev::quantile: p must be in [0, 1]");
  double lr = std::log(-std::log(p));
  if (zero_branch) return mu_ - sigma_ * lr;
  return mu_ + sigma_ * std::expm1(-xi_ * lr) / xi_;
}

// -------------------------------------------------------------- Exponentiated

Exponentiated::Exponentiated(DistributionPtr inner, double alpha)
    : inner_(std::move(inner)), alpha_(alpha) {
  if (!inner_) throw std::domain_error("Exponentiated: inner model required");
  require_finite_positive(alpha, "Exponentiated: alpha");
}

double Exponentiated::cdf(double t) const { return std::pow(inner_->cdf(t), alpha_); }

double Exponentiated::log_density(double t) const {
  double ci = inner_->cdf(t);
  if (ci <= 0.0) return alpha_ >= 1.0 ? -kInf : kInf;
  return std::log(alpha_) + (alpha_ - 1.0) * std::log(ci) + inner_->log_density(t);
}

double Exponentiated::log_survival(double t) const {
  // 1 - G^alpha collapses to 0 in doubles once the inner survival drops under
  // ~1e-16; route through log G and log(1 - e^y) instead, split at -ln 2 so
  // neither factor cancels.
  double s = inner_->survival(t);
  double log_g = s <= 0.5 ? std::log1p(-s) : std::log(inner_->cdf(t));
  double y = alpha_ * log_g;
  if (y == 0.0) return -kInf;
  return y > -0.6931471805599453 ? std::log(-std::expm1(y)) : std::log1p(-std::exp(y));
}

double Exponentiated::quantile(double p) const {
  return inner_->quantile(std::pow(p, 1.0 / alpha_));
}

} // namespace epfamily
