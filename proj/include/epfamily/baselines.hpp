#pragma once

#include <limits>

#include "epfamily/distribution.hpp"

namespace epfamily {

/// Exponential with rate beta: F(t) = 1 - e^{-beta t} on t >= 0.
class Exponential final : public Distribution {
public:
  explicit Exponential(double beta);
  double beta() const { return beta_; }

  Support support() const override { return {0.0, kInf}; }
  double cdf(double t) const override;
  double log_density(double t) const override;
  double survival(double t) const override;
  double log_survival(double t) const override;
  double hazard(double t) const override;
  double quantile(double p) const override;

  void log_density_batch(const double* t, double* out, std::size_t n) const override;
  void survival_batch(const double* t, double* out, std::size_t n) const override;
  void log_survival_batch(const double* t, double* out, std::size_t n) const override;

  static constexpr double kInf = std::numeric_limits<double>::infinity();

private:
  double beta_;
};

/// Weibull in rate form: F(t) = 1 - e^{-beta t^alpha} on t >= 0.
/// alpha is the shape, beta a rate-like scale with units time^-alpha;
/// alpha = 1 reduces exactly to Exponential(beta).
class Weibull final : public Distribution {
public:
  Weibull(double alpha, double beta);
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  Support support() const override { return {0.0, Exponential::kInf}; }
  double cdf(double t) const override;
  double log_density(double t) const override;
  double survival(double t) const override;
  double log_survival(double t) const override;
  double hazard(double t) const override;
  double quantile(double p) const override;

  void log_density_batch(const double* t, double* out, std::size_t n) const override;
  void survival_batch(const double* t, double* out, std::size_t n) const override;
  void log_survival_batch(const double* t, double* out, std::size_t n) const override;

private:
  double alpha_, beta_;
};

/// Generalized extreme value: F(t) = exp(-r(t)) with
/// r(t) = [1 + xi (t - mu) / sigma]^{-1/xi} for xi != 0 and
/// r(t) = exp(-(t - mu) / sigma) for xi = 0.
/// The xi = 0 branch is taken when |xi| < kXiThreshold (removable
/// singularity). Support depends on the sign of xi.
class Gev final : public Distribution {
public:
  static constexpr double kXiThreshold = 1e-7;

  Gev(double mu, double sigma, double xi);
  double mu() const { return mu_; }
  double sigma() const { return sigma_; }
  double xi() const { return xi_; }

  Support support() const override;
  double cdf(double t) const override;
  double log_density(double t) const override;
  double quantile(double p) const override;

  /// r(t) strictly inside the support; +inf / 0 at the excluded sides.
  double r(double t) const;

private:
  double mu_, sigma_, xi_;
};

/// Power wrapper: cdf (G_inner)^alpha, the exponentiated family transform.
/// Applied to an EP-composed model it yields the powered variants (GE2P when
/// the inner model is EP over an exponential baseline).
class Exponentiated final : public Distribution {
public:
  Exponentiated(DistributionPtr inner, double alpha);
  const DistributionPtr& inner() const { return inner_; }
  double alpha() const { return alpha_; }

  Support support() const override { return inner_->support(); }
  double cdf(double t) const override;
  double log_density(double t) const override;
  double log_survival(double t) const override;
  double quantile(double p) const override;

private:
  DistributionPtr inner_;
  double alpha_;
};

} // namespace epfamily
