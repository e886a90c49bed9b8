#pragma once

#include "epfamily/distribution.hpp"

#include <optional>

namespace epfamily {

/// The extended Poisson family over an arbitrary baseline F:
///
///   G(t) = (e^{lambda F(t)} - 1) / (e^{lambda} - 1),  lambda in R \ {0}
///
/// which is the minimum of a zero-truncated-Poisson number of baseline draws
/// for lambda < 0 (rate phi = -lambda) and the maximum for lambda > 0. The
/// density is c(lambda) f(t) e^{-lambda (1 - F(t))} with c the normalizing
/// constant from math.hpp.
///
/// |lambda| below kLambdaThreshold delegates every operation to the baseline
/// (the lambda -> 0 limit), so optimizers may cross zero; |lambda| above
/// kLambdaMax is rejected at construction.
class EPFamily final : public Distribution {
public:
  EPFamily(DistributionPtr baseline, double lambda);

  const DistributionPtr& baseline() const { return baseline_; }
  double lambda() const { return lambda_; }

  Support support() const override { return baseline_->support(); }
  double cdf(double t) const override;
  double log_density(double t) const override;
  double survival(double t) const override;
  double log_survival(double t) const override;
  double hazard(double t) const override;
  double quantile(double p) const override;

  void log_density_batch(const double* t, double* out, std::size_t n) const override;
  void survival_batch(const double* t, double* out, std::size_t n) const override;
  void log_survival_batch(const double* t, double* out, std::size_t n) const override;

  /// Density mass at the lower support endpoint (instantaneous failures):
  /// lambda h_F(0) / (e^lambda - 1), defined only when the baseline hazard at
  /// the endpoint is finite and positive; nullopt means no such mass.
  std::optional<double> density_at_zero() const;

private:
  bool limit() const { return limit_; }

  DistributionPtr baseline_;
  double lambda_;
  bool limit_;
  double log_c_;            // log c(lambda)
  double em1_lambda_;       // e^lambda - 1
  double em1_neg_lambda_;   // e^-lambda - 1
  double log_abs_em1_neg_;  // log |e^-lambda - 1|
};

/// Min-construction density (phi / (1 - e^{-phi})) f(t) e^{-phi F(t)},
/// phi > 0. Equals EPFamily(baseline, -phi) density; kept as the
/// unification-test oracle.
double min_form_density(const Distribution& baseline, double phi, double t);

} // namespace epfamily
