#pragma once

#include <cstddef>
#include <memory>

namespace epfamily {

/// Support interval of a lifetime distribution.
struct Support {
  double lower;
  double upper;
};

/// Contract for a univariate continuous lifetime distribution.
///
/// Evaluation is pure; instances are immutable after construction and safe
/// to share across threads. The batch hooks default to scalar loops over the
/// scalar virtuals; concrete models override them where a vectorized path
/// pays (the censored likelihood evaluates them thousands of times per fit).
class Distribution {
public:
  virtual ~Distribution() = default;

  virtual Support support() const = 0;

  /// F(t). Defined on the support closure; clamped to {0, 1} outside.
  virtual double cdf(double t) const = 0;

  /// log f(t). -inf where the density vanishes.
  virtual double log_density(double t) const = 0;

  double density(double t) const;

  /// 1 - F(t), computed without cancellation where the model allows.
  virtual double survival(double t) const;

  /// log(1 - F(t)). -inf where survival vanishes.
  virtual double log_survival(double t) const;

  /// f(t) / S(t). Throws std::domain_error where survival is zero.
  virtual double hazard(double t) const;

  /// Inverse cdf for p in (0, 1); boundary p allowed when the corresponding
  /// support endpoint is finite. Throws std::domain_error otherwise.
  virtual double quantile(double p) const = 0;

  virtual void log_density_batch(const double* t, double* out, std::size_t n) const;
  virtual void survival_batch(const double* t, double* out, std::size_t n) const;
  virtual void log_survival_batch(const double* t, double* out, std::size_t n) const;
};

using DistributionPtr = std::shared_ptr<const Distribution>;

} // namespace epfamily
