#pragma once

#include "epfamily/data.hpp"
#include "epfamily/distribution.hpp"

#include <vector>

namespace epfamily {

/// Censored log-likelihood  sum_events log g(t_i) + sum_censored log S(t_i).
///
/// The evaluator partitions the sample once and reuses scratch buffers, since
/// a fit evaluates the same data under thousands of candidate models. Any
/// non-finite contribution (zero density at an event, zero survival at a
/// censored point, invalid parameter region) yields -inf: a rejected point,
/// not an error.
class LikelihoodEvaluator {
public:
  explicit LikelihoodEvaluator(const CensoredSample& data);

  double operator()(const Distribution& model) const;

  std::size_t n() const { return n_; }
  std::size_t n_events() const { return event_times_.size(); }

private:
  std::size_t n_;
  std::vector<double> event_times_;
  std::vector<double> censored_times_;
  mutable std::vector<double> buf_;
};

/// One-shot convenience over the evaluator.
double log_likelihood(const Distribution& model, const CensoredSample& data);

} // namespace epfamily
