#include "epfamily/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace epfamily {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

LikelihoodEvaluator::LikelihoodEvaluator(const CensoredSample& data) : n_(data.size()) {
  for (const Record& r : data.records)
    (r.event ? event_times_ : censored_times_).push_back(r.time);
  buf_.reserve(std::max(event_times_.size(), censored_times_.size()));
}

double LikelihoodEvaluator::operator()(const Distribution& model) const {
  double total = 0.0;
  if (!event_times_.empty()) {
    buf_.resize(event_times_.size());
    model.log_density_batch(event_times_.data(), buf_.data(), event_times_.size());
    for (double v : buf_) total += v;
  }
  if (!censored_times_.empty()) {
    buf_.resize(censored_times_.size());
    model.log_survival_batch(censored_times_.data(), buf_.data(), censored_times_.size());
    for (double v : buf_) total += v;
  }
  return std::isfinite(total) ? total : kNegInf;
}

double log_likelihood(const Distribution& model, const CensoredSample& data) {
  return LikelihoodEvaluator(data)(model);
}

} // namespace epfamily
