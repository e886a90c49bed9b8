#pragma once

#include <cstddef>
#include <vector>

#include "epfamily/data.hpp"

namespace epfamily {

struct KMStep {
  double time = 0.0;
  double survival = 1.0;  // estimate just after `time`
  std::size_t at_risk = 0;
  std::size_t events = 0;
};

// Product-limit estimator. Steps are recorded only at distinct event times;
// censoring between steps reduces the risk set without changing the estimate.
class KMCurve {
 public:
  explicit KMCurve(const CensoredSample& data);

  const std::vector<KMStep>& steps() const { return steps_; }

  // S(t), right continuous: the value at an event time includes that event.
  double survival_at(double t) const;

  std::size_t n() const { return n_; }

 private:
  std::vector<KMStep> steps_;
  std::size_t n_ = 0;
};

}  // namespace epfamily
