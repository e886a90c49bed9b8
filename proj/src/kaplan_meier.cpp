#include "epfamily/kaplan_meier.hpp"

#include <algorithm>
#include <stdexcept>

namespace epfamily {

KMCurve::KMCurve(const CensoredSample& data) {
  if (data.records.empty()) throw std::invalid_argument("KMCurve: empty sample");
  n_ = data.records.size();

  std::vector<Record> sorted = data.records;
  // ties at the same time: events are counted before censorings are removed
  std::sort(sorted.begin(), sorted.end(), [](const Record& a, const Record& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.event > b.event;
  });

  double s = 1.0;
  std::size_t at_risk = n_;
  std::size_t survivors = n_; // n minus cumulative events; valid until a censoring
  bool product_mode = false;  // flips once a censoring has left the risk set
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double t = sorted[i].time;
    std::size_t d = 0;
    std::size_t removed = 0;
    while (i < sorted.size() && sorted[i].time == t) {
      d += sorted[i].event ? 1u : 0u;
      ++removed;
      ++i;
    }
    if (d > 0) {
      const std::size_t risk_here = at_risk;
      survivors -= d;
      if (product_mode)
        s *= 1.0 - static_cast<double>(d) / static_cast<double>(risk_here);
      else
        // no censoring so far: the product telescopes to survivors/n, which a
        // single division computes exactly (the running product would not)
        s = static_cast<double>(survivors) / static_cast<double>(n_);
      steps_.push_back({t, s, risk_here, d});
    }
    at_risk -= removed;
    if (removed != d) product_mode = true;
  }
}

double KMCurve::survival_at(double t) const {
  double s = 1.0;
  for (const KMStep& st : steps_) {
    if (st.time <= t)
      s = st.survival;
    else
      break;
  }
  return s;
}

}  // namespace epfamily
