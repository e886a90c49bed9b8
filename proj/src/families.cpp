#include "epfamily/families.hpp"

#include "epfamily/baselines.hpp"
#include "epfamily/ep_family.hpp"
#include "epfamily/likelihood.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace epfamily {

namespace {

const double kLambdaStarts[] = {-4.0, -1.0, 1.0, 4.0};

struct Moments {
  double mean_all;
  double mean_events;
  double sd_all;
};

Moments moments(const CensoredSample& data) {
  double s = 0.0, se = 0.0, n = 0.0, ne = 0.0;
  for (const Record& r : data.records) {
    s += r.time;
    n += 1.0;
    if (r.event) {
      se += r.time;
      ne += 1.0;
    }
  }
  double mean = n > 0.0 ? s / n : 1.0;
  double meane = ne > 0.0 ? se / ne : mean;
  double ss = 0.0;
  for (const Record& r : data.records) ss += (r.time - mean) * (r.time - mean);
  double sd = n > 1.0 ? std::sqrt(ss / (n - 1.0)) : 1.0;
  if (!(mean > 0.0)) mean = 1.0;
  if (!(meane > 0.0)) meane = mean;
  if (!(sd > 0.0)) sd = mean;
  return {mean, meane, sd};
}

// Two baseline variants per family (rate from the overall mean, then from
// the event-time mean, which weights censoring differently), crossed with
// the four lambda starts.
std::vector<std::vector<double>> cross_starts(const std::vector<std::vector<double>>& variants) {
  std::vector<std::vector<double>> out;
  out.reserve(variants.size() * 4);
  for (const auto& v : variants)
    for (double lam : kLambdaStarts) {
      std::vector<double> p;
      p.reserve(v.size() + 1);
      p.push_back(lam);
      p.insert(p.end(), v.begin(), v.end());
      out.push_back(std::move(p));
    }
  return out;
}

DistributionPtr build_eep(const std::vector<double>& p) {
  return std::make_shared<EPFamily>(std::make_shared<Exponential>(p[1]), p[0]);
}

DistributionPtr build_ewp(const std::vector<double>& p) {
  return std::make_shared<EPFamily>(std::make_shared<Weibull>(p[2], p[1]), p[0]);
}

DistributionPtr build_ge2p(const std::vector<double>& p) {
  auto inner = std::make_shared<EPFamily>(std::make_shared<Exponential>(p[1]), p[0]);
  return std::make_shared<Exponentiated>(inner, p[2]);
}

DistributionPtr build_egevp(const std::vector<double>& p) {
  return std::make_shared<EPFamily>(std::make_shared<Gev>(p[1], p[2], p[3]), p[0]);
}

std::vector<std::vector<double>> starts_rate(const CensoredSample& data) {
  Moments m = moments(data);
  return cross_starts({{1.0 / m.mean_all}, {1.0 / m.mean_events}});
}

std::vector<std::vector<double>> starts_rate_shape(const CensoredSample& data) {
  Moments m = moments(data);
  return cross_starts({{1.0 / m.mean_all, 1.0}, {1.0 / m.mean_events, 1.0}});
}

std::vector<std::vector<double>> starts_gev(const CensoredSample& data) {
  Moments m = moments(data);
  double sigma = m.sd_all * 0.7796968012336793; // sqrt(6)/pi
  double mu = m.mean_all - 0.5772156649015329 * sigma;
  return cross_starts({{mu, sigma, 0.1}, {mu, sigma, -0.1}});
}

const std::vector<ModelFamily>& registry() {
  static const std::vector<ModelFamily> fams = {
      {"eep",
       {{"lambda", Transform::identity}, {"beta", Transform::log_positive}},
       build_eep,
       starts_rate},
      {"ewp",
       {{"lambda", Transform::identity},
        {"beta", Transform::log_positive},
        {"alpha", Transform::log_positive}},
       build_ewp,
       starts_rate_shape},
      {"ge2p",
       {{"lambda", Transform::identity},
        {"beta", Transform::log_positive},
        {"alpha", Transform::log_positive}},
       build_ge2p,
       starts_rate_shape},
      {"egevp",
       {{"lambda", Transform::identity},
        {"mu", Transform::identity},
        {"sigma", Transform::log_positive},
        {"xi", Transform::identity}},
       build_egevp,
       starts_gev},
  };
  return fams;
}

} // namespace

DistributionPtr ModelFamily::build(const std::vector<double>& params) const {
  if (params.size() != k())
    throw std::invalid_argument(id_ + ": expected " + std::to_string(k()) + " parameters, got " +
                                std::to_string(params.size()));
  return build_(params);
}

std::vector<std::vector<double>> ModelFamily::starts(const CensoredSample& data) const {
  return starts_(data);
}

std::vector<double> ModelFamily::to_transformed(const std::vector<double>& p) const {
  std::vector<double> z = p;
  for (std::size_t i = 0; i < params_.size(); ++i)
    if (params_[i].transform == Transform::log_positive) z[i] = std::log(p[i]);
  return z;
}

std::vector<double> ModelFamily::from_transformed(const std::vector<double>& z) const {
  std::vector<double> p = z;
  for (std::size_t i = 0; i < params_.size(); ++i)
    if (params_[i].transform == Transform::log_positive) p[i] = std::exp(z[i]);
  return p;
}

const ModelFamily& family(std::string_view id) {
  for (const ModelFamily& f : registry())
    if (f.id() == id) return f;
  throw std::invalid_argument("unknown model id '" + std::string(id) +
                              "' (known: eep, ewp, ge2p, egevp)");
}

const std::vector<std::string>& family_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const ModelFamily& f : registry()) v.push_back(f.id());
    return v;
  }();
  return ids;
}

double log_likelihood(const ModelFamily& fam, const std::vector<double>& params,
                      const CensoredSample& data) {
  DistributionPtr model;
  try {
    model = fam.build(params);
  } catch (const std::domain_error&) {
    return -std::numeric_limits<double>::infinity();
  }
  return log_likelihood(*model, data);
}

} // namespace epfamily
