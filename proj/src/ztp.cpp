#include "epfamily/ztp.hpp"

#include "epfamily/math.hpp"

#include <cmath>
#include <stdexcept>

namespace epfamily {

namespace {
void require_phi(double phi) {
  if (!(std::isfinite(phi) && phi > 0.0)) throw std::domain_error("ZTP: phi must be finite and > 0");
}
} // namespace

double ztp_pmf(double phi, std::uint64_t n) {
  require_phi(phi);
  if (n < 1) return 0.0;
  double ln = static_cast<double>(n) * std::log(phi) - std::lgamma(static_cast<double>(n) + 1.0) -
              (phi + std::log(-std::expm1(-phi)));
  return std::exp(ln);
}

double ztp_mean(double phi) {
  require_phi(phi);
  return phi / -std::expm1(-phi);
}

std::uint64_t sample_ztp(double phi, Rng& rng) {
  require_phi(phi);
  double u = rng.uniform();
  double p = phi / std::expm1(phi); // P(N = 1)
  double cum = p;
  std::uint64_t n = 1;
  while (cum < u) {
    if (++n > 1000000) throw std::runtime_error("sample_ztp: inversion exceeded 1e6 terms");
    p *= phi / static_cast<double>(n);
    cum += p;
  }
  return n;
}

std::vector<double> sample_ep(const Distribution& model, std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = model.quantile(rng.uniform());
  return out;
}

std::vector<double> sample_ep(const Distribution& model, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_ep(model, n, rng);
}

std::vector<double> sample_latent(const EPFamily& model, std::size_t n, Rng& rng) {
  double lambda = model.lambda();
  if (std::fabs(lambda) < kLambdaThreshold)
    throw std::domain_error("sample_latent: undefined at lambda = 0");
  const Distribution& base = *model.baseline();
  double phi = std::fabs(lambda);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t count = sample_ztp(phi, rng);
    double extreme = base.quantile(rng.uniform());
    for (std::uint64_t j = 1; j < count; ++j) {
      double draw = base.quantile(rng.uniform());
      if (lambda < 0.0 ? draw < extreme : draw > extreme) extreme = draw;
    }
    out[i] = extreme;
  }
  return out;
}

std::vector<double> sample_latent(const EPFamily& model, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_latent(model, n, rng);
}

} // namespace epfamily
