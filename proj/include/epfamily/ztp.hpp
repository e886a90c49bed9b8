#pragma once

#include "epfamily/ep_family.hpp"
#include "epfamily/rng.hpp"

#include <cstdint>
#include <vector>

namespace epfamily {

/// Zero-truncated Poisson mass P(N = n) = phi^n / (n! (e^phi - 1)), n >= 1.
double ztp_pmf(double phi, std::uint64_t n);

/// Mean phi / (1 - e^-phi).
double ztp_mean(double phi);

/// One ZTP draw by sequential inversion of the cumulative mass. phi must be
/// finite and > 0; throws std::runtime_error past 10^6 terms.
std::uint64_t sample_ztp(double phi, Rng& rng);

/// n i.i.d. draws by inverse transform through the model quantile.
std::vector<double> sample_ep(const Distribution& model, std::size_t n, Rng& rng);
std::vector<double> sample_ep(const Distribution& model, std::size_t n, std::uint64_t seed);

/// n draws through the latent construction: N ~ ZTP(|lambda|) baseline draws,
/// their minimum when lambda < 0 and maximum when lambda > 0. Distributionally
/// equal to sample_ep; kept as the unification oracle. Throws for |lambda|
/// under the continuity threshold (the construction needs lambda != 0).
std::vector<double> sample_latent(const EPFamily& model, std::size_t n, Rng& rng);
std::vector<double> sample_latent(const EPFamily& model, std::size_t n, std::uint64_t seed);

} // namespace epfamily
