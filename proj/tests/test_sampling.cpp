#include "doctest.h"

#include "epfamily/baselines.hpp"
#include "epfamily/rng.hpp"
#include "epfamily/ztp.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

using namespace epfamily;

namespace {

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_stat(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    double fa = static_cast<double>(i) / static_cast<double>(a.size());
    double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

} // namespace

TEST_CASE("Rng streams are deterministic and distinct") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());
  bool any_diff = false;
  Rng a2(42);
  for (int i = 0; i < 64; ++i) any_diff |= a2.next_u64() != c.next_u64();
  CHECK(any_diff);

  Rng s0 = Rng::stream(7, 0), s1 = Rng::stream(7, 1), s0b = Rng::stream(7, 0);
  CHECK(s0.next_u64() == s0b.next_u64());
  CHECK(Rng::stream(7, 0).next_u64() != s1.next_u64());
}

TEST_CASE("uniform stays in the open interval") {
  Rng r(123);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    double u = r.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("ztp pmf and mean") {
  // P(N=1) at phi=2 is 2/(e^2 - 1)
  CHECK(ztp_pmf(2.0, 1) == doctest::Approx(0.3130352854993312).epsilon(1e-13));
  CHECK(ztp_pmf(2.0, 0) == 0.0);
  double total = 0.0, ewn = 0.0;
  for (std::uint64_t n = 1; n <= 60; ++n) {
    double p = ztp_pmf(2.0, n);
    total += p;
    ewn += p * static_cast<double>(n);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ewn == doctest::Approx(ztp_mean(2.0)).epsilon(1e-12));
  CHECK(ztp_mean(2.0) == doctest::Approx(2.3130352854993315).epsilon(1e-14));
  CHECK_THROWS_AS(ztp_mean(0.0), std::domain_error);
  CHECK_THROWS_AS(ztp_pmf(-1.0, 2), std::domain_error);
}

TEST_CASE("sample_ztp draws match the pmf") {
  Rng rng(2024);
  const int n = 20000;
  std::vector<double> counts(8, 0.0);
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    std::uint64_t v = sample_ztp(2.0, rng);
    CHECK(v >= 1);
    m += static_cast<double>(v);
    if (v < counts.size()) counts[v] += 1.0;
  }
  m /= n;
  CHECK(m == doctest::Approx(ztp_mean(2.0)).epsilon(0.02));
  for (std::uint64_t k = 1; k <= 4; ++k)
    CHECK(counts[k] / n == doctest::Approx(ztp_pmf(2.0, k)).epsilon(0.08));
}

TEST_CASE("sample_ep is seed-reproducible") {
  EPFamily ep(std::make_shared<Exponential>(1.0), -2.0);
  auto a = sample_ep(ep, 200, 99);
  auto b = sample_ep(ep, 200, 99);
  auto c = sample_ep(ep, 200, 100);
  CHECK(a == b);
  CHECK(a != c);
  for (double t : a) CHECK(t > 0.0);
}

TEST_CASE("latent construction agrees with inverse transform") {
  // min of a ZTP(1.5) number of draws vs the closed-form quantile; the two
  // mechanisms share nothing but the distribution
  EPFamily ep(std::make_shared<Exponential>(2.0), -1.5);
  const std::size_t n = 20000;
  auto inv = sample_ep(ep, n, 11);
  auto lat = sample_latent(ep, n, 12);
  double d = ks_stat(std::move(inv), std::move(lat));
  double crit = 1.62762 * std::sqrt(2.0 / static_cast<double>(n)); // 1% level
  CHECK(d < crit);
}

TEST_CASE("compounding direction orders the samples") {
  auto base = std::make_shared<Exponential>(1.0);
  auto mn = sample_ep(EPFamily(base, -3.0), 20000, 5);
  auto mx = sample_ep(EPFamily(base, 3.0), 20000, 5);
  // same underlying uniforms, opposite compounding: max-form dominates
  CHECK(mean(mx) > mean(mn) + 0.5);
}

TEST_CASE("sample_latent rejects the limit regime") {
  EPFamily ep(std::make_shared<Exponential>(1.0), 0.0);
  CHECK_THROWS_AS(sample_latent(ep, 10, 1), std::domain_error);
}
