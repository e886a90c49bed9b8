#include "doctest.h"

#include "epfamily/baselines.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

using namespace epfamily;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

// Batch overrides must agree with the scalar virtuals they shadow.
void check_batch_consistency(const Distribution& d, const std::vector<double>& ts) {
  std::vector<double> out(ts.size());
  d.log_density_batch(ts.data(), out.data(), ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double ref = d.log_density(ts[i]);
    if (std::isinf(ref))
      CHECK(out[i] == ref);
    else
      CHECK(out[i] == doctest::Approx(ref).epsilon(1e-13));
  }
  d.survival_batch(ts.data(), out.data(), ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    CHECK(out[i] == doctest::Approx(d.survival(ts[i])).epsilon(1e-13));
  d.log_survival_batch(ts.data(), out.data(), ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    CHECK(out[i] == doctest::Approx(d.log_survival(ts[i])).epsilon(1e-13));
}
} // namespace

TEST_CASE("Exponential closed forms") {
  Exponential e(2.0);
  CHECK(e.cdf(1.0) == doctest::Approx(0.8646647167633873).epsilon(1e-15));
  CHECK(e.survival(1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(e.log_survival(1.0) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(e.density(0.5) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
  CHECK(e.hazard(0.25) == 2.0);
  CHECK(e.hazard(100.0) == 2.0); // constant hazard, even deep in the tail
  CHECK(e.quantile(0.5) == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-15));
  CHECK(e.quantile(0.0) == 0.0);
  CHECK(e.cdf(-1.0) == 0.0);
  CHECK(e.survival(-1.0) == 1.0);
  CHECK(e.log_density(-0.1) == -kInf);
  CHECK_THROWS_AS(e.quantile(1.0), std::domain_error);
  CHECK_THROWS_AS(Exponential(0.0), std::domain_error);
  CHECK_THROWS_AS(Exponential(-2.0), std::domain_error);
  check_batch_consistency(e, {0.0, 0.1, 0.5, 1.0, 3.0, 10.0});
}

TEST_CASE("Weibull reduces to Exponential at alpha = 1") {
  Weibull w(1.0, 1.7);
  Exponential e(1.7);
  for (double t : {0.0, 0.05, 0.3, 1.0, 4.0}) {
    CHECK(w.cdf(t) == doctest::Approx(e.cdf(t)).epsilon(1e-14));
    CHECK(w.log_density(t) == doctest::Approx(e.log_density(t)).epsilon(1e-13));
    CHECK(w.survival(t) == doctest::Approx(e.survival(t)).epsilon(1e-14));
  }
  for (double p : {0.1, 0.5, 0.9})
    CHECK(w.quantile(p) == doctest::Approx(e.quantile(p)).epsilon(1e-13));
}

TEST_CASE("Weibull shapes") {
  Weibull w(2.0, 1.0);
  CHECK(w.cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(w.quantile(0.5) == doctest::Approx(0.8325546111576977).epsilon(1e-14));
  CHECK(w.hazard(0.5) == doctest::Approx(2.0 * 0.5).epsilon(1e-13)); // alpha beta t^{alpha-1}
  CHECK(w.log_density(0.0) == -kInf);                                // increasing hazard: f(0) = 0
  Weibull dec(0.5, 1.0);
  CHECK(dec.log_density(0.0) == kInf); // decreasing hazard: f blows up at 0
  for (double p : {0.01, 0.2, 0.5, 0.8, 0.99}) {
    CHECK(w.cdf(w.quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    CHECK(dec.cdf(dec.quantile(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(Weibull(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(Weibull(1.0, -1.0), std::domain_error);
  check_batch_consistency(w, {0.0, 0.1, 0.5, 1.0, 2.0, 5.0});
  check_batch_consistency(dec, {0.1, 0.5, 1.0, 2.0, 5.0});
}

TEST_CASE("Gev Gumbel branch") {
  Gev g(0.0, 1.0, 0.0);
  CHECK(g.cdf(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(g.support().lower == -kInf);
  CHECK(g.support().upper == kInf);
  for (double p : {0.05, 0.37, 0.5, 0.95}) {
    double t = g.quantile(p);
    CHECK(t == doctest::Approx(-std::log(-std::log(p))).epsilon(1e-13));
    CHECK(g.cdf(t) == doctest::Approx(p).epsilon(1e-12));
  }
  // sub-threshold xi takes the same branch: no jump across the switch
  Gev g2(0.0, 1.0, 1e-9);
  CHECK(g2.cdf(0.7) == doctest::Approx(g.cdf(0.7)).epsilon(1e-7));
}

TEST_CASE("Gev bounded supports") {
  Gev pos(1.0, 2.0, 0.5); // lower endpoint 1 - 2/0.5 = -3
  CHECK(pos.support().lower == doctest::Approx(-3.0));
  CHECK(pos.support().upper == kInf);
  CHECK(pos.cdf(-3.5) == 0.0);
  CHECK(pos.log_density(-4.0) == -kInf);
  CHECK(pos.quantile(0.0) == doctest::Approx(-3.0));

  Gev neg(0.0, 1.0, -0.4); // upper endpoint 0 + 1/0.4 = 2.5
  CHECK(neg.support().upper == doctest::Approx(2.5));
  CHECK(neg.cdf(2.5) == 1.0);
  CHECK(neg.cdf(3.0) == 1.0);
  CHECK(neg.quantile(1.0) == doctest::Approx(2.5));
  CHECK_THROWS_AS(neg.quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(pos.quantile(1.0), std::domain_error);

  for (const Gev& g : {pos, neg})
    for (double p : {0.02, 0.3, 0.6, 0.97})
      CHECK(g.cdf(g.quantile(p)) == doctest::Approx(p).epsilon(1e-12));

  CHECK_THROWS_AS(Gev(0.0, 0.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(Gev(0.0, -1.0, 0.1), std::domain_error);
}

TEST_CASE("Gev r function at the support edges") {
  Gev pos(0.0, 1.0, 0.5);
  CHECK(pos.r(1.0) == doctest::Approx(std::pow(1.5, -2.0)).epsilon(1e-13));
  CHECK(pos.r(-2.0) == kInf); // at/below the lower endpoint
  Gev neg(0.0, 1.0, -0.5);
  CHECK(neg.r(2.0) == 0.0); // at/above the upper endpoint
}

TEST_CASE("Exponentiated power wrapper") {
  auto inner = std::make_shared<Exponential>(1.0);
  Exponentiated x(inner, 3.0);
  for (double t : {0.2, 1.0, 2.5}) {
    double gi = inner->cdf(t);
    CHECK(x.cdf(t) == doctest::Approx(gi * gi * gi).epsilon(1e-14));
    // density: alpha G^{alpha-1} g
    CHECK(x.density(t) == doctest::Approx(3.0 * gi * gi * inner->density(t)).epsilon(1e-12));
  }
  for (double p : {0.03, 0.4, 0.9})
    CHECK(x.cdf(x.quantile(p)) == doctest::Approx(p).epsilon(1e-12));

  Exponentiated id(inner, 1.0);
  for (double t : {0.1, 1.0, 3.0})
    CHECK(id.cdf(t) == doctest::Approx(inner->cdf(t)).epsilon(1e-14));

  CHECK_THROWS_AS(Exponentiated(nullptr, 2.0), std::domain_error);
  CHECK_THROWS_AS(Exponentiated(inner, 0.0), std::domain_error);
}

TEST_CASE("Exponentiated log_survival keeps the deep tail") {
  auto inner = std::make_shared<Exponential>(1.0);
  Exponentiated x(inner, 3.0);
  // 1 - (1 - e^{-t})^3 ~ 3 e^{-t}; a route through cdf() loses this entirely
  // once the inner cdf rounds to 1
  for (double t : {40.0, 100.0, 400.0})
    CHECK(x.log_survival(t) == doctest::Approx(std::log(3.0) - t).epsilon(1e-10));
  CHECK(x.log_survival(0.0) == 0.0);
  // near zero the survival is ~1 and log_survival must not lose the tiny mass:
  // S = 1 - (t - t^2/2)^3 ~ 1 - t^3
  double t = 1e-4;
  CHECK(x.log_survival(t) == doctest::Approx(std::log1p(-std::pow(-std::expm1(-t), 3.0)))
                                 .epsilon(1e-10));
}
