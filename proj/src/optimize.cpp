#include "epfamily/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace epfamily {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double guarded(const Objective& f, const std::vector<double>& x) {
  double v = f(x);
  return std::isnan(v) ? kInf : v;
}

} // namespace

OptimResult nelder_mead(const Objective& f, std::vector<double> x0, double tol,
                        long max_iterations) {
  const std::size_t k = x0.size();
  const double rho = 1.0, chi = 2.0, gamma = 0.5, sigma = 0.5;

  // conventional initial simplex: 5% relative perturbation per coordinate
  std::vector<std::vector<double>> v(k + 1, x0);
  for (std::size_t i = 0; i < k; ++i)
    v[i + 1][i] += x0[i] != 0.0 ? 0.05 * x0[i] : 0.00025;
  std::vector<double> fv(k + 1);
  for (std::size_t i = 0; i <= k; ++i) fv[i] = guarded(f, v[i]);

  std::vector<std::size_t> order(k + 1);
  std::vector<double> centroid(k), xr(k), xe(k), xc(k);
  long iter = 0;
  bool converged = false;

  while (iter < max_iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::size_t best = order[0], worst = order[k], second = order[k - 1];

    double fspread = fv[worst] - fv[best];
    double xspread = 0.0, xscale = 0.0;
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        xspread = std::max(xspread, std::fabs(v[i][j] - v[best][j]));
    for (std::size_t j = 0; j < k; ++j) xscale = std::max(xscale, std::fabs(v[best][j]));
    if (std::isfinite(fv[best]) && fspread <= tol * (1.0 + std::fabs(fv[best])) &&
        xspread <= std::sqrt(tol) * (1.0 + xscale)) {
      converged = true;
      break;
    }

    ++iter;
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i <= k; ++i)
        if (i != worst) s += v[i][j];
      centroid[j] = s / static_cast<double>(k);
    }

    for (std::size_t j = 0; j < k; ++j) xr[j] = centroid[j] + rho * (centroid[j] - v[worst][j]);
    double fr = guarded(f, xr);

    if (fr < fv[best]) {
      for (std::size_t j = 0; j < k; ++j) xe[j] = centroid[j] + chi * (xr[j] - centroid[j]);
      double fe = guarded(f, xe);
      if (fe < fr) {
        v[worst] = xe;
        fv[worst] = fe;
      } else {
        v[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      v[worst] = xr;
      fv[worst] = fr;
    } else {
      bool outside = fr < fv[worst];
      const std::vector<double>& toward = outside ? xr : v[worst];
      for (std::size_t j = 0; j < k; ++j) xc[j] = centroid[j] + gamma * (toward[j] - centroid[j]);
      double fc = guarded(f, xc);
      if (fc < (outside ? fr : fv[worst])) {
        v[worst] = xc;
        fv[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= k; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < k; ++j)
            v[i][j] = v[best][j] + sigma * (v[i][j] - v[best][j]);
          fv[i] = guarded(f, v[i]);
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= k; ++i)
    if (fv[i] < fv[best]) best = i;
  return {v[best], fv[best], iter, converged && std::isfinite(fv[best])};
}

std::vector<double> fd_gradient(const Objective& f, const std::vector<double>& x) {
  static const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
  std::size_t k = x.size();
  std::vector<double> g(k), xp = x;
  for (std::size_t i = 0; i < k; ++i) {
    double h = h0 * std::max(1.0, std::fabs(x[i]));
    xp[i] = x[i] + h;
    double fp = guarded(f, xp);
    xp[i] = x[i] - h;
    double fm = guarded(f, xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

OptimResult bfgs_polish(const Objective& f, std::vector<double> x0, long max_iterations) {
  const std::size_t k = x0.size();
  std::vector<double> x = std::move(x0);
  double fx = guarded(f, x);
  if (!std::isfinite(fx)) return {x, fx, 0, false};

  std::vector<double> g = fd_gradient(f, x);
  std::vector<std::vector<double>> hinv(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) hinv[i][i] = 1.0;

  std::vector<double> d(k), xn(k), gn(k), s(k), y(k), hy(k);
  long iter = 0;
  bool converged = false;

  for (; iter < max_iterations; ++iter) {
    double gnorm = 0.0;
    for (double gi : g) gnorm = std::max(gnorm, std::fabs(gi));
    if (!std::isfinite(gnorm)) break;
    if (gnorm <= 1e-7 * (1.0 + std::fabs(fx))) {
      converged = true;
      break;
    }

    double gd = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double di = 0.0;
      for (std::size_t j = 0; j < k; ++j) di -= hinv[i][j] * g[j];
      d[i] = di;
      gd += g[i] * di;
    }
    if (!(gd < 0.0)) { // not a descent direction: reset to steepest descent
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) hinv[i][j] = i == j ? 1.0 : 0.0;
        d[i] = -g[i];
      }
      gd = 0.0;
      for (std::size_t i = 0; i < k; ++i) gd += g[i] * d[i];
      if (!(gd < 0.0)) break;
    }

    double t = 1.0;
    double fn = kInf;
    while (t > 1e-14) {
      for (std::size_t i = 0; i < k; ++i) xn[i] = x[i] + t * d[i];
      fn = guarded(f, xn);
      if (fn <= fx + 1e-4 * t * gd) break;
      t *= 0.5;
    }
    if (!(fn < fx)) { // no progress along the line
      converged = gnorm <= 1e-5 * (1.0 + std::fabs(fx));
      break;
    }

    gn = fd_gradient(f, xn);
    double sy = 0.0, snorm = 0.0, ynorm = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = gn[i] - g[i];
      sy += s[i] * y[i];
      snorm += s[i] * s[i];
      ynorm += y[i] * y[i];
    }
    if (sy > 1e-10 * std::sqrt(snorm * ynorm)) {
      for (std::size_t i = 0; i < k; ++i) {
        double v = 0.0;
        for (std::size_t j = 0; j < k; ++j) v += hinv[i][j] * y[j];
        hy[i] = v;
      }
      double yhy = 0.0;
      for (std::size_t i = 0; i < k; ++i) yhy += y[i] * hy[i];
      double c1 = (sy + yhy) / (sy * sy);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          hinv[i][j] += c1 * s[i] * s[j] - (hy[i] * s[j] + s[i] * hy[j]) / sy;
    }
    x = xn;
    fx = fn;
    g = gn;
  }
  return {x, fx, iter, converged};
}

} // namespace epfamily
