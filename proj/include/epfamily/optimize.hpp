#pragma once

#include <functional>
#include <vector>

namespace epfamily {

using Objective = std::function<double(const std::vector<double>&)>;

struct OptimResult {
  std::vector<double> x;
  double f = 0.0;
  long iterations = 0;
  bool converged = false;
};

/// Nelder-Mead simplex minimization. Non-finite objective values are treated
/// as +inf (rejected points). Converged when both the function spread and the
/// vertex spread collapse below tol-derived thresholds.
OptimResult nelder_mead(const Objective& f, std::vector<double> x0, double tol,
                        long max_iterations);

/// Quasi-Newton (BFGS, inverse-Hessian form) polish with central-difference
/// gradients and Armijo backtracking. Intended to sharpen a simplex optimum,
/// not to search globally; returns its best point even on stall.
OptimResult bfgs_polish(const Objective& f, std::vector<double> x0, long max_iterations = 200);

/// Central-difference gradient, step h_i = cbrt(eps) * max(1, |x_i|).
std::vector<double> fd_gradient(const Objective& f, const std::vector<double>& x);

} // namespace epfamily
