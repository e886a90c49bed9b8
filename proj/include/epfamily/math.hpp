#pragma once

namespace epfamily {

/// |lambda| below this routes every family function to its baseline limit,
/// keeping objectives continuous across lambda = 0.
inline constexpr double kLambdaThreshold = 1e-8;

/// |lambda| above this overflows intermediate exponentials; rejected as a
/// domain error by the family constructors.
inline constexpr double kLambdaMax = 700.0;

/// Normalizing constant c(lambda) = lambda / (1 - e^-lambda), > 0 for all
/// nonzero lambda; returns 1 (the limit) when |lambda| < kLambdaThreshold.
/// Throws std::domain_error for non-finite lambda.
double norm_const(double lambda);

/// log c(lambda), computed branchwise so no negative intermediate is ever
/// passed to a logarithm.
double log_norm_const(double lambda);

/// Quantile transport map q(p, lambda) = log((e^lambda - 1)p + 1) / lambda,
/// the probability fed to the baseline quantile. Monotone in p, q(0)=0,
/// q(1)=1, and q -> p as lambda -> 0. Throws for p outside [0, 1].
double q_transform(double p, double lambda);

/// Standard normal quantile (inverse cdf), Wichura's AS 241 rational
/// approximation. p in (0, 1); p = 0.5 gives exactly 0.
double normal_quantile(double p);

} // namespace epfamily
