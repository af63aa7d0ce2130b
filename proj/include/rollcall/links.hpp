// Scalar link functions and Polya-Gamma moment maps.

#pragma once

#include <cmath>

namespace rollcall {

// Logistic CDF, branch on sign so exp never overflows.
inline double sigmoid(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(1 + exp(x)) without overflow.
inline double softplus(double x) {
  if (x <= -37.0) return std::exp(x);
  if (x <= 18.0) return std::log1p(std::exp(x));
  if (x <= 33.3) return x + std::exp(-x);
  return x;
}

// log sigma(x) = -softplus(-x)
inline double log_sigmoid(double x) { return -softplus(-x); }

// log cosh(x), stable for large |x|.
inline double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - M_LN2;
}

// P(yea) = sigma(alpha_j + beta_j * theta_i), the 2PL link.
inline double vote_probability(double theta_i, double alpha_j, double beta_j) {
  return sigmoid(alpha_j + beta_j * theta_i);
}

// E[w] for w ~ PG(1, c) = tanh(c/2)/(2c); limit 1/4 at c = 0.
double pg_mean(double c);

// Var(w) for w ~ PG(1, c) = (sinh c - c) sech^2(c/2) / (4 c^3); limit 1/24.
double pg_variance(double c);

// Jaakkola-Jordan bound coefficient lambda(xi) = (1/2 - sigma(xi))/(2 xi);
// limit -1/8 at xi = 0. Always <= 0.
double jj_lambda(double xi);

}  // namespace rollcall
