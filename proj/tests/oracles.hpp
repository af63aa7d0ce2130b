// Independent test oracles: naive reference implementations and finite
// difference machinery. Everything here recomputes quantities from first
// principles, sharing no code path with the library functions under test.

#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "rollcall/rng.hpp"
#include "rollcall/types.hpp"

namespace oracle {

using rollcall::BillParams;
using rollcall::BillVariational;
using rollcall::Index;
using rollcall::MaskMatrix;
using rollcall::Matrix2d;
using rollcall::MatrixXd;
using rollcall::ModelParams;
using rollcall::PGVariational;
using rollcall::RollCall;
using rollcall::SigmaNu;
using rollcall::Vector2d;
using rollcall::VectorXd;

inline double naive_sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double naive_log_gauss2(const Vector2d& b, const Matrix2d& sigma) {
  const double det = sigma(0, 0) * sigma(1, 1) - sigma(0, 1) * sigma(1, 0);
  const double quad =
      (sigma(1, 1) * b(0) * b(0) - 2.0 * sigma(0, 1) * b(0) * b(1) + sigma(0, 0) * b(1) * b(1)) /
      det;
  return -std::log(2.0 * M_PI) - 0.5 * std::log(det) - 0.5 * quad;
}

// Term-by-term extended log-likelihood.
inline double naive_extended_loglik(const ModelParams& p, const BillParams& b,
                                    const RollCall& d) {
  double s = 0.0;
  for (Index i = 0; i < d.I(); ++i)
    for (Index j = 0; j < d.J(); ++j) {
      if (!d.is_observed(i, j)) continue;
      const double pr = naive_sigmoid(b.alpha(j) + b.beta(j) * p.theta(i));
      s += d.votes(i, j) * std::log(pr) + (1.0 - d.votes(i, j)) * std::log(1.0 - pr);
    }
  for (Index j = 0; j < d.J(); ++j)
    s += naive_log_gauss2(Vector2d(b.alpha(j), b.beta(j)), p.nu.matrix());
  return s;
}

inline double naive_pg_augmented(const ModelParams& p, const BillParams& b, const MatrixXd& w,
                                 const RollCall& d) {
  double s = 0.0;
  for (Index i = 0; i < d.I(); ++i)
    for (Index j = 0; j < d.J(); ++j) {
      if (!d.is_observed(i, j)) continue;
      const double x = b.alpha(j) + b.beta(j) * p.theta(i);
      s += std::log(0.5) + (d.votes(i, j) - 0.5) * x - 0.5 * w(i, j) * x * x;
    }
  for (Index j = 0; j < d.J(); ++j)
    s += naive_log_gauss2(Vector2d(b.alpha(j), b.beta(j)), p.nu.matrix());
  return s;
}

inline double naive_jj_bound(const ModelParams& p, const BillParams& b, const MatrixXd& xi,
                             const RollCall& d) {
  auto lam = [](double t) {
    if (std::abs(t) < 1e-10) return -0.125;
    return (0.5 - naive_sigmoid(t)) / (2.0 * t);
  };
  double s = 0.0;
  for (Index i = 0; i < d.I(); ++i)
    for (Index j = 0; j < d.J(); ++j) {
      if (!d.is_observed(i, j)) continue;
      const double x = b.alpha(j) + b.beta(j) * p.theta(i);
      const double t = xi(i, j);
      s += d.votes(i, j) * x + std::log(naive_sigmoid(t)) - 0.5 * (x + t) +
           lam(t) * (x * x - t * t);
    }
  for (Index j = 0; j < d.J(); ++j)
    s += naive_log_gauss2(Vector2d(b.alpha(j), b.beta(j)), p.nu.matrix());
  return s;
}

// log E[e^{-wt}] for w ~ PG(1, c) via the closed-form Laplace transform of
// the tilted distribution; its derivatives at t = 0 give the PG moments.
inline double pg_tilted_log_laplace(double t, double c) {
  return std::log(std::cosh(0.5 * c)) -
         std::log(std::cosh(std::sqrt(0.25 * c * c + 0.5 * t)));
}

// -K'(0) by central differences: the PG(1, c) mean.
inline double pg_mean_fd(double c, double h = 1e-6) {
  return -(pg_tilted_log_laplace(h, c) - pg_tilted_log_laplace(-h, c)) / (2.0 * h);
}

// K''(0) by central differences: the PG(1, c) variance.
inline double pg_variance_fd(double c, double h = 1e-4) {
  return (pg_tilted_log_laplace(h, c) - 2.0 * pg_tilted_log_laplace(0.0, c) +
          pg_tilted_log_laplace(-h, c)) /
         (h * h);
}

inline double fd_derivative(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double fd_second(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// Random problem instances. Masks keep every row and column covered by
// forcing the diagonal pattern observed.
struct Instance {
  RollCall data;
  ModelParams params;
  BillParams bills;
};

inline Instance random_instance(Index I, Index J, std::uint64_t seed, double missing_rate = 0.0) {
  rollcall::rng::Stream s(seed, rollcall::rng::Purpose::generic, 99);
  Instance inst;
  inst.params.theta.resize(I);
  for (Index i = 0; i < I; ++i) inst.params.theta(i) = 2.0 * s.next_normal();
  const double a = 0.5 + s.next_double(), c = 0.5 + s.next_double();
  const double b = 0.5 * std::min(a, c) * (2.0 * s.next_double() - 1.0);
  inst.params.nu = SigmaNu{a, b, c};
  inst.bills.alpha.resize(J);
  inst.bills.beta.resize(J);
  for (Index j = 0; j < J; ++j) {
    inst.bills.alpha(j) = s.next_normal();
    inst.bills.beta(j) = s.next_normal();
  }
  inst.data.votes = MatrixXd::Zero(I, J);
  inst.data.observed = MaskMatrix::Constant(I, J, 1);
  for (Index i = 0; i < I; ++i)
    for (Index j = 0; j < J; ++j) {
      if (missing_rate > 0.0 && s.next_double() < missing_rate && (j % I) != i && (i % J) != j)
        inst.data.observed(i, j) = 0;
      else
        inst.data.votes(i, j) = s.next_bernoulli(naive_sigmoid(
                                    inst.bills.alpha(j) + inst.bills.beta(j) * inst.params.theta(i)))
                                    ? 1.0
                                    : 0.0;
    }
  return inst;
}

// PG state with valid cached moments for an arbitrary nonnegative xi field.
inline PGVariational pg_from_xi(const MatrixXd& xi, const RollCall& d) {
  PGVariational pg = PGVariational::zeros(xi.rows(), xi.cols());
  for (Index i = 0; i < xi.rows(); ++i)
    for (Index j = 0; j < xi.cols(); ++j) {
      if (!d.is_observed(i, j)) continue;
      const double c = xi(i, j);
      pg.xi(i, j) = c;
      // same moment formulas, written independently
      pg.wbar(i, j) = c < 1e-8 ? 0.25 : std::tanh(0.5 * c) / (2.0 * c);
      const double sh = 1.0 / std::cosh(0.5 * c);
      pg.var(i, j) = c < 1e-3 ? 1.0 / 24.0 - c * c / 120.0
                              : (std::sinh(c) - c) * sh * sh / (4.0 * c * c * c);
    }
  return pg;
}

// Monte Carlo E[(alpha + beta*theta)^2] under N(mu, cov) with std::mt19937_64,
// independent of the library's RNG and quadratic-form code.
inline double mc_second_moment(const Vector2d& mu, const Matrix2d& cov, double theta,
                               std::uint64_t seed, int n = 1000000) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  const double l11 = std::sqrt(cov(0, 0));
  const double l21 = cov(1, 0) / l11;
  const double l22 = std::sqrt(cov(1, 1) - l21 * l21);
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double z1 = nd(gen), z2 = nd(gen);
    const double a = mu(0) + l11 * z1;
    const double b = mu(1) + l21 * z1 + l22 * z2;
    const double x = a + b * theta;
    acc += x * x;
  }
  return acc / n;
}

// Maximize a smooth 1-D function by FD Newton with backtracking.
inline double newton_max_1d(const std::function<double(double)>& f, double x0,
                            int iters = 100, double h = 1e-5) {
  double x = x0;
  for (int k = 0; k < iters; ++k) {
    const double g = fd_derivative(f, x, h);
    const double hh = fd_second(f, x, h * 10.0);
    double step = (hh < 0.0) ? -g / hh : (g > 0 ? 1.0 : -1.0) * 0.1;
    if (std::abs(step) > 1.0) step = step > 0 ? 1.0 : -1.0;
    double t = 1.0;
    const double f0 = f(x);
    while (t > 1e-12 && f(x + t * step) < f0) t *= 0.5;
    x += t * step;
    if (std::abs(t * step) < 1e-12) break;
  }
  return x;
}

// Random variational state with PD covariances.
inline BillVariational random_bill_q(Index J, std::uint64_t seed) {
  rollcall::rng::Stream s(seed, rollcall::rng::Purpose::generic, 7);
  BillVariational q;
  q.mu.resize(static_cast<std::size_t>(J));
  q.cov.resize(static_cast<std::size_t>(J));
  for (Index j = 0; j < J; ++j) {
    q.mu[static_cast<std::size_t>(j)] = Vector2d(s.next_normal(), s.next_normal());
    Matrix2d L = Matrix2d::Zero();
    L(0, 0) = 0.3 + s.next_double();
    L(1, 0) = 0.5 * s.next_normal();
    L(1, 1) = 0.3 + s.next_double();
    q.cov[static_cast<std::size_t>(j)] = L * L.transpose();
  }
  return q;
}

}  // namespace oracle
