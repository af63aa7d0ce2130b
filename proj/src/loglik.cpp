#include "rollcall/loglik.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rollcall/links.hpp"
#include "rollcall/parallel.hpp"

namespace rollcall {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kLogHalf = -0.69314718055994530942;

void check_shapes(const ModelParams& params, const BillParams& bills, const RollCall& data) {
  if (params.theta.size() != data.I())
    throw std::invalid_argument("theta length does not match legislator count");
  if (bills.J() != data.J() || bills.beta.size() != bills.alpha.size())
    throw std::invalid_argument("bill parameter length does not match bill count");
}
}  // namespace

double log_gaussian2(const Vector2d& b, const SigmaNu& nu) {
  const Matrix2d prec = nu.inverse();
  return -kLog2Pi - 0.5 * std::log(nu.det()) - 0.5 * b.dot(prec * b);
}

double extended_loglik(const ModelParams& params, const BillParams& bills,
                       const RollCall& data) {
  check_shapes(params, bills, data);
  const Matrix2d prec = params.nu.inverse();
  const double log_det = std::log(params.nu.det());
  const Index I = data.I(), J = data.J();
  std::vector<double> per_bill(static_cast<std::size_t>(J));
  parallel_for(J, [&](std::size_t jlo, std::size_t jhi) {
    for (std::size_t j = jlo; j < jhi; ++j) {
      const auto jj = static_cast<Index>(j);
      double s = 0.0;
      for (Index i = 0; i < I; ++i) {
        if (!data.is_observed(i, jj)) continue;
        const double x = bills.alpha(jj) + bills.beta(jj) * params.theta(i);
        // y x - log(1 + e^x)
        s += data.votes(i, jj) * x - softplus(x);
      }
      const Vector2d b(bills.alpha(jj), bills.beta(jj));
      s += -kLog2Pi - 0.5 * log_det - 0.5 * b.dot(prec * b);
      per_bill[j] = s;
    }
  });
  return tree_sum(per_bill);
}

double pg_augmented_loglik(const ModelParams& params, const BillParams& bills,
                           const MatrixXd& w, const RollCall& data) {
  check_shapes(params, bills, data);
  const Matrix2d prec = params.nu.inverse();
  const double log_det = std::log(params.nu.det());
  const Index I = data.I(), J = data.J();
  std::vector<double> per_bill(static_cast<std::size_t>(J));
  parallel_for(J, [&](std::size_t jlo, std::size_t jhi) {
    for (std::size_t j = jlo; j < jhi; ++j) {
      const auto jj = static_cast<Index>(j);
      double s = 0.0;
      for (Index i = 0; i < I; ++i) {
        if (!data.is_observed(i, jj)) continue;
        if (!(w(i, jj) > 0.0))
          throw std::invalid_argument("pg_augmented_loglik: nonpositive w on an observed cell");
        const double x = bills.alpha(jj) + bills.beta(jj) * params.theta(i);
        s += kLogHalf + data.kappa(i, jj) * x - 0.5 * w(i, jj) * x * x;
      }
      const Vector2d b(bills.alpha(jj), bills.beta(jj));
      s += -kLog2Pi - 0.5 * log_det - 0.5 * b.dot(prec * b);
      per_bill[j] = s;
    }
  });
  return tree_sum(per_bill);
}

VectorXd pg_augmented_grad_theta(const ModelParams& params, const BillParams& bills,
                                 const MatrixXd& w, const RollCall& data) {
  check_shapes(params, bills, data);
  const Index I = data.I(), J = data.J();
  VectorXd grad(I);
  for (Index i = 0; i < I; ++i) {
    double g = 0.0;
    for (Index j = 0; j < J; ++j) {
      if (!data.is_observed(i, j)) continue;
      const double a = bills.alpha(j), b = bills.beta(j);
      g += data.kappa(i, j) * b - w(i, j) * (a * b + params.theta(i) * b * b);
    }
    grad(i) = g;
  }
  return grad;
}

Vector3d pg_augmented_grad_nu(const ModelParams& params, const BillParams& bills,
                              const RollCall& data) {
  const Matrix2d prec = params.nu.inverse();
  const Index J = data.J();
  // d/dnu [-(J/2) log det S] = -(J/2) (S^-1)_ab * (2 - delta_ab adjustment),
  // d/dnu [-(1/2) b'S^-1 b]  = +(1/2) u' dS u with u = S^-1 b.
  Matrix2d usum = Matrix2d::Zero();
  for (Index j = 0; j < J; ++j) {
    const Vector2d u = prec * Vector2d(bills.alpha(j), bills.beta(j));
    usum += u * u.transpose();
  }
  Vector3d g;
  g(0) = -0.5 * J * prec(0, 0) + 0.5 * usum(0, 0);
  g(1) = -1.0 * J * prec(0, 1) + usum(0, 1);  // sigma12 moves both off-diagonals
  g(2) = -0.5 * J * prec(1, 1) + 0.5 * usum(1, 1);
  return g;
}

double jj_bound(const ModelParams& params, const BillParams& bills,
                const MatrixXd& xi, const RollCall& data) {
  check_shapes(params, bills, data);
  const Matrix2d prec = params.nu.inverse();
  const double log_det = std::log(params.nu.det());
  const Index I = data.I(), J = data.J();
  std::vector<double> per_bill(static_cast<std::size_t>(J));
  parallel_for(J, [&](std::size_t jlo, std::size_t jhi) {
    for (std::size_t j = jlo; j < jhi; ++j) {
      const auto jj = static_cast<Index>(j);
      double s = 0.0;
      for (Index i = 0; i < I; ++i) {
        if (!data.is_observed(i, jj)) continue;
        const double x = bills.alpha(jj) + bills.beta(jj) * params.theta(i);
        const double xij = xi(i, jj);
        s += data.votes(i, jj) * x + log_sigmoid(xij) - 0.5 * (x + xij) +
             jj_lambda(xij) * (x * x - xij * xij);
      }
      const Vector2d b(bills.alpha(jj), bills.beta(jj));
      s += -kLog2Pi - 0.5 * log_det - 0.5 * b.dot(prec * b);
      per_bill[j] = s;
    }
  });
  return tree_sum(per_bill);
}

double expected_pg_loglik(const ModelParams& params, const BillVariational& bill_q,
                          const PGVariational& pg_q, const RollCall& data) {
  if (params.theta.size() != data.I() || bill_q.J() != data.J())
    throw std::invalid_argument("expected_pg_loglik: shape mismatch");
  const Matrix2d prec = params.nu.inverse();
  const double log_det = std::log(params.nu.det());
  const Index I = data.I(), J = data.J();
  std::vector<double> per_bill(static_cast<std::size_t>(J));
  parallel_for(J, [&](std::size_t jlo, std::size_t jhi) {
    for (std::size_t j = jlo; j < jhi; ++j) {
      const auto jj = static_cast<Index>(j);
      const Matrix2d M = bill_q.second_moment(jj);
      const Vector2d& mu = bill_q.mu[j];
      double s = 0.0;
      for (Index i = 0; i < I; ++i) {
        if (!data.is_observed(i, jj)) continue;
        const double th = params.theta(i);
        const double ex = mu(0) + th * mu(1);
        const double ex2 = M(0, 0) + 2.0 * th * M(0, 1) + th * th * M(1, 1);
        s += kLogHalf + data.kappa(i, jj) * ex - 0.5 * pg_q.wbar(i, jj) * ex2;
      }
      s += -kLog2Pi - 0.5 * log_det - 0.5 * (prec * M).trace();
      per_bill[j] = s;
    }
  });
  return tree_sum(per_bill);
}

double elbo(const ModelParams& params, const BillVariational& bill_q,
            const PGVariational& pg_q, const RollCall& data) {
  if (params.theta.size() != data.I() || bill_q.J() != data.J())
    throw std::invalid_argument("elbo: shape mismatch");
  const Matrix2d prec = params.nu.inverse();
  const double log_det_prior = std::log(params.nu.det());
  const Index I = data.I(), J = data.J();
  std::vector<double> per_bill(static_cast<std::size_t>(J));
  parallel_for(J, [&](std::size_t jlo, std::size_t jhi) {
    for (std::size_t j = jlo; j < jhi; ++j) {
      const auto jj = static_cast<Index>(j);
      const Matrix2d M = bill_q.second_moment(jj);
      const Vector2d& mu = bill_q.mu[j];
      double s = 0.0;
      for (Index i = 0; i < I; ++i) {
        if (!data.is_observed(i, jj)) continue;
        const double th = params.theta(i);
        const double ex = mu(0) + th * mu(1);
        const double ex2 = M(0, 0) + 2.0 * th * M(0, 1) + th * th * M(1, 1);
        const double xij = pg_q.xi(i, jj);
        const double wb = pg_q.wbar(i, jj);
        // data term under q, then -KL(PG(1,xi) || PG(1,0))
        s += kLogHalf + data.kappa(i, jj) * ex - 0.5 * wb * ex2;
        s += 0.5 * xij * xij * wb - log_cosh(0.5 * xij);
      }
      // -KL(N(mu, cov) || N(0, Sigma))
      const double log_det_q = std::log(bill_q.cov[j].determinant());
      s += -0.5 * ((prec * M).trace() - 2.0 - log_det_q + log_det_prior);
      per_bill[j] = s;
    }
  });
  return tree_sum(per_bill);
}

}  // namespace rollcall
