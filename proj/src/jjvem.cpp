#include "rollcall/jjvem.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rollcall/links.hpp"
#include "rollcall/parallel.hpp"

namespace rollcall {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
}

void JJVemConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("JJVemConfig: max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("JJVemConfig: tol must be > 0");
}

BillVariational jj_e_step(const ModelParams& params, const MatrixXd& xi, const RollCall& data,
                          int workers) {
  const Index I = data.I(), J = data.J();
  if (params.theta.size() != I || xi.rows() != I || xi.cols() != J)
    throw std::invalid_argument("jj_e_step: shape mismatch");
  const Matrix2d prior_prec = params.nu.inverse();
  BillVariational q;
  q.mu.resize(static_cast<std::size_t>(J));
  q.cov.resize(static_cast<std::size_t>(J));
  parallel_for(J, [&](std::size_t jlo, std::size_t jhi) {
    for (std::size_t j = jlo; j < jhi; ++j) {
      const auto jj = static_cast<Index>(j);
      double s0 = 0.0, s1 = 0.0, s2 = 0.0;  // sums of -2 lambda * {1, theta, theta^2}
      double r0 = 0.0, r1 = 0.0;
      for (Index i = 0; i < I; ++i) {
        if (!data.is_observed(i, jj)) continue;
        const double th = params.theta(i);
        const double c = -2.0 * jj_lambda(xi(i, jj));
        const double k = data.kappa(i, jj);
        s0 += c;
        s1 += c * th;
        s2 += c * th * th;
        r0 += k;
        r1 += k * th;
      }
      Matrix2d prec = prior_prec;
      prec(0, 0) += s0;
      prec(0, 1) += s1;
      prec(1, 0) += s1;
      prec(1, 1) += s2;
      const double det = prec(0, 0) * prec(1, 1) - prec(0, 1) * prec(1, 0);
      if (!(det > 0.0) || !(prec(0, 0) > 0.0))
        throw std::runtime_error("jj_e_step: per-bill precision not PD");
      Matrix2d cov;
      cov << prec(1, 1) / det, -prec(0, 1) / det, -prec(1, 0) / det, prec(0, 0) / det;
      q.cov[j] = 0.5 * (cov + cov.transpose());
      q.mu[j] = q.cov[j] * Vector2d(r0, r1);
    }
  }, workers);
  return q;
}

VectorXd jj_update_theta(const BillVariational& bill_q, const MatrixXd& xi, const RollCall& data,
                         int workers) {
  const Index I = data.I(), J = data.J();
  if (bill_q.J() != J) throw std::invalid_argument("jj_update_theta: shape mismatch");
  std::vector<double> m12(static_cast<std::size_t>(J)), m22(static_cast<std::size_t>(J)),
      mu2(static_cast<std::size_t>(J));
  for (Index j = 0; j < J; ++j) {
    const Matrix2d M = bill_q.second_moment(j);
    m12[static_cast<std::size_t>(j)] = M(0, 1);
    m22[static_cast<std::size_t>(j)] = M(1, 1);
    mu2[static_cast<std::size_t>(j)] = bill_q.mu[static_cast<std::size_t>(j)](1);
  }
  VectorXd theta(I);
  parallel_for(I, [&](std::size_t ilo, std::size_t ihi) {
    for (std::size_t i = ilo; i < ihi; ++i) {
      const auto ii = static_cast<Index>(i);
      double num = 0.0, den = 0.0;
      for (Index j = 0; j < J; ++j) {
        if (!data.is_observed(ii, j)) continue;
        const auto sj = static_cast<std::size_t>(j);
        const double l = jj_lambda(xi(ii, j));
        num += -data.kappa(ii, j) * mu2[sj] - 2.0 * l * m12[sj];
        den += 2.0 * l * m22[sj];
      }
      if (den == 0.0)
        throw std::runtime_error("jj_update_theta: zero denominator for legislator " +
                                 std::to_string(i));
      theta(ii) = num / den;
    }
  }, workers);
  return theta;
}

MatrixXd jj_update_xi(const ModelParams& params, const BillVariational& bill_q,
                      const RollCall& data, int workers) {
  return xi_quadratic_map(bill_q, params.theta, data, workers);
}

Matrix2d jj_update_sigma(const BillVariational& bill_q) { return m_step_sigma(bill_q); }

double jj_objective(const ModelParams& params, const BillVariational& bill_q,
                    const MatrixXd& xi, const RollCall& data) {
  const Index I = data.I(), J = data.J();
  const Matrix2d prec = params.nu.inverse();
  const double log_det_prior = std::log(params.nu.det());
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
        const double xij = xi(i, jj);
        s += data.votes(i, jj) * ex + log_sigmoid(xij) - 0.5 * (ex + xij) +
             jj_lambda(xij) * (ex2 - xij * xij);
      }
      s += -kLog2Pi - 0.5 * log_det_prior - 0.5 * (prec * M).trace();
      // Gaussian entropy: log(2 pi e) + (1/2) log det cov_j
      s += kLog2Pi + 1.0 + 0.5 * std::log(bill_q.cov[j].determinant());
      per_bill[j] = s;
    }
  });
  return tree_sum(per_bill);
}

FitResult fit_jj_vem(const RollCall& data, const JJVemConfig& cfg) {
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();
  const Index I = data.I(), J = data.J();

  FitResult fit;
  fit.params.theta = initial_theta(data, cfg.init_strategy, cfg.user_theta0);
  fit.params.nu = SigmaNu{2.0, 0.0, 2.0};
  BillVariational q = BillVariational::standard(J);
  MatrixXd xi = jj_update_xi(fit.params, q, data, cfg.workers);

  double prev = 0.0;
  for (int t = 0; t < cfg.max_iters; ++t) {
    q = jj_e_step(fit.params, xi, data, cfg.workers);
    fit.params.theta = jj_update_theta(q, xi, data, cfg.workers);
    xi = jj_update_xi(fit.params, q, data, cfg.workers);
    fit.params.nu = SigmaNu::from_matrix(jj_update_sigma(q));

    const double f = jj_objective(fit.params, q, xi, data);
    if (!fit.elbo_trace.empty() && f < prev - 1e-8 * std::max(1.0, std::abs(prev)))
      fit.diagnostics.elbo_monotone = false;
    fit.elbo_trace.push_back(f);
    fit.outer_iters = t + 1;
    if (t > 0 && std::abs(f - prev) < cfg.tol * std::max(1.0, std::abs(prev))) {
      fit.diagnostics.converged = true;
      prev = f;
      break;
    }
    prev = f;
  }
  fit.bill_q = std::move(q);
  fit.pg_q = PGVariational::zeros(I, J);
  fit.pg_q.xi = xi;  // wbar/var stay at the zero sentinel
  fit.diagnostics.outer_iters = fit.outer_iters;
  fit.diagnostics.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
          .count();
  return fit;
}

}  // namespace rollcall
