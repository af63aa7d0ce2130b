#include "rollcall/pgvem.hpp"

#include <Eigen/SVD>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rollcall/links.hpp"
#include "rollcall/loglik.hpp"
#include "rollcall/parallel.hpp"

namespace rollcall {

void PGVemConfig::validate() const {
  if (max_outer_iters < 1 || max_cavi_iters < 1)
    throw std::invalid_argument("PGVemConfig: iteration caps must be >= 1");
  if (!(outer_tol > 0.0) || !(cavi_tol > 0.0))
    throw std::invalid_argument("PGVemConfig: tolerances must be > 0");
}

MatrixXd xi_quadratic_map(const BillVariational& bill_q, const VectorXd& theta,
                          const RollCall& data, int workers) {
  const Index I = data.I(), J = data.J();
  if (bill_q.J() != J || theta.size() != I)
    throw std::invalid_argument("xi_quadratic_map: shape mismatch");
  MatrixXd xi = MatrixXd::Zero(I, J);
  parallel_for(J, [&](std::size_t jlo, std::size_t jhi) {
    for (std::size_t j = jlo; j < jhi; ++j) {
      const auto jj = static_cast<Index>(j);
      const Matrix2d M = bill_q.second_moment(jj);
      for (Index i = 0; i < I; ++i) {
        if (!data.is_observed(i, jj)) continue;
        const double th = theta(i);
        double xi2 = M(0, 0) + 2.0 * th * M(0, 1) + th * th * M(1, 1);
        if (xi2 < 0.0) {
          if (xi2 < -1e-12)
            throw std::runtime_error("xi update: negative quadratic form, cov_j not PSD");
          xi2 = 0.0;
        }
        xi(i, jj) = std::sqrt(xi2);
      }
    }
  }, workers);
  return xi;
}

PGVariational cavi_update_w(const BillVariational& bill_q, const ModelParams& params,
                            const RollCall& data, int workers) {
  const Index I = data.I(), J = data.J();
  PGVariational pg = PGVariational::zeros(I, J);
  pg.xi = xi_quadratic_map(bill_q, params.theta, data, workers);
  parallel_for(J, [&](std::size_t jlo, std::size_t jhi) {
    for (std::size_t j = jlo; j < jhi; ++j) {
      const auto jj = static_cast<Index>(j);
      for (Index i = 0; i < I; ++i) {
        if (!data.is_observed(i, jj)) continue;
        pg.wbar(i, jj) = pg_mean(pg.xi(i, jj));
        pg.var(i, jj) = pg_variance(pg.xi(i, jj));
      }
    }
  }, workers);
  return pg;
}

BillVariational cavi_update_beta(const PGVariational& pg_q, const ModelParams& params,
                                 const RollCall& data, int workers) {
  const Index I = data.I(), J = data.J();
  if (params.theta.size() != I) throw std::invalid_argument("cavi_update_beta: shape mismatch");
  const Matrix2d prior_prec = params.nu.inverse();
  BillVariational q;
  q.mu.resize(static_cast<std::size_t>(J));
  q.cov.resize(static_cast<std::size_t>(J));
  parallel_for(J, [&](std::size_t jlo, std::size_t jhi) {
    for (std::size_t j = jlo; j < jhi; ++j) {
      const auto jj = static_cast<Index>(j);
      double s0 = 0.0, s1 = 0.0, s2 = 0.0;  // sums of wbar * {1, theta, theta^2}
      double r0 = 0.0, r1 = 0.0;            // sums of kappa * {1, theta}
      for (Index i = 0; i < I; ++i) {
        if (!data.is_observed(i, jj)) continue;
        const double th = params.theta(i);
        const double wb = pg_q.wbar(i, jj);
        const double k = data.kappa(i, jj);
        s0 += wb;
        s1 += wb * th;
        s2 += wb * th * th;
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
        throw std::runtime_error("cavi_update_beta: singular per-bill precision");
      Matrix2d cov;
      cov << prec(1, 1) / det, -prec(0, 1) / det, -prec(1, 0) / det, prec(0, 0) / det;
      q.cov[j] = 0.5 * (cov + cov.transpose());
      q.mu[j] = q.cov[j] * Vector2d(r0, r1);
    }
  }, workers);
  return q;
}

CaviOutcome run_cavi(VariationalState state, const ModelParams& params, const RollCall& data,
                     const PGVemConfig& cfg) {
  CaviOutcome out;
  for (int s = 0; s < cfg.max_cavi_iters; ++s) {
    state.pg_q = cavi_update_w(state.bill_q, params, data, cfg.workers);
    BillVariational next = cavi_update_beta(state.pg_q, params, data, cfg.workers);
    double delta = 0.0;
    for (Index j = 0; j < data.J(); ++j)
      delta = std::max(delta, (next.mu[j] - state.bill_q.mu[j]).cwiseAbs().maxCoeff());
    state.bill_q = std::move(next);
    out.iters = s + 1;
    if (delta < cfg.cavi_tol) {
      out.converged = true;
      break;
    }
  }
  out.state = std::move(state);
  return out;
}

VectorXd m_step_theta(const BillVariational& bill_q, const PGVariational& pg_q,
                      const RollCall& data, int workers) {
  const Index I = data.I(), J = data.J();
  if (bill_q.J() != J) throw std::invalid_argument("m_step_theta: shape mismatch");
  // Per-bill pieces first (M_j shared across legislators), then row sums.
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
        const double wb = pg_q.wbar(ii, j);
        num += data.kappa(ii, j) * mu2[sj] - wb * m12[sj];
        den += wb * m22[sj];
      }
      if (!(den > 0.0))
        throw std::runtime_error("m_step_theta: nonpositive denominator for legislator " +
                                 std::to_string(i));
      theta(ii) = num / den;
    }
  }, workers);
  return theta;
}

Matrix2d m_step_sigma(const BillVariational& bill_q) {
  const Index J = bill_q.J();
  if (J < 1) throw std::invalid_argument("m_step_sigma: J must be >= 1");
  Matrix2d acc = Matrix2d::Zero();
  for (Index j = 0; j < J; ++j) acc += bill_q.second_moment(j);
  Matrix2d s = acc / static_cast<double>(J);
  return 0.5 * (s + s.transpose());
}

VectorXd initial_theta(const RollCall& data, InitStrategy strategy, const VectorXd& user_theta) {
  const Index I = data.I(), J = data.J();
  if (strategy == InitStrategy::user_supplied) {
    if (user_theta.size() != I)
      throw std::invalid_argument("initial_theta: user-supplied vector has wrong length");
    return user_theta;
  }
  VectorXd theta0;
  if (strategy == InitStrategy::row_mean_signs) {
    theta0.resize(I);
    double grand = 0.0;
    Index n = 0;
    for (Index i = 0; i < I; ++i)
      for (Index j = 0; j < J; ++j)
        if (data.is_observed(i, j)) { grand += data.votes(i, j); ++n; }
    grand /= static_cast<double>(n);
    for (Index i = 0; i < I; ++i) {
      double s = 0.0;
      Index c = 0;
      for (Index j = 0; j < J; ++j)
        if (data.is_observed(i, j)) { s += data.votes(i, j); ++c; }
      theta0(i) = (s / static_cast<double>(c) >= grand) ? 1.0 : -1.0;
    }
  } else {
    // Impute missing cells with the row mean, then double-center.
    MatrixXd A(I, J);
    for (Index i = 0; i < I; ++i) {
      double s = 0.0;
      Index c = 0;
      for (Index j = 0; j < J; ++j)
        if (data.is_observed(i, j)) { s += data.votes(i, j); ++c; }
      const double row_mean = c > 0 ? s / static_cast<double>(c) : 0.5;
      for (Index j = 0; j < J; ++j)
        A(i, j) = data.is_observed(i, j) ? data.votes(i, j) : row_mean;
    }
    const VectorXd row_means = A.rowwise().mean();
    const Eigen::RowVectorXd col_means = A.colwise().mean();
    const double grand = A.mean();
    A.colwise() -= row_means;
    A.rowwise() -= col_means;
    A.array() += grand;
    Eigen::BDCSVD<MatrixXd> svd(A, Eigen::ComputeThinU);
    theta0 = svd.matrixU().col(0);
  }
  const double sd = std::sqrt((theta0.array() - theta0.mean()).square().mean());
  if (sd > 0.0) theta0 = (theta0.array() - theta0.mean()) / sd;
  for (Index i = 0; i < I; ++i) {
    if (theta0(i) != 0.0) {
      if (theta0(i) < 0.0) theta0 = -theta0;
      break;
    }
  }
  return theta0;
}

FitResult fit_pg_vem(const RollCall& data, const PGVemConfig& cfg) {
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();
  const Index I = data.I(), J = data.J();

  FitResult fit;
  fit.params.theta = initial_theta(data, cfg.init_strategy, cfg.user_theta0);
  fit.params.nu = SigmaNu{2.0, 0.0, 2.0};
  VariationalState state{BillVariational::standard(J), PGVariational::zeros(I, J)};

  double prev_elbo = 0.0;
  for (int t = 0; t < cfg.max_outer_iters; ++t) {
    CaviOutcome cavi = run_cavi(std::move(state), fit.params, data, cfg);
    state = std::move(cavi.state);
    fit.diagnostics.cavi_iters.push_back(cavi.iters);

    fit.params.theta = m_step_theta(state.bill_q, state.pg_q, data, cfg.workers);
    fit.params.nu = SigmaNu::from_matrix(m_step_sigma(state.bill_q));

    const double e = elbo(fit.params, state.bill_q, state.pg_q, data);
    if (!fit.elbo_trace.empty() && e < prev_elbo - 1e-8 * std::max(1.0, std::abs(prev_elbo)))
      fit.diagnostics.elbo_monotone = false;
    fit.elbo_trace.push_back(e);
    fit.outer_iters = t + 1;
    if (t > 0 && std::abs(e - prev_elbo) < cfg.outer_tol * std::max(1.0, std::abs(prev_elbo))) {
      fit.diagnostics.converged = true;
      prev_elbo = e;
      break;
    }
    prev_elbo = e;
  }
  fit.bill_q = std::move(state.bill_q);
  fit.pg_q = std::move(state.pg_q);
  fit.diagnostics.outer_iters = fit.outer_iters;
  fit.diagnostics.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
          .count();
  return fit;
}

}  // namespace rollcall
