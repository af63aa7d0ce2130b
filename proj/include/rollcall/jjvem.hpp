// JJ-VEM baseline: EM on the Jaakkola-Jordan surrogate with alternating
// closed-form updates (E-step, then theta, then xi, then Sigma).
//
// The theta update is the stationary point of the surrogate Q-function;
// finite-difference stationarity is the arbiter of its exact form. The xi
// update is the same quadratic-form map used by the PG CAVI w update and is
// computed by the same code, so the two coincide bitwise on equal inputs.

#pragma once

#include "rollcall/pgvem.hpp"
#include "rollcall/types.hpp"

namespace rollcall {

struct JJVemConfig {
  int max_iters = 1000;
  double tol = 1e-7;  // relative change in the monitored JJ objective
  std::uint64_t seed = 0;
  InitStrategy init_strategy = InitStrategy::double_centered_svd;
  VectorXd user_theta0;
  int workers = 0;

  void validate() const;
};

// Conditional Gaussian under the surrogate:
//   cov_j = (Sigma^-1 - 2 sum_{i in obs(j)} lambda(xi_ij) t_i t_i')^-1,
//   mu_j  = cov_j * sum_{i in obs(j)} (y_ij - 1/2) t_i.
// lambda <= 0 keeps the precision PD; asserted anyway.
BillVariational jj_e_step(const ModelParams& params, const MatrixXd& xi, const RollCall& data,
                          int workers = 0);

// theta_i = sum_{j in obs(i)} [(1/2 - y_ij)(mu_j)_2 - 2 lambda(xi_ij)(M_j)_12]
//         / [2 sum_{j in obs(i)} lambda(xi_ij)(M_j)_22]
VectorXd jj_update_theta(const BillVariational& bill_q, const MatrixXd& xi, const RollCall& data,
                         int workers = 0);

// xi_ij = sqrt(t_i' M_j t_i) on observed cells, zero elsewhere.
MatrixXd jj_update_xi(const ModelParams& params, const BillVariational& bill_q,
                      const RollCall& data, int workers = 0);

// Same formula as m_step_sigma.
Matrix2d jj_update_sigma(const BillVariational& bill_q);

// Monitored convergence functional: E_q[l_e^JJ] + Gaussian entropy of q.
double jj_objective(const ModelParams& params, const BillVariational& bill_q,
                    const MatrixXd& xi, const RollCall& data);

// FitResult.pg_q holds xi with wbar/var left at zero (unused sentinels);
// elbo_trace holds the monitored JJ objective.
FitResult fit_jj_vem(const RollCall& data, const JJVemConfig& cfg = {});

}  // namespace rollcall
