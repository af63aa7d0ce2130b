// PG-VEM: outer EM with an inner CAVI over the Polya-Gamma cell factors and
// the per-bill Gaussian factors, closed-form M-step for Theta and Sigma.
//
// CAVI runs blockwise: all w factors update together given the bill factors,
// then all bill factors update together given the w factors. q_ij(w_ij)
// depends only on q_j and the parameters, and q_j only on column j of the w
// factors, so the block schedule reaches the same fixed points as the
// sequential one while vectorizing cleanly.

#pragma once

#include <cstdint>

#include "rollcall/types.hpp"

namespace rollcall {

enum class InitStrategy { row_mean_signs, double_centered_svd, user_supplied };

struct PGVemConfig {
  int max_outer_iters = 500;
  int max_cavi_iters = 50;
  double outer_tol = 1e-7;  // relative ELBO change
  double cavi_tol = 1e-6;   // max absolute change in mu entries
  std::uint64_t seed = 0;
  InitStrategy init_strategy = InitStrategy::double_centered_svd;
  VectorXd user_theta0;  // used when init_strategy == user_supplied
  int workers = 0;       // 0: ROLLCALL_VEM_WORKERS or hardware default

  void validate() const;
};

struct VariationalState {
  BillVariational bill_q;
  PGVariational pg_q;
};

struct CaviOutcome {
  VariationalState state;
  int iters = 0;
  bool converged = false;
};

// xi_ij = sqrt(t_i' (cov_j + mu_j mu_j') t_i) on observed cells, zero
// elsewhere. Quadratic forms below -1e-12 throw (non-PSD cov_j); values in
// [-1e-12, 0] clamp to zero. Shared by the PG CAVI w update and the JJ xi
// update so the two maps coincide bitwise.
MatrixXd xi_quadratic_map(const BillVariational& bill_q, const VectorXd& theta,
                          const RollCall& data, int workers = 0);

// xi_ij^2 = E_qj[(alpha_j + beta_j theta_i)^2]; wbar and var recomputed from
// xi through the PG moment maps.
PGVariational cavi_update_w(const BillVariational& bill_q, const ModelParams& params,
                            const RollCall& data, int workers = 0);

// cov_j = (Sigma^-1 + sum_{i in obs(j)} wbar_ij t_i t_i')^-1,
// mu_j  = cov_j * sum_{i in obs(j)} (y_ij - 1/2) t_i.
BillVariational cavi_update_beta(const PGVariational& pg_q, const ModelParams& params,
                                 const RollCall& data, int workers = 0);

// Alternates cavi_update_w / cavi_update_beta from the supplied warm start
// until max |delta mu| < cavi_tol or the iteration cap. Non-convergence is
// reported, not thrown.
CaviOutcome run_cavi(VariationalState state, const ModelParams& params, const RollCall& data,
                     const PGVemConfig& cfg);

// theta_i = sum_{j in obs(i)} [kappa_ij (mu_j)_2 - wbar_ij (M_j)_12]
//         / sum_{j in obs(i)} wbar_ij (M_j)_22,  M_j = cov_j + mu_j mu_j'.
// The wbar factor multiplies the cross term: this is the stationary point of
// the Q-function in theta_i.
VectorXd m_step_theta(const BillVariational& bill_q, const PGVariational& pg_q,
                      const RollCall& data, int workers = 0);

// Sigma = (1/J) sum_j (cov_j + mu_j mu_j')
Matrix2d m_step_sigma(const BillVariational& bill_q);

// Initial ideal points: standardized leading left singular vector of the
// double-centered, row-mean-imputed vote matrix, first coordinate forced
// nonnegative (breaks the sign symmetry deterministically).
VectorXd initial_theta(const RollCall& data, InitStrategy strategy,
                       const VectorXd& user_theta = VectorXd());

FitResult fit_pg_vem(const RollCall& data, const PGVemConfig& cfg = {});

}  // namespace rollcall
