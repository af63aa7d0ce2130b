// Extended, PG-augmented, and JJ-surrogate log-likelihoods, plus the ELBO.
//
// Every double sum over (i, j) restricts to observed cells; the Gaussian
// random-effect term runs over all J bills. The PG(w;1,0) log-density is an
// infinite series that is constant in (Theta, nu), so the PG-augmented
// objective drops it and the ELBO carries the PG factors through the
// closed-form tilting KL instead. All bill sums reduce with a fixed pairwise
// tree, so results are bitwise reproducible for any worker count.

#pragma once

#include "rollcall/types.hpp"

namespace rollcall {

// log L_e: sum of Bernoulli log-likelihoods over observed cells plus
// log N2(beta_tilde_j; 0, Sigma) over all bills. Throws if Sigma is not PD.
double extended_loglik(const ModelParams& params, const BillParams& bills,
                       const RollCall& data);

// l_e^PG minus the theta/nu-free PG log-density terms:
//   sum_obs [log(1/2) + (y-1/2) x - w x^2 / 2] + Gaussian term.
// Throws if any observed-cell w <= 0 or Sigma is not PD.
double pg_augmented_loglik(const ModelParams& params, const BillParams& bills,
                           const MatrixXd& w, const RollCall& data);

// d l_e^PG / d theta_i = sum_{j in obs(i)} [(y-1/2) beta_j - w_ij (alpha_j beta_j + theta_i beta_j^2)]
VectorXd pg_augmented_grad_theta(const ModelParams& params, const BillParams& bills,
                                 const MatrixXd& w, const RollCall& data);

// Exact gradient of l_e^PG in nu = (s11, s12, s22); only the Gaussian term
// depends on nu:  -(J/2) tr(S^-1 dS) + (1/2) sum_j (S^-1 b_j)^T dS (S^-1 b_j).
Vector3d pg_augmented_grad_nu(const ModelParams& params, const BillParams& bills,
                              const RollCall& data);

// l_e^JJ over observed cells plus the Gaussian term; a lower bound on
// extended_loglik with equality iff xi_ij = |x_ij| on observed cells.
double jj_bound(const ModelParams& params, const BillParams& bills,
                const MatrixXd& xi, const RollCall& data);

// Q(params; q) = E_q[l_e^PG] with the constant E_q[log PG(w;1,0)] dropped:
//   sum_obs [log(1/2) + kappa * t_i'mu_j - wbar/2 * t_i'M_j t_i]
//   - J log 2pi - (J/2) log det Sigma - (1/2) sum_j tr(Sigma^-1 M_j),
// where M_j = cov_j + mu_j mu_j' and t_i = (1, theta_i).
double expected_pg_loglik(const ModelParams& params, const BillVariational& bill_q,
                          const PGVariational& pg_q, const RollCall& data);

// ELBO(q; params) in closed form: expected_pg_loglik plus the PG tilting
// terms  xi^2 wbar / 2 - log cosh(xi/2)  (= -KL of PG(1,xi) from PG(1,0))
// plus  -KL(q_j || N(0, Sigma))  in place of the Gaussian cross entropy.
double elbo(const ModelParams& params, const BillVariational& bill_q,
            const PGVariational& pg_q, const RollCall& data);

// log N2(b; 0, Sigma(nu))
double log_gaussian2(const Vector2d& b, const SigmaNu& nu);

}  // namespace rollcall
