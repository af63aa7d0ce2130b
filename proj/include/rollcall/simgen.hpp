// Synthetic roll-call generators: the bimodal-mixture scenario, the
// template-driven scenario that reuses a fitted model and a real missingness
// pattern, and the utility-space (Gumbel) generator.
//
// Every draw comes from a named counter-based stream keyed by
// (seed, purpose, cell index), so generation is deterministic per seed and
// independent of evaluation order.

#pragma once

#include <cstdint>

#include "rollcall/types.hpp"

namespace rollcall {

struct ScenarioOneConfig {
  Index I = 400;
  Index J = 1000;
  std::uint64_t seed = 1;
  double mixture_weight = 0.5;          // weight of the first component
  Vector2d mixture_means{-2.0, 2.0};
  Vector2d mixture_sds{1.0, 1.0};
  Matrix2d sigma_beta = 2.0 * Matrix2d::Identity();

  void validate() const;
};

struct ScenarioDraw {
  RollCall data;
  VectorXd theta_true;
  BillParams bills_true;
};

// theta_i ~ w N(m1, s1^2) + (1-w) N(m2, s2^2), beta_tilde_j ~ N2(0, Sigma),
// Y_ij ~ Bernoulli(sigma(alpha_j + beta_j theta_i)), mask all-observed.
ScenarioDraw generate_scenario_one(const ScenarioOneConfig& cfg);

// Independent Bernoulli votes on the masked cells only.
RollCall generate_votes(const VectorXd& theta, const BillParams& bills, const MaskMatrix& mask,
                        std::uint64_t seed);

// Treats the template fit's theta and variational bill means as ground truth
// and generates votes on the supplied mask. The result must satisfy the
// RollCall coverage invariants (validated; an all-false mask is an error).
RollCall generate_scenario_two(const FitResult& template_fit, const MaskMatrix& mask,
                               std::uint64_t seed);

// Quadratic-utility vote generator with Gumbel(0, sigma_j) errors; vote yea
// iff U_yea - U_nay >= 0. Equivalent in distribution to the 2PL link with
// alpha_j = (psi_j^2 - zeta_j^2)/sigma_j, beta_j = 2(zeta_j - psi_j)/sigma_j.
RollCall generate_from_utilities(const SpatialVotingConfig& cfg, const VectorXd& theta,
                                 std::uint64_t seed);

// The (alpha, beta) implied by a utility-space configuration.
BillParams utility_link_params(const SpatialVotingConfig& cfg);

}  // namespace rollcall
