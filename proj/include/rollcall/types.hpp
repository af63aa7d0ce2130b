// Domain types for roll-call ideal point estimation.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rollcall {

using Eigen::Index;
using Eigen::Matrix2d;
using Eigen::Matrix3d;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;

using MaskMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

// I x J binary vote matrix with an observation mask. votes(i,j) is 0/1 where
// observed(i,j) is nonzero and carries no meaning elsewhere. Loaders and
// generators are responsible for the row/column coverage invariant (see
// validate()); direct construction is allowed for library-level use.
struct RollCall {
  MatrixXd votes;
  MaskMatrix observed;
  std::vector<std::string> legislator_ids;
  std::vector<std::string> bill_ids;

  Index I() const { return votes.rows(); }
  Index J() const { return votes.cols(); }
  bool is_observed(Index i, Index j) const { return observed(i, j) != 0; }
  double kappa(Index i, Index j) const { return votes(i, j) - 0.5; }

  Index observed_count() const;
  // Throws std::invalid_argument on non-binary observed cells, shape
  // mismatches, or a row/column with no observed cell.
  void validate() const;
};

// Covariance of the bill random effects, parameterized by
// nu = (sigma11, sigma12, sigma22).
struct SigmaNu {
  double s11 = 1.0;
  double s12 = 0.0;
  double s22 = 1.0;

  double det() const { return s11 * s22 - s12 * s12; }
  bool positive_definite() const { return s11 > 0.0 && s22 > 0.0 && det() > 0.0; }
  Matrix2d matrix() const {
    Matrix2d m;
    m << s11, s12, s12, s22;
    return m;
  }
  Matrix2d inverse() const;  // throws if not positive definite
  static SigmaNu from_matrix(const Matrix2d& m) { return {m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1)}; }
};

// Fixed-effect ideal points and the random-effect covariance.
struct ModelParams {
  VectorXd theta;
  SigmaNu nu;
};

// Point values of the bill parameters; beta_tilde_j = (alpha_j, beta_j).
struct BillParams {
  VectorXd alpha;
  VectorXd beta;
  Index J() const { return alpha.size(); }
};

// Per-bill Gaussian variational factors q_j = N(mu[j], cov[j]).
struct BillVariational {
  std::vector<Vector2d> mu;
  std::vector<Matrix2d> cov;

  Index J() const { return static_cast<Index>(mu.size()); }
  // Second moment E_q[beta_tilde beta_tilde^T] = cov + mu mu^T.
  Matrix2d second_moment(Index j) const { return cov[j] + mu[j] * mu[j].transpose(); }
  static BillVariational standard(Index J);  // N(0, I) for every bill
};

// Per-cell Polya-Gamma tilt state. wbar and var are the PG(1, xi) mean and
// variance maps of xi, cached together; unobserved cells hold zeros and are
// excluded from every sum.
struct PGVariational {
  MatrixXd xi;
  MatrixXd wbar;
  MatrixXd var;

  static PGVariational zeros(Index I, Index J) {
    return {MatrixXd::Zero(I, J), MatrixXd::Zero(I, J), MatrixXd::Zero(I, J)};
  }
};

// Yea/nay policy positions and Gumbel scales for the utility-space vote
// generator. Used only to generate data, never recovered by estimation.
struct SpatialVotingConfig {
  VectorXd zeta;
  VectorXd psi;
  VectorXd gumbel_scale;
};

struct FitDiagnostics {
  bool converged = false;
  int outer_iters = 0;
  std::vector<int> cavi_iters;
  double wall_time_ms = 0.0;
  bool elbo_monotone = true;  // within 1e-8 relative slack
};

struct FitResult {
  ModelParams params;
  BillVariational bill_q;
  PGVariational pg_q;
  std::vector<double> elbo_trace;
  int outer_iters = 0;
  std::optional<VectorXd> se_theta;
  FitDiagnostics diagnostics;
};

// theta_tilde_i = (1, theta_i)
inline Vector2d theta_tilde(double theta_i) { return Vector2d(1.0, theta_i); }

}  // namespace rollcall
