#include "rollcall/simgen.hpp"

#include <Eigen/Cholesky>
#include <stdexcept>
#include <string>

#include "rollcall/links.hpp"
#include "rollcall/rng.hpp"

namespace rollcall {

namespace {
std::vector<std::string> default_ids(const char* prefix, Index n) {
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    std::string s = std::to_string(k + 1);
    ids.push_back(prefix + std::string(4 - std::min<std::size_t>(4, s.size()), '0') + s);
  }
  return ids;
}
}  // namespace

void ScenarioOneConfig::validate() const {
  if (I < 1 || J < 1) throw std::invalid_argument("ScenarioOneConfig: I, J must be >= 1");
  if (!(mixture_weight >= 0.0 && mixture_weight <= 1.0))
    throw std::invalid_argument("ScenarioOneConfig: mixture weight outside [0,1]");
  if (!(mixture_sds(0) > 0.0 && mixture_sds(1) > 0.0))
    throw std::invalid_argument("ScenarioOneConfig: mixture sds must be > 0");
  if (!SigmaNu::from_matrix(sigma_beta).positive_definite())
    throw std::invalid_argument("ScenarioOneConfig: sigma_beta not positive definite");
}

ScenarioDraw generate_scenario_one(const ScenarioOneConfig& cfg) {
  cfg.validate();
  ScenarioDraw out;
  out.theta_true.resize(cfg.I);
  for (Index i = 0; i < cfg.I; ++i) {
    rng::Stream s(cfg.seed, rng::Purpose::theta_draw, static_cast<std::uint64_t>(i));
    const int comp = s.next_bernoulli(cfg.mixture_weight) ? 0 : 1;
    out.theta_true(i) = cfg.mixture_means(comp) + cfg.mixture_sds(comp) * s.next_normal();
  }
  const Matrix2d chol = Eigen::LLT<Matrix2d>(cfg.sigma_beta).matrixL();
  out.bills_true.alpha.resize(cfg.J);
  out.bills_true.beta.resize(cfg.J);
  for (Index j = 0; j < cfg.J; ++j) {
    rng::Stream s(cfg.seed, rng::Purpose::bill_draw, static_cast<std::uint64_t>(j));
    const Vector2d z(s.next_normal(), s.next_normal());
    const Vector2d b = chol * z;
    out.bills_true.alpha(j) = b(0);
    out.bills_true.beta(j) = b(1);
  }
  MaskMatrix mask = MaskMatrix::Constant(cfg.I, cfg.J, 1);
  out.data = generate_votes(out.theta_true, out.bills_true, mask, cfg.seed);
  return out;
}

RollCall generate_votes(const VectorXd& theta, const BillParams& bills, const MaskMatrix& mask,
                        std::uint64_t seed) {
  const Index I = theta.size(), J = bills.J();
  if (mask.rows() != I || mask.cols() != J)
    throw std::invalid_argument("generate_votes: mask shape mismatch");
  RollCall rc;
  rc.votes = MatrixXd::Zero(I, J);
  rc.observed = mask;
  rc.legislator_ids = default_ids("L", I);
  rc.bill_ids = default_ids("B", J);
  for (Index j = 0; j < J; ++j) {
    for (Index i = 0; i < I; ++i) {
      if (!mask(i, j)) continue;
      rng::Stream s(seed, rng::Purpose::vote_draw,
                    static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(J) +
                        static_cast<std::uint64_t>(j));
      const double p = vote_probability(theta(i), bills.alpha(j), bills.beta(j));
      rc.votes(i, j) = s.next_bernoulli(p) ? 1.0 : 0.0;
    }
  }
  return rc;
}

RollCall generate_scenario_two(const FitResult& template_fit, const MaskMatrix& mask,
                               std::uint64_t seed) {
  const Index I = template_fit.params.theta.size();
  const Index J = template_fit.bill_q.J();
  if (mask.rows() != I || mask.cols() != J)
    throw std::invalid_argument("generate_scenario_two: mask does not match template dimensions");
  BillParams bills;
  bills.alpha.resize(J);
  bills.beta.resize(J);
  for (Index j = 0; j < J; ++j) {
    bills.alpha(j) = template_fit.bill_q.mu[static_cast<std::size_t>(j)](0);
    bills.beta(j) = template_fit.bill_q.mu[static_cast<std::size_t>(j)](1);
  }
  RollCall rc = generate_votes(template_fit.params.theta, bills, mask, seed);
  rc.validate();
  return rc;
}

BillParams utility_link_params(const SpatialVotingConfig& cfg) {
  const Index J = cfg.zeta.size();
  if (cfg.psi.size() != J || cfg.gumbel_scale.size() != J)
    throw std::invalid_argument("utility_link_params: config vectors differ in length");
  BillParams b;
  b.alpha.resize(J);
  b.beta.resize(J);
  for (Index j = 0; j < J; ++j) {
    if (!(cfg.gumbel_scale(j) > 0.0))
      throw std::invalid_argument("utility_link_params: gumbel scale must be > 0");
    b.alpha(j) = (cfg.psi(j) * cfg.psi(j) - cfg.zeta(j) * cfg.zeta(j)) / cfg.gumbel_scale(j);
    b.beta(j) = 2.0 * (cfg.zeta(j) - cfg.psi(j)) / cfg.gumbel_scale(j);
  }
  return b;
}

RollCall generate_from_utilities(const SpatialVotingConfig& cfg, const VectorXd& theta,
                                 std::uint64_t seed) {
  const Index I = theta.size(), J = cfg.zeta.size();
  if (cfg.psi.size() != J || cfg.gumbel_scale.size() != J)
    throw std::invalid_argument("generate_from_utilities: config vectors differ in length");
  RollCall rc;
  rc.votes = MatrixXd::Zero(I, J);
  rc.observed = MaskMatrix::Constant(I, J, 1);
  rc.legislator_ids = default_ids("L", I);
  rc.bill_ids = default_ids("B", J);
  for (Index j = 0; j < J; ++j) {
    if (!(cfg.gumbel_scale(j) > 0.0))
      throw std::invalid_argument("generate_from_utilities: gumbel scale must be > 0");
    for (Index i = 0; i < I; ++i) {
      rng::Stream s(seed, rng::Purpose::gumbel_draw,
                    static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(J) +
                        static_cast<std::uint64_t>(j));
      const double dz_yea = theta(i) - cfg.zeta(j);
      const double dz_nay = theta(i) - cfg.psi(j);
      const double u_yea = -dz_yea * dz_yea + s.next_gumbel(cfg.gumbel_scale(j));
      const double u_nay = -dz_nay * dz_nay + s.next_gumbel(cfg.gumbel_scale(j));
      rc.votes(i, j) = (u_yea - u_nay >= 0.0) ? 1.0 : 0.0;
    }
  }
  return rc;
}

}  // namespace rollcall
