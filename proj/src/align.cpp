#include "rollcall/align.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rollcall {

double mean_of(const VectorXd& v) { return v.mean(); }

double sd_of(const VectorXd& v) {
  const double m = v.mean();
  return std::sqrt((v.array() - m).square().mean());
}

double correlation(const VectorXd& a, const VectorXd& b) {
  if (a.size() != b.size()) throw std::invalid_argument("correlation: size mismatch");
  const double ma = a.mean(), mb = b.mean();
  const double cov = ((a.array() - ma) * (b.array() - mb)).mean();
  const double d = sd_of(a) * sd_of(b);
  if (d == 0.0) throw std::invalid_argument("correlation: zero variance input");
  return cov / d;
}

double spearman_rho(const VectorXd& a, const VectorXd& b) {
  auto ranks = [](const VectorXd& v) {
    const Index n = v.size();
    std::vector<Index> idx(n);
    std::iota(idx.begin(), idx.end(), Index(0));
    std::sort(idx.begin(), idx.end(), [&](Index x, Index y) { return v(x) < v(y); });
    VectorXd r(n);
    for (Index k = 0; k < n; ++k) r(idx[k]) = static_cast<double>(k);
    return r;
  };
  return correlation(ranks(a), ranks(b));
}

VectorXd align_estimates(const VectorXd& theta_hat, const VectorXd& reference) {
  if (theta_hat.size() != reference.size())
    throw std::invalid_argument("align_estimates: length mismatch");
  const double sd_ref = sd_of(reference);
  if (sd_ref == 0.0) throw std::invalid_argument("align_estimates: reference has zero variance");
  const double m = theta_hat.mean();
  const double sd = sd_of(theta_hat);
  if (sd == 0.0) throw std::invalid_argument("align_estimates: estimate has zero variance");
  VectorXd z = (theta_hat.array() - m) / sd;
  const double c = ((z.array()) * (reference.array() - reference.mean())).mean();
  if (c < 0.0) z = -z;
  return z;
}

}  // namespace rollcall
