// Identification alignment: ideal points are only identified up to an
// affine map and a sign, so estimates are standardized (mean 0, sd 1,
// population sd) and sign-matched to a reference before any comparison.

#pragma once

#include "rollcall/types.hpp"

namespace rollcall {

// s * (v - mean(v)) / sd(v) with s in {+1,-1} chosen so the correlation with
// `reference` is nonnegative (s = +1 on an exact tie). Throws when sd(v) = 0
// or the reference has no variance.
VectorXd align_estimates(const VectorXd& theta_hat, const VectorXd& reference);

double mean_of(const VectorXd& v);
double sd_of(const VectorXd& v);  // population sd
double correlation(const VectorXd& a, const VectorXd& b);
double spearman_rho(const VectorXd& a, const VectorXd& b);

}  // namespace rollcall
