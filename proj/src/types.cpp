#include "rollcall/types.hpp"

#include <stdexcept>
#include <string>

namespace rollcall {

Index RollCall::observed_count() const {
  Index n = 0;
  for (Index j = 0; j < J(); ++j)
    for (Index i = 0; i < I(); ++i)
      if (observed(i, j)) ++n;
  return n;
}

void RollCall::validate() const {
  if (observed.rows() != votes.rows() || observed.cols() != votes.cols())
    throw std::invalid_argument("RollCall: votes/observed shape mismatch");
  if (!legislator_ids.empty() && static_cast<Index>(legislator_ids.size()) != I())
    throw std::invalid_argument("RollCall: legislator_ids length mismatch");
  if (!bill_ids.empty() && static_cast<Index>(bill_ids.size()) != J())
    throw std::invalid_argument("RollCall: bill_ids length mismatch");
  if (I() == 0 || J() == 0) throw std::invalid_argument("RollCall: empty matrix");
  for (Index j = 0; j < J(); ++j)
    for (Index i = 0; i < I(); ++i)
      if (observed(i, j)) {
        const double y = votes(i, j);
        if (y != 0.0 && y != 1.0)
          throw std::invalid_argument("RollCall: non-binary vote at (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
      }
  for (Index i = 0; i < I(); ++i) {
    bool any = false;
    for (Index j = 0; j < J(); ++j)
      if (observed(i, j)) { any = true; break; }
    if (!any)
      throw std::invalid_argument("RollCall: legislator row " + std::to_string(i) +
                                  " has no observed vote");
  }
  for (Index j = 0; j < J(); ++j) {
    bool any = false;
    for (Index i = 0; i < I(); ++i)
      if (observed(i, j)) { any = true; break; }
    if (!any)
      throw std::invalid_argument("RollCall: bill column " + std::to_string(j) +
                                  " has no observed vote");
  }
}

Matrix2d SigmaNu::inverse() const {
  if (!positive_definite())
    throw std::invalid_argument("SigmaNu: covariance is not positive definite");
  const double d = det();
  Matrix2d inv;
  inv << s22 / d, -s12 / d, -s12 / d, s11 / d;
  return inv;
}

BillVariational BillVariational::standard(Index J) {
  BillVariational q;
  q.mu.assign(static_cast<std::size_t>(J), Vector2d::Zero());
  q.cov.assign(static_cast<std::size_t>(J), Matrix2d::Identity());
  return q;
}

}  // namespace rollcall
