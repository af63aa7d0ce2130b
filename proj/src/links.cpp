#include "rollcall/links.hpp"

namespace rollcall {

double pg_mean(double c) {
  if (c < 1e-8) return 0.25;
  return std::tanh(0.5 * c) / (2.0 * c);
}

double pg_variance(double c) {
  if (c < 1e-4) {
    // sinh(c) - c cancels catastrophically; switch to the series
    // 1/24 - c^2/120 + 17 c^4/13440.
    const double c2 = c * c;
    return 1.0 / 24.0 - c2 / 120.0 + 17.0 * c2 * c2 / 13440.0;
  }
  const double sech_half = 1.0 / std::cosh(0.5 * c);
  return (std::sinh(c) - c) * sech_half * sech_half / (4.0 * c * c * c);
}

double jj_lambda(double xi) {
  const double a = std::abs(xi);  // lambda is even
  if (a < 1e-8) return -0.125;
  return (0.5 - sigmoid(a)) / (2.0 * a);
}

}  // namespace rollcall
