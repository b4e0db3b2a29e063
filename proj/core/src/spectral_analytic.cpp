#include "schmidt_forge/spectral_analytic.hpp"

namespace schmidt_forge {

Rational ppt_threshold_exact(int d) {
  detail::require_even_dim(d, "ppt_threshold_analytic");
  if (d == 2) return Rational(1, 2);
  return Rational(1, d + 2);
}

double ppt_threshold_analytic(int d) {
  return static_cast<double>(ppt_threshold_exact(d));
}

}  // namespace schmidt_forge
