#include "regsel/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace regsel {

double student_t_two_sided_pvalue(double t, int dof) {
  if (dof < 1) throw std::invalid_argument("student_t_two_sided_pvalue: dof must be >= 1");
  if (std::isnan(t)) throw std::invalid_argument("student_t_two_sided_pvalue: t is NaN");
  const double at = std::abs(t);
  if (at == 0.0) return 1.0;
  if (std::isinf(at)) return 0.0;
  // P(|T| >= t) = I_{v/(v+t^2)}(v/2, 1/2); use the complementary form when
  // t is small to keep precision.
  const double v = static_cast<double>(dof);
  const double x = v / (v + at * at);
  const double p = x < 0.5 ? boost::math::ibeta(0.5 * v, 0.5, x)
                           : boost::math::ibetac(0.5, 0.5 * v, at * at / (v + at * at));
  return std::clamp(p, 0.0, 1.0);
}

double chi_square_sf(double x, int dof) {
  if (dof < 1) throw std::invalid_argument("chi_square_sf: dof must be >= 1");
  if (!(x >= 0.0)) throw std::invalid_argument("chi_square_sf: x must be non-negative");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return std::clamp(boost::math::gamma_q(0.5 * dof, 0.5 * x), 0.0, 1.0);
}

double student_t_critical(double confidence, int dof) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("student_t_critical: confidence must lie in (0, 1)");
  }
  if (dof < 1) throw std::invalid_argument("student_t_critical: dof must be >= 1");
  boost::math::students_t dist(static_cast<double>(dof));
  return boost::math::quantile(dist, 1.0 - 0.5 * (1.0 - confidence));
}

}  // namespace regsel
