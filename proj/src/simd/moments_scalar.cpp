#include <algorithm>
#include <cmath>
#include <limits>

#include "dgldpc/simd/moments.hpp"

namespace dgldpc::simd {

Moments moments_scalar(const MonomialSpan& terms, double lx, double ly) {
  const std::size_t n = terms.log_coeff.size();
  double wmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    wmax = std::max(wmax, terms.log_coeff[i] + terms.u[i] * lx + terms.v[i] * ly);
  }
  double s0 = 0, su = 0, sv = 0, suu = 0, suv = 0, svv = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = terms.u[i];
    const double v = terms.v[i];
    const double e = std::exp(terms.log_coeff[i] + u * lx + v * ly - wmax);
    s0 += e;
    su += e * u;
    sv += e * v;
    suu += e * u * u;
    suv += e * u * v;
    svv += e * v * v;
  }
  Moments m;
  m.log_sum = wmax + std::log(s0);
  m.mean_u = su / s0;
  m.mean_v = sv / s0;
  m.var_u = std::max(0.0, suu / s0 - m.mean_u * m.mean_u);
  m.cov_uv = suv / s0 - m.mean_u * m.mean_v;
  m.var_v = std::max(0.0, svv / s0 - m.mean_v * m.mean_v);
  return m;
}

}  // namespace dgldpc::simd
