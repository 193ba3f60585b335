#include "dgldpc/wef/log_eval.hpp"

#include <cmath>
#include <string>

#include "dgldpc/error.hpp"
#include "dgldpc/wef/exact_poly.hpp"

namespace dgldpc::wef {

namespace {

double checked_log(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be a finite positive real, got " +
                      std::to_string(value));
  }
  return std::log(value);
}

}  // namespace

MonomialTable::MonomialTable(const gf2::WeightEnumerator& a) {
  for (int w = 0; w <= a.length(); ++w) {
    if (a[w] == 0) continue;
    log_coeff_.push_back(log_of(a[w]));
    u_.push_back(w);
    v_.push_back(0.0);
    max_u_ = w;
  }
}

MonomialTable::MonomialTable(const gf2::IOWeightEnumerator& b) {
  for (int u = 0; u <= b.dimension(); ++u) {
    for (int v = 0; v <= b.length(); ++v) {
      if (b.at(u, v) == 0) continue;
      log_coeff_.push_back(log_of(b.at(u, v)));
      u_.push_back(u);
      v_.push_back(v);
      max_u_ = std::max(max_u_, u);
      max_v_ = std::max(max_v_, v);
    }
  }
}

double log_A(const gf2::WeightEnumerator& a, double z) {
  return MonomialTable(a).at_log(checked_log(z, "z")).log_sum;
}

double dlog_A(const gf2::WeightEnumerator& a, double z) {
  return MonomialTable(a).at_log(checked_log(z, "z")).mean_u;
}

double log_B(const gf2::IOWeightEnumerator& b, double x, double y) {
  return MonomialTable(b).at_log(checked_log(x, "x"), checked_log(y, "y")).log_sum;
}

double dlog_B_x(const gf2::IOWeightEnumerator& b, double x, double y) {
  return MonomialTable(b).at_log(checked_log(x, "x"), checked_log(y, "y")).mean_u;
}

double dlog_B_y(const gf2::IOWeightEnumerator& b, double x, double y) {
  return MonomialTable(b).at_log(checked_log(x, "x"), checked_log(y, "y")).mean_v;
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("binary entropy argument outside [0, 1]: " +
                      std::to_string(p));
  }
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

}  // namespace dgldpc::wef
