#pragma once

#include <vector>

#include "dgldpc/gf2/code.hpp"
#include "dgldpc/simd/moments.hpp"

namespace dgldpc::wef {

// Nonzero monomials of an enumerator in log-coefficient form, ready for the
// log-sum-exp kernels. A weight enumerator A(z) is stored with the weight
// in the u slot and v = 0.
class MonomialTable {
 public:
  explicit MonomialTable(const gf2::WeightEnumerator& a);
  explicit MonomialTable(const gf2::IOWeightEnumerator& b);

  std::size_t size() const { return log_coeff_.size(); }
  simd::MonomialSpan span() const { return {log_coeff_, u_, v_}; }

  // Moments at (x, y) = (exp(lx), exp(ly)).
  simd::Moments at_log(double lx, double ly = 0.0) const {
    return simd::moments(span(), lx, ly);
  }

  // Largest exponents carrying a nonzero coefficient.
  int max_u() const { return max_u_; }
  int max_v() const { return max_v_; }

 private:
  std::vector<double> log_coeff_;
  std::vector<double> u_;
  std::vector<double> v_;
  int max_u_ = 0;
  int max_v_ = 0;
};

// log A(z) and z A'(z)/A(z); z must be positive.
double log_A(const gf2::WeightEnumerator& a, double z);
double dlog_A(const gf2::WeightEnumerator& a, double z);

// log B(x, y), x dB/dx / B and y dB/dy / B; x and y must be positive.
double log_B(const gf2::IOWeightEnumerator& b, double x, double y);
double dlog_B_x(const gf2::IOWeightEnumerator& b, double x, double y);
double dlog_B_y(const gf2::IOWeightEnumerator& b, double x, double y);

// h(p) = -p log p - (1 - p) log(1 - p), natural log, h(0) = h(1) = 0.
double binary_entropy(double p);

}  // namespace dgldpc::wef
