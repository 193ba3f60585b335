#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "dgldpc/gf2/code.hpp"

namespace dgldpc::wef {

// Upper bound on exponent * degree for exact powers; keeps the oracle's
// big-integer tables desk-sized.
inline constexpr std::int64_t kMaxPowerDegree = 50'000;

// Univariate polynomial with exact nonnegative integer coefficients.
class ExactPoly {
 public:
  ExactPoly() : coeffs_{mpz_class(0)} {}
  explicit ExactPoly(std::vector<mpz_class> coeffs);
  explicit ExactPoly(const gf2::WeightEnumerator& a);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  mpz_class coeff(int w) const {
    return (w >= 0 && w <= degree()) ? coeffs_[w] : mpz_class(0);
  }

 private:
  std::vector<mpz_class> coeffs_;
};

// Bivariate polynomial, dense (deg_x + 1) x (deg_y + 1), row-major in x.
class ExactPoly2 {
 public:
  ExactPoly2(int deg_x, int deg_y);
  explicit ExactPoly2(const gf2::IOWeightEnumerator& b);

  int degree_x() const { return deg_x_; }
  int degree_y() const { return deg_y_; }
  mpz_class coeff(int wx, int wy) const;
  mpz_class& at(int wx, int wy) {
    return coeffs_[static_cast<std::size_t>(wx) * (deg_y_ + 1) + wy];
  }
  const mpz_class& at(int wx, int wy) const {
    return coeffs_[static_cast<std::size_t>(wx) * (deg_y_ + 1) + wy];
  }

  // Tight degrees of the nonzero support.
  int support_degree_x() const;
  int support_degree_y() const;

 private:
  int deg_x_;
  int deg_y_;
  std::vector<mpz_class> coeffs_;
};

// Products truncated to degree <= max_degree (per variable).
ExactPoly multiply(const ExactPoly& a, const ExactPoly& b, int max_degree);
ExactPoly2 multiply(const ExactPoly2& a, const ExactPoly2& b, int max_x,
                    int max_y);

// p^exponent truncated at max_degree, by repeated squaring.
ExactPoly power(const ExactPoly& p, std::int64_t exponent, int max_degree);
ExactPoly2 power(const ExactPoly2& p, std::int64_t exponent, int max_x,
                 int max_y);

// Coeff[p^exponent, x^w].
mpz_class poly_pow_coeff(const ExactPoly& p, std::int64_t exponent,
                         std::int64_t w);
// Coeff[p^exponent, x^wx y^wy].
mpz_class poly_pow_coeff_bivar(const ExactPoly2& p, std::int64_t exponent,
                               std::int64_t wx, std::int64_t wy);

// Natural log of a positive big integer (or rational), without overflow.
double log_of(const mpz_class& value);
double log_of(const mpq_class& value);

}  // namespace dgldpc::wef
