#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "dgldpc/error.hpp"
#include "dgldpc/gf2/code.hpp"

namespace dgldpc {

// Variable-node type: a (q, k) local code and its edge fraction lambda.
struct VnType {
  VnType(gf2::BinaryLinearCode code, double lambda);

  gf2::BinaryLinearCode code;
  double lambda;
  gf2::IOWeightEnumerator iowef;
};

// Check-node type: an (s, h) local code and its edge fraction rho.
struct CnType {
  CnType(gf2::BinaryLinearCode code, double rho);

  gf2::BinaryLinearCode code;
  double rho;
  gf2::WeightEnumerator wef;
};

enum class Classification {
  good_no_weight2,    // no CN or no VN type has minimum distance 2
  good_cv_below_one,  // both sides have d_min-2 types and C*V < 1
  bad_cv_at_least_one,
};

std::string_view to_string(Classification c);

// Simplex sums may deviate from 1 by at most this much.
inline constexpr double kFractionTolerance = 1e-6;

// Irregular D-GLDPC ensemble and every scalar derived from its edge
// distributions. Fractions are renormalized to sum to one after validation;
// the raw inputs are kept for reporting.
class Ensemble {
 public:
  static Ensemble build(std::vector<VnType> vn_types,
                        std::vector<CnType> cn_types);

  const std::vector<VnType>& vn_types() const { return vn_; }
  const std::vector<CnType>& cn_types() const { return cn_; }

  // Fractions as entered, before renormalization.
  const std::vector<double>& raw_lambda() const { return raw_lambda_; }
  const std::vector<double>& raw_rho() const { return raw_rho_; }
  double raw_lambda_sum() const;
  double raw_rho_sum() const;

  double lambda(std::size_t t) const { return vn_[t].lambda; }
  double rho(std::size_t t) const { return cn_[t].rho; }

  double int_lambda() const { return int_lambda_; }
  double int_rho() const { return int_rho_; }

  // Node-perspective fractions: gamma over CN types, delta over VN types.
  const std::vector<double>& gamma() const { return gamma_; }
  const std::vector<double>& delta() const { return delta_; }

  // y = N / n, code bits per variable node; also the largest admissible alpha.
  double bits_per_vn() const { return bits_per_vn_; }
  double alpha_max() const { return bits_per_vn_; }

  double design_rate() const { return design_rate_; }

  std::optional<double> c_param() const { return c_; }
  std::optional<double> v_param() const { return v_; }
  std::optional<double> cv_product() const;

  Classification classification() const { return class_; }
  bool asymptotically_good() const {
    return class_ != Classification::bad_cv_at_least_one;
  }

  // Exact rational edge fractions (decimal-derived, renormalized).
  const std::vector<mpq_class>& lambda_exact() const { return lambda_q_; }
  const std::vector<mpq_class>& rho_exact() const { return rho_q_; }

 private:
  Ensemble() = default;

  std::vector<VnType> vn_;
  std::vector<CnType> cn_;
  std::vector<double> raw_lambda_;
  std::vector<double> raw_rho_;
  std::vector<mpq_class> lambda_q_;
  std::vector<mpq_class> rho_q_;
  double int_lambda_ = 0;
  double int_rho_ = 0;
  std::vector<double> gamma_;
  std::vector<double> delta_;
  double bits_per_vn_ = 0;
  double design_rate_ = 0;
  std::optional<double> c_;
  std::optional<double> v_;
  Classification class_ = Classification::good_no_weight2;
};

// Concrete node counts of one ensemble member with n variable nodes.
struct FiniteInstance {
  struct VnGroup {
    gf2::BinaryLinearCode code;
    gf2::IOWeightEnumerator iowef;
    std::int64_t count;
  };
  struct CnGroup {
    gf2::BinaryLinearCode code;
    gf2::WeightEnumerator wef;
    std::int64_t count;
  };

  // Builds an instance from explicit node counts; the VN and CN sides must
  // expose the same number of edge sockets.
  static FiniteInstance from_counts(std::vector<VnGroup> vns,
                                    std::vector<CnGroup> cns);

  std::int64_t n = 0;              // variable nodes
  std::int64_t edges = 0;          // E
  std::int64_t checks = 0;         // m, check nodes
  std::int64_t bits = 0;           // N, code length
  std::int64_t parity_checks = 0;  // M
  std::vector<VnGroup> vns;
  std::vector<CnGroup> cns;

  // 1 - M / N.
  mpq_class rate() const;
};

class InvalidInstanceSize : public ValidationError {
 public:
  InvalidInstanceSize(std::int64_t requested, mpz_class smallest);
  const mpz_class& smallest_valid_n() const { return smallest_; }

 private:
  mpz_class smallest_;
};

// Smallest n for which every node count is an integer; all valid n are its
// multiples.
mpz_class smallest_valid_n(const Ensemble& ensemble);

// Throws InvalidInstanceSize (carrying smallest_valid_n) for non-integral
// node counts.
FiniteInstance instantiate(const Ensemble& ensemble, std::int64_t n);

// Best rational approximation with relative error below 1e-12.
mpq_class rational_from_decimal(double value);

}  // namespace dgldpc
