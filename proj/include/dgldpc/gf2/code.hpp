#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace dgldpc::gf2 {

// Binary linear block code given by a full-rank k x q generator matrix.
// Row i is stored as a bit mask, column j at bit j.
class BinaryLinearCode {
 public:
  static constexpr int kMaxLength = 24;

  // Throws InvalidParameter unless 1 <= k <= q <= kMaxLength and the rows
  // are linearly independent.
  BinaryLinearCode(std::vector<std::uint32_t> rows, int length,
                   std::string label);

  int dimension() const { return static_cast<int>(rows_.size()); }
  int length() const { return length_; }
  const std::vector<std::uint32_t>& rows() const { return rows_; }
  const std::string& label() const { return label_; }

  // Local rate k/q.
  double rate() const {
    return static_cast<double>(dimension()) / static_cast<double>(length_);
  }

  // Codeword for the message whose bit i selects generator row i.
  std::uint32_t encode(std::uint32_t message) const;

  // Row i as an ASCII bitstring of length q, column 0 first.
  std::string row_string(int i) const;

  friend bool operator==(const BinaryLinearCode& a,
                         const BinaryLinearCode& b) {
    return a.length_ == b.length_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<std::uint32_t> rows_;
  int length_;
  std::string label_;
};

// Rank over GF(2) of a set of row masks.
int gf2_rank(std::vector<std::uint32_t> rows);

enum class SpcForm { systematic, cyclic, antisystematic };

std::string_view to_string(SpcForm form);
SpcForm parse_spc_form(std::string_view text);

BinaryLinearCode make_repetition(int length);
BinaryLinearCode make_spc(int length, SpcForm form);
BinaryLinearCode make_hamming_7_4();
BinaryLinearCode make_explicit(const std::vector<std::string>& rows);

// A_u: number of weight-u codewords, u = 0..q.
class WeightEnumerator {
 public:
  explicit WeightEnumerator(std::vector<mpz_class> coeffs);

  int length() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  const mpz_class& operator[](int u) const { return coeffs_.at(u); }

  // Smallest nonzero weight; 0 for the trivial {0} code.
  int min_distance() const;
  mpz_class total() const;

  friend bool operator==(const WeightEnumerator&,
                         const WeightEnumerator&) = default;

 private:
  std::vector<mpz_class> coeffs_;
};

// B_{u,v}: number of weight-v codewords produced by weight-u inputs.
class IOWeightEnumerator {
 public:
  IOWeightEnumerator(int dimension, int length, std::vector<mpz_class> coeffs);

  int dimension() const { return dimension_; }
  int length() const { return length_; }
  const mpz_class& at(int u, int v) const {
    return coeffs_.at(static_cast<std::size_t>(u) * (length_ + 1) + v);
  }

  // Sum over input weights; equals the weight enumerator of the code.
  WeightEnumerator output_marginal() const;

  // Total number of weight-2 codewords, summed over input weights.
  mpz_class weight2_total() const;

  int min_distance() const { return output_marginal().min_distance(); }

  friend bool operator==(const IOWeightEnumerator&,
                         const IOWeightEnumerator&) = default;

 private:
  int dimension_;
  int length_;
  std::vector<mpz_class> coeffs_;
};

// Exhaustive enumeration over all 2^k messages.
WeightEnumerator enumerate_wef(const BinaryLinearCode& code);
IOWeightEnumerator enumerate_iowef(const BinaryLinearCode& code);

// Human-readable "1 + x y^2 + ..." rendering.
std::string to_polynomial_string(const IOWeightEnumerator& b);
std::string to_polynomial_string(const WeightEnumerator& a);

}  // namespace dgldpc::gf2
