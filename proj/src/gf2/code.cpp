#include "dgldpc/gf2/code.hpp"

#include <bit>
#include <numeric>
#include <sstream>
#include <utility>

#include "dgldpc/error.hpp"

namespace dgldpc::gf2 {

namespace {

constexpr int kMaxEnumerationDimension = 24;

std::uint32_t column_mask(int length) {
  return length >= 32 ? ~0u : ((1u << length) - 1u);
}

void append_monomial(std::ostringstream& os, bool& first,
                     const mpz_class& coeff, int xpow, int ypow,
                     char xname, char yname) {
  if (coeff == 0) return;
  if (!first) os << " + ";
  first = false;
  const bool constant = xpow == 0 && ypow == 0;
  if (coeff != 1 || constant) {
    os << coeff.get_str();
    if (!constant) os << ' ';
  }
  auto emit = [&](char name, int pow, bool need_space) {
    if (pow == 0) return;
    if (need_space) os << ' ';
    os << name;
    if (pow > 1) os << '^' << pow;
  };
  emit(xname, xpow, false);
  emit(yname, ypow, xpow != 0);
}

}  // namespace

int gf2_rank(std::vector<std::uint32_t> rows) {
  int rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::uint32_t pivot = rows[i];
    if (pivot == 0) continue;
    ++rank;
    const std::uint32_t low = pivot & (~pivot + 1u);
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[j] & low) rows[j] ^= pivot;
    }
  }
  return rank;
}

BinaryLinearCode::BinaryLinearCode(std::vector<std::uint32_t> rows, int length,
                                   std::string label)
    : rows_(std::move(rows)), length_(length), label_(std::move(label)) {
  if (length_ < 1 || length_ > kMaxLength) {
    throw InvalidParameter("code length " + std::to_string(length_) +
                           " outside [1, " + std::to_string(kMaxLength) + "]");
  }
  if (rows_.empty() || static_cast<int>(rows_.size()) > length_) {
    throw InvalidParameter("code dimension " + std::to_string(rows_.size()) +
                           " outside [1, " + std::to_string(length_) + "]");
  }
  for (auto r : rows_) {
    if (r & ~column_mask(length_)) {
      throw InvalidParameter("generator row has bits beyond length " +
                             std::to_string(length_));
    }
  }
  const int rank = gf2_rank(rows_);
  if (rank != dimension()) {
    throw InvalidParameter("generator matrix is rank deficient: rank " +
                           std::to_string(rank) + " < " +
                           std::to_string(dimension()) + " rows");
  }
}

std::uint32_t BinaryLinearCode::encode(std::uint32_t message) const {
  std::uint32_t word = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if ((message >> i) & 1u) word ^= rows_[i];
  }
  return word;
}

std::string BinaryLinearCode::row_string(int i) const {
  std::string s(static_cast<std::size_t>(length_), '0');
  for (int j = 0; j < length_; ++j) {
    if ((rows_.at(i) >> j) & 1u) s[j] = '1';
  }
  return s;
}

std::string_view to_string(SpcForm form) {
  switch (form) {
    case SpcForm::systematic: return "systematic";
    case SpcForm::cyclic: return "cyclic";
    case SpcForm::antisystematic: return "antisystematic";
  }
  return "?";
}

SpcForm parse_spc_form(std::string_view text) {
  if (text == "systematic" || text == "S") return SpcForm::systematic;
  if (text == "cyclic" || text == "C") return SpcForm::cyclic;
  if (text == "antisystematic" || text == "A") return SpcForm::antisystematic;
  throw InvalidParameter("unknown SPC form '" + std::string(text) +
                         "' (expected systematic, cyclic or antisystematic)");
}

BinaryLinearCode make_repetition(int length) {
  if (length < 2) {
    throw InvalidParameter("repetition code needs length >= 2, got " +
                           std::to_string(length));
  }
  if (length > BinaryLinearCode::kMaxLength) {
    throw InvalidParameter("repetition length " + std::to_string(length) +
                           " exceeds " +
                           std::to_string(BinaryLinearCode::kMaxLength));
  }
  return BinaryLinearCode({column_mask(length)}, length,
                          "repetition-" + std::to_string(length));
}

BinaryLinearCode make_spc(int length, SpcForm form) {
  if (length < 3) {
    throw InvalidParameter("SPC code needs length >= 3, got " +
                           std::to_string(length));
  }
  if (length > BinaryLinearCode::kMaxLength) {
    throw InvalidParameter("SPC length " + std::to_string(length) +
                           " exceeds " +
                           std::to_string(BinaryLinearCode::kMaxLength));
  }
  // An antisystematic generator of even length spans a d_min = 1 code.
  if (form == SpcForm::antisystematic && length % 2 == 0) {
    throw InvalidParameter("antisystematic SPC form requires odd length, got " +
                           std::to_string(length));
  }
  const int k = length - 1;
  const std::uint32_t last = 1u << k;
  const std::uint32_t info = column_mask(k);
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const std::uint32_t unit = 1u << i;
    switch (form) {
      case SpcForm::systematic: rows[i] = unit | last; break;
      case SpcForm::cyclic: rows[i] = unit | (unit << 1); break;
      case SpcForm::antisystematic: rows[i] = (info & ~unit) | last; break;
    }
  }
  return BinaryLinearCode(std::move(rows), length,
                          "spc-" + std::to_string(length) + "-" +
                              std::string(to_string(form)));
}

BinaryLinearCode make_hamming_7_4() {
  // [I_4 | P] with parity columns (1,2,4,5,7 ordering of the classic code).
  const auto code = make_explicit({"1000110", "0100101", "0010011", "0001111"});
  return BinaryLinearCode(code.rows(), code.length(), "hamming-7-4");
}

BinaryLinearCode make_explicit(const std::vector<std::string>& rows) {
  if (rows.empty()) throw InvalidParameter("explicit code has no rows");
  const auto length = rows.front().size();
  std::vector<std::uint32_t> masks;
  masks.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != length) {
      throw InvalidParameter("row " + std::to_string(i) + " has length " +
                             std::to_string(r.size()) + ", expected " +
                             std::to_string(length));
    }
    if (length == 0 || length > static_cast<std::size_t>(BinaryLinearCode::kMaxLength)) {
      throw InvalidParameter("explicit code length " + std::to_string(length) +
                             " outside [1, " +
                             std::to_string(BinaryLinearCode::kMaxLength) + "]");
    }
    std::uint32_t m = 0;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] == '1') {
        m |= 1u << j;
      } else if (r[j] != '0') {
        throw InvalidParameter("row " + std::to_string(i) +
                               " contains non-binary character '" +
                               std::string(1, r[j]) + "'");
      }
    }
    masks.push_back(m);
  }
  std::string label = "explicit[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) label += ',';
    label += rows[i];
  }
  label += ']';
  return BinaryLinearCode(std::move(masks), static_cast<int>(length),
                          std::move(label));
}

WeightEnumerator::WeightEnumerator(std::vector<mpz_class> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty() || coeffs_[0] != 1) {
    throw InvalidParameter("weight enumerator must have constant term 1");
  }
}

int WeightEnumerator::min_distance() const {
  for (int u = 1; u <= length(); ++u) {
    if (coeffs_[u] > 0) return u;
  }
  return 0;
}

mpz_class WeightEnumerator::total() const {
  return std::accumulate(coeffs_.begin(), coeffs_.end(), mpz_class(0));
}

IOWeightEnumerator::IOWeightEnumerator(int dimension, int length,
                                       std::vector<mpz_class> coeffs)
    : dimension_(dimension), length_(length), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() !=
      static_cast<std::size_t>(dimension_ + 1) * (length_ + 1)) {
    throw InvalidParameter("IO weight enumerator table has wrong size");
  }
  if (at(0, 0) != 1) {
    throw InvalidParameter("IO weight enumerator must have constant term 1");
  }
}

WeightEnumerator IOWeightEnumerator::output_marginal() const {
  std::vector<mpz_class> a(static_cast<std::size_t>(length_ + 1), 0);
  for (int u = 0; u <= dimension_; ++u) {
    for (int v = 0; v <= length_; ++v) a[v] += at(u, v);
  }
  return WeightEnumerator(std::move(a));
}

mpz_class IOWeightEnumerator::weight2_total() const {
  mpz_class total = 0;
  if (length_ < 2) return total;
  for (int u = 0; u <= dimension_; ++u) total += at(u, 2);
  return total;
}

WeightEnumerator enumerate_wef(const BinaryLinearCode& code) {
  return enumerate_iowef(code).output_marginal();
}

IOWeightEnumerator enumerate_iowef(const BinaryLinearCode& code) {
  const int k = code.dimension();
  const int q = code.length();
  if (k > kMaxEnumerationDimension) {
    throw ResourceLimit("exhaustive enumeration of 2^" + std::to_string(k) +
                        " messages exceeds the 2^" +
                        std::to_string(kMaxEnumerationDimension) + " limit");
  }
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(k + 1) * (q + 1),
                                    0);
  // Gray-code walk: consecutive messages differ in one generator row.
  std::uint32_t word = 0;
  const std::uint32_t total = 1u << k;
  for (std::uint32_t i = 0; i < total; ++i) {
    if (i != 0) word ^= code.rows()[std::countr_zero(i)];
    const std::uint32_t gray = i ^ (i >> 1);
    const int u = std::popcount(gray);
    const int v = std::popcount(word);
    ++counts[static_cast<std::size_t>(u) * (q + 1) + v];
  }
  std::vector<mpz_class> coeffs;
  coeffs.reserve(counts.size());
  for (auto c : counts) coeffs.emplace_back(static_cast<unsigned long>(c));
  return IOWeightEnumerator(k, q, std::move(coeffs));
}

std::string to_polynomial_string(const IOWeightEnumerator& b) {
  std::ostringstream os;
  bool first = true;
  for (int u = 0; u <= b.dimension(); ++u) {
    for (int v = 0; v <= b.length(); ++v) {
      append_monomial(os, first, b.at(u, v), u, v, 'x', 'y');
    }
  }
  return os.str();
}

std::string to_polynomial_string(const WeightEnumerator& a) {
  std::ostringstream os;
  bool first = true;
  for (int u = 0; u <= a.length(); ++u) {
    append_monomial(os, first, a[u], u, 0, 'z', 'y');
  }
  return os.str();
}

}  // namespace dgldpc::gf2
