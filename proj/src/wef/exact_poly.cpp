#include "dgldpc/wef/exact_poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dgldpc/error.hpp"

namespace dgldpc::wef {

namespace {

void check_degree_bound(std::int64_t exponent, std::int64_t degree) {
  if (exponent < 0) {
    throw DomainError("polynomial power needs a nonnegative exponent");
  }
  if (degree > 0 && exponent > kMaxPowerDegree / degree) {
    throw ResourceLimit("exact power of degree " + std::to_string(degree) +
                        " to exponent " + std::to_string(exponent) +
                        " exceeds the degree bound " +
                        std::to_string(kMaxPowerDegree));
  }
}

ExactPoly2 identity2() {
  ExactPoly2 one(0, 0);
  one.at(0, 0) = 1;
  return one;
}

}  // namespace

ExactPoly::ExactPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.emplace_back(0);
  while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
}

ExactPoly::ExactPoly(const gf2::WeightEnumerator& a) : ExactPoly(a.coeffs()) {}

ExactPoly2::ExactPoly2(int deg_x, int deg_y)
    : deg_x_(deg_x),
      deg_y_(deg_y),
      coeffs_(static_cast<std::size_t>(deg_x + 1) * (deg_y + 1), 0) {}

ExactPoly2::ExactPoly2(const gf2::IOWeightEnumerator& b)
    : ExactPoly2(b.dimension(), b.length()) {
  for (int u = 0; u <= deg_x_; ++u) {
    for (int v = 0; v <= deg_y_; ++v) at(u, v) = b.at(u, v);
  }
}

mpz_class ExactPoly2::coeff(int wx, int wy) const {
  if (wx < 0 || wy < 0 || wx > deg_x_ || wy > deg_y_) return 0;
  return at(wx, wy);
}

int ExactPoly2::support_degree_x() const {
  int d = 0;
  for (int u = 0; u <= deg_x_; ++u)
    for (int v = 0; v <= deg_y_; ++v)
      if (at(u, v) != 0) d = std::max(d, u);
  return d;
}

int ExactPoly2::support_degree_y() const {
  int d = 0;
  for (int u = 0; u <= deg_x_; ++u)
    for (int v = 0; v <= deg_y_; ++v)
      if (at(u, v) != 0) d = std::max(d, v);
  return d;
}

namespace {

struct Term {
  int u, v;
  const mpz_class* c;
};

std::vector<Term> nonzero_terms(const ExactPoly2& p, int lim_x, int lim_y) {
  std::vector<Term> terms;
  for (int u = 0; u <= std::min(p.degree_x(), lim_x); ++u)
    for (int v = 0; v <= std::min(p.degree_y(), lim_y); ++v)
      if (p.at(u, v) != 0) terms.push_back({u, v, &p.at(u, v)});
  return terms;
}

std::size_t limbs_of(const mpz_class& c) { return mpz_size(c.get_mpz_t()); }

// Bit width that holds any coefficient of a product whose factors have the
// given coefficient sums.
std::size_t slot_bits(const mpz_class& sum_a, const mpz_class& sum_b) {
  const mpz_class bound = sum_a * sum_b;
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2) + 1;
  return (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS * GMP_NUMB_BITS;
}

// Packs coefficients at slot positions index * width into one integer.
mpz_class pack(const std::vector<Term>& terms, int stride, std::size_t width,
               std::size_t slots) {
  const std::size_t limbs_per_slot = width / GMP_NUMB_BITS;
  std::vector<mp_limb_t> buffer(slots * limbs_per_slot, 0);
  for (const auto& t : terms) {
    const std::size_t slot = static_cast<std::size_t>(t.u) * stride + t.v;
    std::size_t count = 0;
    mpz_export(buffer.data() + slot * limbs_per_slot, &count, -1,
               sizeof(mp_limb_t), 0, 0, t.c->get_mpz_t());
  }
  mpz_class out;
  mpz_import(out.get_mpz_t(), buffer.size(), -1, sizeof(mp_limb_t), 0, 0,
             buffer.data());
  return out;
}

// Kronecker substitution: evaluate both factors at 2^width (with y packed
// inside each x-row), multiply once with GMP, and read the slots back.
ExactPoly2 multiply_kronecker(const std::vector<Term>& ta,
                              const std::vector<Term>& tb, const mpz_class& sum_a,
                              const mpz_class& sum_b, int dx, int dy,
                              int span_x, int span_y) {
  const std::size_t width = slot_bits(sum_a, sum_b);
  const int stride = span_y + 1;
  const std::size_t slots = static_cast<std::size_t>(span_x + 1) * stride;
  const mpz_class pa = pack(ta, stride, width, slots);
  const mpz_class pb = (&ta == &tb) ? pa : pack(tb, stride, width, slots);
  mpz_class prod;
  if (&ta == &tb) {
    mpz_mul(prod.get_mpz_t(), pa.get_mpz_t(), pa.get_mpz_t());
  } else {
    mpz_mul(prod.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
  }

  const std::size_t limbs_per_slot = width / GMP_NUMB_BITS;
  const std::size_t used = mpz_size(prod.get_mpz_t());
  const mp_limb_t* limbs = mpz_limbs_read(prod.get_mpz_t());
  ExactPoly2 out(dx, dy);
  for (int u = 0; u <= dx; ++u) {
    for (int v = 0; v <= dy; ++v) {
      const std::size_t first =
          (static_cast<std::size_t>(u) * stride + v) * limbs_per_slot;
      if (first >= used) continue;
      const std::size_t n = std::min(limbs_per_slot, used - first);
      mpz_import(out.at(u, v).get_mpz_t(), n, -1, sizeof(mp_limb_t), 0, 0,
                 limbs + first);
    }
  }
  return out;
}

mpz_class coefficient_sum(const std::vector<Term>& terms) {
  mpz_class s = 0;
  for (const auto& t : terms) s += *t.c;
  return s;
}

}  // namespace

ExactPoly2 multiply(const ExactPoly2& a, const ExactPoly2& b, int max_x,
                    int max_y) {
  const int dx = std::min(max_x, a.degree_x() + b.degree_x());
  const int dy = std::min(max_y, a.degree_y() + b.degree_y());
  const auto ta = nonzero_terms(a, dx, dy);
  const auto tb = (&a == &b) ? ta : nonzero_terms(b, dx, dy);
  if (ta.empty() || tb.empty()) return ExactPoly2(dx, dy);

  // Schoolbook cost in limb products against the Kronecker product size.
  std::size_t la = 0, lb = 0;
  for (const auto& t : ta) la = std::max(la, limbs_of(*t.c));
  for (const auto& t : tb) lb = std::max(lb, limbs_of(*t.c));
  const double schoolbook = static_cast<double>(ta.size()) * tb.size() * la * lb;
  const mpz_class sum_a = coefficient_sum(ta);
  const mpz_class sum_b = (&a == &b) ? sum_a : coefficient_sum(tb);
  const int span_x = std::min(a.degree_x(), dx) + std::min(b.degree_x(), dx);
  const int span_y = std::min(a.degree_y(), dy) + std::min(b.degree_y(), dy);
  const double kron_limbs = static_cast<double>(span_x + 1) * (span_y + 1) *
                            (slot_bits(sum_a, sum_b) / GMP_NUMB_BITS);
  if (schoolbook > 64.0 * kron_limbs) {
    return multiply_kronecker(ta, (&a == &b) ? ta : tb, sum_a, sum_b, dx, dy,
                              span_x, span_y);
  }

  ExactPoly2 out(dx, dy);
  for (const auto& s : ta) {
    for (const auto& t : tb) {
      const int u = s.u + t.u;
      const int v = s.v + t.v;
      if (u > dx || v > dy) continue;
      mpz_addmul(out.at(u, v).get_mpz_t(), s.c->get_mpz_t(), t.c->get_mpz_t());
    }
  }
  return out;
}

ExactPoly multiply(const ExactPoly& a, const ExactPoly& b, int max_degree) {
  // A univariate product is the one-row case of the bivariate kernel.
  auto lift = [](const ExactPoly& p) {
    ExactPoly2 q(0, p.degree());
    for (int i = 0; i <= p.degree(); ++i) q.at(0, i) = p.coeffs()[i];
    return q;
  };
  const ExactPoly2 la = lift(a);
  const ExactPoly2 prod = (&a == &b) ? multiply(la, la, 0, max_degree)
                                     : multiply(la, lift(b), 0, max_degree);
  std::vector<mpz_class> out(static_cast<std::size_t>(prod.degree_y() + 1));
  for (int i = 0; i <= prod.degree_y(); ++i) out[i] = prod.at(0, i);
  return ExactPoly(std::move(out));
}

ExactPoly power(const ExactPoly& p, std::int64_t exponent, int max_degree) {
  check_degree_bound(exponent, p.degree());
  ExactPoly result(std::vector<mpz_class>{mpz_class(1)});
  ExactPoly base = multiply(p, result, max_degree);
  while (exponent > 0) {
    if (exponent & 1) result = multiply(result, base, max_degree);
    exponent >>= 1;
    if (exponent > 0) base = multiply(base, base, max_degree);
  }
  return result;
}

ExactPoly2 power(const ExactPoly2& p, std::int64_t exponent, int max_x,
                 int max_y) {
  check_degree_bound(exponent,
                     std::max(p.support_degree_x(), p.support_degree_y()));
  ExactPoly2 result = identity2();
  ExactPoly2 base = multiply(p, result, max_x, max_y);
  while (exponent > 0) {
    if (exponent & 1) result = multiply(result, base, max_x, max_y);
    exponent >>= 1;
    if (exponent > 0) base = multiply(base, base, max_x, max_y);
  }
  return result;
}

mpz_class poly_pow_coeff(const ExactPoly& p, std::int64_t exponent,
                         std::int64_t w) {
  check_degree_bound(exponent, p.degree());
  if (w < 0 || w > exponent * p.degree()) return 0;
  const int wi = static_cast<int>(w);
  // p^e = p^h * p^(e - h); only one coefficient of the last product is needed.
  const std::int64_t half = exponent / 2;
  const ExactPoly lo = power(p, half, wi);
  const ExactPoly hi = (exponent - half == half)
                           ? lo
                           : multiply(lo, power(p, 1, wi), wi);
  mpz_class sum = 0;
  for (int i = 0; i <= std::min(wi, lo.degree()); ++i) {
    const int j = wi - i;
    if (j > hi.degree()) continue;
    mpz_addmul(sum.get_mpz_t(), lo.coeffs()[i].get_mpz_t(),
               hi.coeffs()[j].get_mpz_t());
  }
  return sum;
}

mpz_class poly_pow_coeff_bivar(const ExactPoly2& p, std::int64_t exponent,
                               std::int64_t wx, std::int64_t wy) {
  check_degree_bound(exponent,
                     std::max(p.support_degree_x(), p.support_degree_y()));
  if (wx < 0 || wy < 0 || wx > exponent * p.support_degree_x() ||
      wy > exponent * p.support_degree_y()) {
    return 0;
  }
  const int ix = static_cast<int>(wx);
  const int iy = static_cast<int>(wy);
  const std::int64_t half = exponent / 2;
  const ExactPoly2 lo = power(p, half, ix, iy);
  const ExactPoly2 hi = (exponent - half == half)
                            ? lo
                            : multiply(lo, power(p, 1, ix, iy), ix, iy);
  mpz_class sum = 0;
  for (int u = 0; u <= std::min(ix, lo.degree_x()); ++u) {
    const int du = ix - u;
    if (du > hi.degree_x()) continue;
    for (int v = 0; v <= std::min(iy, lo.degree_y()); ++v) {
      const int dv = iy - v;
      if (dv > hi.degree_y()) continue;
      const mpz_class& a = lo.at(u, v);
      if (a == 0) continue;
      mpz_addmul(sum.get_mpz_t(), a.get_mpz_t(), hi.at(du, dv).get_mpz_t());
    }
  }
  return sum;
}

double log_of(const mpz_class& value) {
  if (value <= 0) throw DomainError("log of a nonpositive integer");
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, value.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double log_of(const mpq_class& value) {
  return log_of(mpz_class(value.get_num())) - log_of(mpz_class(value.get_den()));
}

}  // namespace dgldpc::wef
