#include "dgldpc/ensemble.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

namespace dgldpc {

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void check_fractions(const std::vector<double>& fractions, const char* name) {
  for (std::size_t t = 0; t < fractions.size(); ++t) {
    if (!(fractions[t] > 0.0 && fractions[t] <= 1.0)) {
      throw ValidationError(std::string(name) + "[" + std::to_string(t) +
                            "] = " + format_double(fractions[t]) +
                            " is not in (0, 1]");
    }
  }
  const double sum = std::accumulate(fractions.begin(), fractions.end(), 0.0);
  // Slack absorbs the binary rounding of six-decimal inputs.
  if (std::abs(sum - 1.0) > kFractionTolerance * (1.0 + 1e-6)) {
    throw ValidationError(std::string(name) + " fractions sum to " +
                          format_double(sum) + " (deficit " +
                          format_double(1.0 - sum) + ", tolerance " +
                          format_double(kFractionTolerance) + ")");
  }
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

VnType::VnType(gf2::BinaryLinearCode c, double l)
    : code(std::move(c)), lambda(l), iowef(gf2::enumerate_iowef(code)) {}

CnType::CnType(gf2::BinaryLinearCode c, double r)
    : code(std::move(c)), rho(r), wef(gf2::enumerate_wef(code)) {}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::good_no_weight2:
      return "asymptotically good (no minimum-distance-2 types on one side)";
    case Classification::good_cv_below_one:
      return "asymptotically good (C*V < 1)";
    case Classification::bad_cv_at_least_one:
      return "asymptotically bad (C*V >= 1)";
  }
  return "?";
}

Ensemble Ensemble::build(std::vector<VnType> vn_types,
                         std::vector<CnType> cn_types) {
  if (vn_types.empty()) throw ValidationError("ensemble has no VN types");
  if (cn_types.empty()) throw ValidationError("ensemble has no CN types");
  for (std::size_t t = 0; t < vn_types.size(); ++t) {
    if (vn_types[t].code.length() < 2) {
      throw ValidationError("VN type " + std::to_string(t) +
                            " has length < 2");
    }
  }
  for (std::size_t t = 0; t < cn_types.size(); ++t) {
    if (cn_types[t].code.length() < 2) {
      throw ValidationError("CN type " + std::to_string(t) +
                            " has length < 2");
    }
  }

  Ensemble e;
  for (const auto& v : vn_types) e.raw_lambda_.push_back(v.lambda);
  for (const auto& c : cn_types) e.raw_rho_.push_back(c.rho);
  check_fractions(e.raw_lambda_, "lambda");
  check_fractions(e.raw_rho_, "rho");

  const double lsum = e.raw_lambda_sum();
  const double rsum = e.raw_rho_sum();
  mpq_class lsum_q = 0, rsum_q = 0;
  for (double l : e.raw_lambda_) lsum_q += rational_from_decimal(l);
  for (double r : e.raw_rho_) rsum_q += rational_from_decimal(r);
  for (auto& v : vn_types) {
    e.lambda_q_.push_back(rational_from_decimal(v.lambda) / lsum_q);
    v.lambda /= lsum;
  }
  for (auto& c : cn_types) {
    e.rho_q_.push_back(rational_from_decimal(c.rho) / rsum_q);
    c.rho /= rsum;
  }
  e.vn_ = std::move(vn_types);
  e.cn_ = std::move(cn_types);

  double vn_rate_sum = 0.0;  // sum lambda_t R_t
  for (const auto& v : e.vn_) {
    e.int_lambda_ += v.lambda / v.code.length();
    vn_rate_sum += v.lambda * v.code.rate();
  }
  double cn_redundancy = 0.0;  // sum rho_t (1 - R_t)
  for (const auto& c : e.cn_) {
    e.int_rho_ += c.rho / c.code.length();
    cn_redundancy += c.rho * (1.0 - c.code.rate());
  }
  for (const auto& v : e.vn_) {
    e.delta_.push_back(v.lambda / (v.code.length() * e.int_lambda_));
  }
  for (const auto& c : e.cn_) {
    e.gamma_.push_back(c.rho / (c.code.length() * e.int_rho_));
  }
  e.bits_per_vn_ = vn_rate_sum / e.int_lambda_;
  e.design_rate_ = 1.0 - cn_redundancy / vn_rate_sum;
  if (!(e.design_rate_ > 0.0)) {
    throw DegenerateEnsemble("design rate " + format_double(e.design_rate_) +
                             " is not positive");
  }

  bool any_cn2 = false, any_vn2 = false;
  double c = 0.0, v = 0.0;
  for (const auto& cn : e.cn_) {
    if (cn.wef.min_distance() != 2) continue;
    any_cn2 = true;
    c += 2.0 * cn.rho * cn.wef[2].get_d() / cn.code.length();
  }
  for (const auto& vn : e.vn_) {
    if (vn.iowef.min_distance() != 2) continue;
    any_vn2 = true;
    v += 2.0 * vn.lambda * vn.iowef.weight2_total().get_d() / vn.code.length();
  }
  if (any_cn2) e.c_ = c;
  if (any_vn2) e.v_ = v;
  if (!any_cn2 || !any_vn2) {
    e.class_ = Classification::good_no_weight2;
  } else if (c * v < 1.0) {
    e.class_ = Classification::good_cv_below_one;
  } else {
    e.class_ = Classification::bad_cv_at_least_one;
  }
  return e;
}

double Ensemble::raw_lambda_sum() const {
  return std::accumulate(raw_lambda_.begin(), raw_lambda_.end(), 0.0);
}

double Ensemble::raw_rho_sum() const {
  return std::accumulate(raw_rho_.begin(), raw_rho_.end(), 0.0);
}

std::optional<double> Ensemble::cv_product() const {
  if (c_ && v_) return *c_ * *v_;
  return std::nullopt;
}

mpq_class FiniteInstance::rate() const {
  return mpq_class(1) - mpq_class(parity_checks, bits);
}

FiniteInstance FiniteInstance::from_counts(std::vector<VnGroup> vns,
                                           std::vector<CnGroup> cns) {
  FiniteInstance inst;
  std::int64_t vn_sockets = 0, cn_sockets = 0;
  for (const auto& g : vns) {
    if (g.count < 0) throw ValidationError("negative VN count");
    inst.n += g.count;
    inst.bits += g.count * g.code.dimension();
    vn_sockets += g.count * g.code.length();
  }
  for (const auto& g : cns) {
    if (g.count < 0) throw ValidationError("negative CN count");
    inst.checks += g.count;
    inst.parity_checks += g.count * (g.code.length() - g.code.dimension());
    cn_sockets += g.count * g.code.length();
  }
  if (vn_sockets != cn_sockets) {
    throw ValidationError("VN side has " + std::to_string(vn_sockets) +
                          " edge sockets but CN side has " +
                          std::to_string(cn_sockets));
  }
  if (inst.n == 0) throw ValidationError("instance has no variable nodes");
  inst.edges = vn_sockets;
  inst.vns = std::move(vns);
  inst.cns = std::move(cns);
  return inst;
}

InvalidInstanceSize::InvalidInstanceSize(std::int64_t requested,
                                         mpz_class smallest)
    : ValidationError("n = " + std::to_string(requested) +
                      " gives non-integer node counts; valid n are multiples of " +
                      smallest.get_str()),
      smallest_(std::move(smallest)) {}

namespace {

// E must be a multiple of this so that every node count is integral.
mpz_class edge_period(const Ensemble& e) {
  mpz_class period = 1;
  for (std::size_t t = 0; t < e.vn_types().size(); ++t) {
    const mpq_class share = e.lambda_exact()[t] / e.vn_types()[t].code.length();
    period = lcm(period, share.get_den());
  }
  for (std::size_t t = 0; t < e.cn_types().size(); ++t) {
    const mpq_class share = e.rho_exact()[t] / e.cn_types()[t].code.length();
    period = lcm(period, share.get_den());
  }
  return period;
}

mpq_class exact_int_lambda(const Ensemble& e) {
  mpq_class s = 0;
  for (std::size_t t = 0; t < e.vn_types().size(); ++t) {
    s += e.lambda_exact()[t] / e.vn_types()[t].code.length();
  }
  return s;
}

}  // namespace

mpz_class smallest_valid_n(const Ensemble& ensemble) {
  const mpq_class n = mpq_class(edge_period(ensemble)) * exact_int_lambda(ensemble);
  // n = sum of integral VN counts, hence integral.
  return n.get_num() / n.get_den();
}

FiniteInstance instantiate(const Ensemble& ensemble, std::int64_t n) {
  if (n <= 0) throw ValidationError("instance needs n > 0");
  const mpz_class smallest = smallest_valid_n(ensemble);
  if (mpz_class(n) % smallest != 0) throw InvalidInstanceSize(n, smallest);

  const mpq_class edges_q = mpq_class(n) / exact_int_lambda(ensemble);
  const std::int64_t edges = mpz_class(edges_q.get_num() / edges_q.get_den()).get_si();

  std::vector<FiniteInstance::VnGroup> vns;
  for (std::size_t t = 0; t < ensemble.vn_types().size(); ++t) {
    const auto& vt = ensemble.vn_types()[t];
    mpq_class c = edges_q * ensemble.lambda_exact()[t] / vt.code.length();
    c.canonicalize();
    vns.push_back({vt.code, vt.iowef, mpz_class(c.get_num()).get_si()});
  }
  std::vector<FiniteInstance::CnGroup> cns;
  for (std::size_t t = 0; t < ensemble.cn_types().size(); ++t) {
    const auto& ct = ensemble.cn_types()[t];
    mpq_class c = edges_q * ensemble.rho_exact()[t] / ct.code.length();
    c.canonicalize();
    cns.push_back({ct.code, ct.wef, mpz_class(c.get_num()).get_si()});
  }
  FiniteInstance inst = FiniteInstance::from_counts(std::move(vns), std::move(cns));
  if (inst.edges != edges || inst.n != n) {
    throw ValidationError("instance bookkeeping mismatch for n = " +
                          std::to_string(n));
  }
  return inst;
}

mpq_class rational_from_decimal(double value) {
  if (!std::isfinite(value)) {
    throw DomainError("cannot convert a non-finite value to a rational");
  }
  if (value == 0.0) return 0;
  const mpq_class exact(value);
  const double tol = 1e-12 * std::abs(value);
  // Continued-fraction convergents of the exact binary value.
  mpz_class num = exact.get_num(), den = exact.get_den();
  mpz_class h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const mpz_class h = a * h_prev + h_prev2;
    const mpz_class k = a * k_prev + k_prev2;
    mpq_class conv(h, k);
    conv.canonicalize();
    const mpq_class err = conv - exact;
    if (std::abs(err.get_d()) <= tol) return conv;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const mpz_class rem = num - a * den;
    if (rem == 0) return conv;
    num = den;
    den = rem;
  }
}

}  // namespace dgldpc
