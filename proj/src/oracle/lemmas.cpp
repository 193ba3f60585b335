#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Dense>

#include "detail.hpp"

namespace dgldpc::oracle {

namespace detail {

double monotone_root(const std::function<double(double)>& f, double target) {
  double lo = -1.0, hi = 1.0;
  while (f(lo) >= target) {
    lo *= 2.0;
    if (lo < -1e5) throw SolverError("no lower bracket for the saddle equation", 0.0);
  }
  while (f(hi) <= target) {
    hi *= 2.0;
    if (hi > 1e5) throw SolverError("no upper bracket for the saddle equation", 0.0);
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

namespace {

std::int64_t integral_weight(double fraction, std::int64_t ell, const char* name) {
  const double w = fraction * static_cast<double>(ell);
  const double r = std::round(w);
  if (std::abs(w - r) > 1e-9 * std::max(1.0, std::abs(w))) {
    std::ostringstream os;
    os << name << " * l = " << w << " is not an integer";
    throw DomainError(os.str());
  }
  return static_cast<std::int64_t>(r);
}

void check_ell(std::int64_t ell) {
  if (ell < 1) throw DomainError("l must be a positive integer");
}

}  // namespace

LemmaLimit detail::solve_bivariate(const wef::MonomialTable& table, double xi,
                                   double theta) {
  // Seed: match xi along y = 1, then theta along the resulting x.
  double lx = monotone_root([&](double t) { return table.at_log(t, 0.0).mean_u; }, xi);
  double ly = monotone_root([&](double t) { return table.at_log(lx, t).mean_v; }, theta);

  // Damped Newton on the convex function log B - xi log x - theta log y.
  // Near the minimum the decrease of phi drops below rounding, so a step is
  // also accepted when it shrinks the gradient.
  const double scale = std::max({1.0, xi, theta});
  const double target = 1e-13 * scale;
  const double accept = 1e-10 * scale;
  auto grad = [&](const simd::Moments& m) {
    return Eigen::Vector2d(m.mean_u - xi, m.mean_v - theta);
  };
  auto m = table.at_log(lx, ly);
  double best = grad(m).cwiseAbs().maxCoeff();
  for (int it = 0; it < 200 && best >= target; ++it) {
    const Eigen::Vector2d g = grad(m);
    Eigen::Matrix2d h;
    h << m.var_u, m.cov_uv, m.cov_uv, m.var_v;
    // Minimum-norm step; collinear supports give a singular Hessian.
    Eigen::Vector2d d = -h.completeOrthogonalDecomposition().solve(g);
    if (!d.allFinite() || g.dot(d) >= 0.0) d = -g;
    const double cap = d.cwiseAbs().maxCoeff();
    if (cap > 4.0) d *= 4.0 / cap;
    const double f0 = m.log_sum - xi * lx - theta * ly;
    const double g0 = g.cwiseAbs().maxCoeff();
    bool moved = false;
    double t = 1.0;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      const double nx = lx + t * d(0), ny = ly + t * d(1);
      const auto mn = table.at_log(nx, ny);
      const double fn = mn.log_sum - xi * nx - theta * ny;
      const double gn = grad(mn).cwiseAbs().maxCoeff();
      if (fn <= f0 + 1e-4 * t * g.dot(d) || gn < (1.0 - 1e-4 * t) * g0) {
        lx = nx;
        ly = ny;
        m = mn;
        best = gn;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  if (best < accept) {
    return {std::exp(lx), std::exp(ly), m.log_sum - xi * lx - theta * ly};
  }
  throw SolverError("bivariate saddle solve did not converge", best);
}

LemmaLimit lemma1_limit(const gf2::WeightEnumerator& a, double xi) {
  const wef::MonomialTable table(a);
  if (!(xi > 0.0 && xi < table.max_u())) {
    throw DomainError("xi must lie strictly between 0 and the degree of A");
  }
  const double lz =
      detail::monotone_root([&](double t) { return table.at_log(t).mean_u; }, xi);
  return {std::exp(lz), 1.0, table.at_log(lz).log_sum - xi * lz};
}

LemmaLimit lemma2_limit(const gf2::IOWeightEnumerator& b, double xi,
                        double theta) {
  const wef::MonomialTable table(b);
  if (!(xi > 0.0 && xi < table.max_u()) || !(theta > 0.0 && theta < table.max_v())) {
    throw DomainError("(xi, theta) must lie strictly inside the degree box of B");
  }
  return detail::solve_bivariate(table, xi, theta);
}

LemmaCheck lemma1_gap(const gf2::WeightEnumerator& a, double xi,
                      std::int64_t ell) {
  check_ell(ell);
  const wef::MonomialTable table(a);
  if (!(xi > 0.0 && xi < table.max_u())) {
    throw DomainError("xi must lie strictly between 0 and the degree of A");
  }
  const std::int64_t w = integral_weight(xi, ell, "xi");
  LemmaCheck out;
  out.ell = ell;
  out.coefficient = wef::poly_pow_coeff(wef::ExactPoly(a), ell, w);
  if (out.coefficient == 0) {
    std::ostringstream os;
    os << "Coeff[A^" << ell << ", x^" << w << "] is identically zero";
    throw StructuralZero(os.str());
  }
  const double xi_exact = static_cast<double>(w) / static_cast<double>(ell);
  const LemmaLimit lim = lemma1_limit(a, xi_exact);
  out.rate = wef::log_of(out.coefficient) / static_cast<double>(ell);
  out.x0 = lim.x0;
  out.limit = lim.limit;
  out.gap = out.rate - out.limit;
  return out;
}

LemmaCheck lemma2_gap(const gf2::IOWeightEnumerator& b, double xi,
                      double theta, std::int64_t ell) {
  check_ell(ell);
  const wef::MonomialTable table(b);
  if (!(xi > 0.0 && xi < table.max_u()) || !(theta > 0.0 && theta < table.max_v())) {
    throw DomainError("(xi, theta) must lie strictly inside the degree box of B");
  }
  const std::int64_t wx = integral_weight(xi, ell, "xi");
  const std::int64_t wy = integral_weight(theta, ell, "theta");
  LemmaCheck out;
  out.ell = ell;
  out.coefficient = wef::poly_pow_coeff_bivar(wef::ExactPoly2(b), ell, wx, wy);
  if (out.coefficient == 0) {
    std::ostringstream os;
    os << "Coeff[B^" << ell << ", x^" << wx << " y^" << wy
       << "] is identically zero";
    throw StructuralZero(os.str());
  }
  const double l = static_cast<double>(ell);
  const LemmaLimit lim = detail::solve_bivariate(table, wx / l, wy / l);
  out.rate = wef::log_of(out.coefficient) / l;
  out.x0 = lim.x0;
  out.y0 = lim.y0;
  out.limit = lim.limit;
  out.gap = out.rate - out.limit;
  return out;
}

}  // namespace dgldpc::oracle
