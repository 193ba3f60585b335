#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/tools/toms748_solve.hpp>

#include "dgldpc/error.hpp"
#include "dgldpc/saddle.hpp"

namespace dgldpc::saddle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sigmoid(double s) {
  if (s >= 0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

// log(1 + e^s) without overflow.
double softplus(double s) {
  return std::max(s, 0.0) + std::log1p(std::exp(-std::abs(s)));
}

double max_abs(const std::array<double, 4>& r) {
  double m = 0.0;
  for (double v : r) {
    if (!std::isfinite(v)) return kInf;
    m = std::max(m, std::abs(v));
  }
  return m;
}

// Root of a bracketed monotone function to full double precision.
template <class F>
double bracketed_root(F f, double lo, double hi, double flo, double fhi) {
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iters = 300;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (r.first + r.second);
}

std::string describe(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

double SaddlePoint::residual_max() const { return max_abs(residuals); }

Solver::Solver(const Ensemble& ensemble, SolverOptions options)
    : ensemble_(&ensemble), options_(options) {
  for (const auto& v : ensemble.vn_types()) vn_tables_.emplace_back(v.iowef);
  for (const auto& c : ensemble.cn_types()) cn_tables_.emplace_back(c.wef);
  double top = 0.0;
  for (std::size_t t = 0; t < cn_tables_.size(); ++t) {
    top += ensemble.gamma()[t] * cn_tables_[t].max_u();
  }
  z_sup_ = top * ensemble.int_rho() / ensemble.int_lambda();
}

void Solver::check_alpha(double alpha) const {
  if (!(alpha > 0.0 && alpha < ensemble_->alpha_max())) {
    throw DomainError("alpha = " + describe(alpha) + " outside (0, " +
                      describe(ensemble_->alpha_max()) + ")");
  }
}

SystemEvaluation Solver::evaluate(double alpha, const Coordinates& c) const {
  const Ensemble& e = *ensemble_;
  const double il = e.int_lambda();
  const double ratio = e.int_rho() / il;

  double a1 = 0, a2 = 0, alog = 0;
  for (std::size_t t = 0; t < cn_tables_.size(); ++t) {
    const auto m = cn_tables_[t].at_log(c.log_z);
    const double g = e.gamma()[t];
    a1 += g * m.mean_u;
    a2 += g * m.var_u;
    alog += g * m.log_sum;
  }
  double mu = 0, mv = 0, vuu = 0, vuv = 0, vvv = 0, blog = 0;
  for (std::size_t t = 0; t < vn_tables_.size(); ++t) {
    const auto m = vn_tables_[t].at_log(c.log_x, c.log_y);
    const double d = e.delta()[t];
    mu += d * m.mean_u;
    mv += d * m.mean_v;
    vuu += d * m.var_u;
    vuv += d * m.cov_uv;
    vvv += d * m.var_v;
    blog += d * m.log_sum;
  }

  const double frac = sigmoid(c.logit);  // beta * int_lambda
  const double beta = frac / il;
  const double dbeta = frac * sigmoid(-c.logit) / il;

  SystemEvaluation out;
  out.beta = beta;
  out.sum_delta_log_b = blog;
  out.sum_gamma_log_a = alog;
  out.residuals = {ratio * a1 - beta, mu - alpha, mv - beta,
                   c.logit - c.log_y - c.log_z};
  out.reported = {out.residuals[0], out.residuals[1], out.residuals[2],
                  frac - sigmoid(c.log_y + c.log_z)};
  out.jacobian = {{
      {0.0, 0.0, ratio * a2, -dbeta},
      {vuu, vuv, 0.0, 0.0},
      {vuv, vvv, 0.0, -dbeta},
      {0.0, -1.0, -1.0, 1.0},
  }};
  return out;
}

SaddlePoint Solver::make_point(double alpha, const Coordinates& c,
                               int iterations) const {
  const Ensemble& e = *ensemble_;
  const double il = e.int_lambda();
  const auto ev = evaluate(alpha, c);
  SaddlePoint p;
  p.alpha = alpha;
  p.coords = c;
  p.x0 = std::exp(c.log_x);
  p.y0 = std::exp(c.log_y);
  p.z0 = std::exp(c.log_z);
  p.beta = ev.beta;
  p.residuals = ev.reported;
  p.iterations = iterations;
  const double common = ev.sum_delta_log_b - alpha * c.log_x +
                        (e.int_rho() / il) * ev.sum_gamma_log_a;
  p.g_value = common - softplus(c.logit) / il;
  p.g_expanded = common - ev.beta * c.log_y - ev.beta * c.log_z -
                 wef::binary_entropy(sigmoid(c.logit)) / il;
  return p;
}

std::optional<SaddlePoint> Solver::newton(double alpha, Coordinates v) const {
  auto ev = evaluate(alpha, v);
  double norm = max_abs(ev.residuals);
  int it = 0;
  int polish = 0;
  for (; it < options_.max_newton_steps && std::isfinite(norm); ++it) {
    if (norm < options_.target_residual && ++polish > 2) break;

    Eigen::Matrix4d jac;
    Eigen::Vector4d rhs;
    for (int i = 0; i < 4; ++i) {
      rhs(i) = -ev.residuals[i];
      for (int j = 0; j < 4; ++j) jac(i, j) = ev.jacobian[i][j];
    }
    const Eigen::FullPivLU<Eigen::Matrix4d> lu(jac);
    if (!lu.isInvertible()) break;
    Eigen::Vector4d step = lu.solve(rhs);
    if (!step.allFinite()) break;
    const double size = step.cwiseAbs().maxCoeff();
    if (size > options_.max_step) step *= options_.max_step / size;

    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h <= options_.max_halvings; ++h, t *= 0.5) {
      const Coordinates trial{v.log_x + t * step(0), v.log_y + t * step(1),
                              v.log_z + t * step(2), v.logit + t * step(3)};
      auto tev = evaluate(alpha, trial);
      const double tnorm = max_abs(tev.residuals);
      if (tnorm < norm || (tnorm <= norm && norm < options_.target_residual)) {
        v = trial;
        ev = tev;
        norm = tnorm;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  SaddlePoint p = make_point(alpha, v, it);
  if (!(p.residual_max() < options_.accept_residual) ||
      !std::isfinite(p.g_value)) {
    return std::nullopt;
  }
  return p;
}

double Solver::z_equation_lhs(double log_z) const {
  const Ensemble& e = *ensemble_;
  double s = 0.0;
  for (std::size_t t = 0; t < cn_tables_.size(); ++t) {
    s += e.gamma()[t] * cn_tables_[t].at_log(log_z).mean_u;
  }
  return s * e.int_rho() / e.int_lambda();
}

std::optional<double> Solver::solve_log_z(double beta) const {
  if (!(beta > 0.0 && beta < z_sup_)) return std::nullopt;
  auto f = [&](double c) { return z_equation_lhs(c) - beta; };
  double lo = -1.0, hi = 1.0;
  double flo = f(lo), fhi = f(hi);
  while (flo > 0.0 && lo > -4096.0) flo = f(lo *= 2.0);
  while (fhi < 0.0 && hi < 4096.0) fhi = f(hi *= 2.0);
  if (flo > 0.0 || fhi < 0.0) return std::nullopt;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  return bracketed_root(f, lo, hi, flo, fhi);
}

std::vector<Solver::InnerCandidate> Solver::inner(double logit) const {
  const Ensemble& e = *ensemble_;
  const double beta = sigmoid(logit) / e.int_lambda();
  const auto log_z = solve_log_z(beta);
  if (!log_z) return {};
  const double log_y = logit - *log_z;

  auto vn_moments = [&](double a) {
    double mu = 0, mv = 0;
    for (std::size_t t = 0; t < vn_tables_.size(); ++t) {
      const auto m = vn_tables_[t].at_log(a, log_y);
      mu += e.delta()[t] * m.mean_u;
      mv += e.delta()[t] * m.mean_v;
    }
    return std::pair{mu, mv};
  };
  auto g = [&](double a) { return vn_moments(a).second - beta; };

  // Scan for every sign change of the y0 equation in log x0.
  constexpr double kRange = 300.0;
  constexpr double kStep = 4.0;
  std::vector<InnerCandidate> out;
  double prev_a = -kRange;
  double prev_g = g(prev_a);
  for (double a = -kRange + kStep; a <= kRange + 1e-9; a += kStep) {
    const double ga = g(a);
    if (prev_g == 0.0 || (prev_g < 0.0) != (ga < 0.0)) {
      const double root =
          prev_g == 0.0 ? prev_a : bracketed_root(g, prev_a, a, prev_g, ga);
      out.push_back({{root, log_y, *log_z, logit}, vn_moments(root).first});
    }
    prev_a = a;
    prev_g = ga;
  }
  return out;
}

std::vector<Coordinates> Solver::nested_candidates(double alpha) const {
  const Ensemble& e = *ensemble_;
  const double frac_sup = z_sup_ * e.int_lambda();
  const double s_hi =
      frac_sup >= 1.0 ? 40.0
                      : std::min(40.0, std::log(frac_sup / (1.0 - frac_sup)) - 1e-9);
  constexpr double kLo = -60.0;
  constexpr double kStep = 0.5;

  std::vector<double> grid;
  for (double s = kLo; s < s_hi; s += kStep) grid.push_back(s);
  grid.push_back(s_hi);

  std::vector<std::vector<InnerCandidate>> cands;
  cands.reserve(grid.size());
  for (double s : grid) cands.push_back(inner(s));

  std::vector<Coordinates> out;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const auto& left = cands[i];
    const auto& right = cands[i + 1];
    const std::size_t shared = std::min(left.size(), right.size());
    for (std::size_t j = 0; j < shared; ++j) {
      double hl = left[j].alpha - alpha;
      const double hr = right[j].alpha - alpha;
      if ((hl < 0.0) == (hr < 0.0) && hl != 0.0) continue;

      double lo = grid[i], hi = grid[i + 1];
      InnerCandidate best = std::abs(hl) <= std::abs(hr) ? left[j] : right[j];
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto mc = inner(mid);
        if (mc.empty()) break;
        // Follow the branch whose log x0 is nearest to the incumbent.
        const auto nearest = std::min_element(
            mc.begin(), mc.end(), [&](const auto& a, const auto& b) {
              return std::abs(a.coords.log_x - best.coords.log_x) <
                     std::abs(b.coords.log_x - best.coords.log_x);
            });
        const double hm = nearest->alpha - alpha;
        best = *nearest;
        if (hm == 0.0) break;
        if ((hm < 0.0) == (hl < 0.0)) {
          lo = mid;
          hl = hm;
        } else {
          hi = mid;
        }
      }
      out.push_back(best.coords);
    }
  }
  return out;
}

SaddlePoint Solver::solve(double alpha) const {
  check_alpha(alpha);
  const auto candidates = nested_candidates(alpha);
  std::optional<SaddlePoint> best;
  double best_residual = kInf;
  for (const auto& c : candidates) {
    auto p = newton(alpha, c);
    if (!p) {
      best_residual = std::min(best_residual, max_abs(evaluate(alpha, c).reported));
      continue;
    }
    if (!best || p->residual_max() < best->residual_max()) best = p;
  }
  if (!best) {
    throw SolverError("no converged saddle point at alpha = " + describe(alpha) +
                          " (" + std::to_string(candidates.size()) +
                          " bracketed candidates, best residual " +
                          describe(best_residual) + ")",
                      best_residual);
  }
  best->cold_start = true;
  return *best;
}

SaddlePoint Solver::solve(double alpha, const Coordinates& warm) const {
  check_alpha(alpha);
  if (auto p = newton(alpha, warm)) return *p;
  return solve(alpha);
}

SaddlePoint solve_at(const Ensemble& ensemble, double alpha) {
  return Solver(ensemble).solve(alpha);
}

}  // namespace dgldpc::saddle
