#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "detail.hpp"

namespace dgldpc::oracle {

namespace {

// Per-VN-type data for evaluating X_t(alpha_t, beta_t).
struct VnModel {
  wef::MonomialTable table;
  std::vector<std::pair<int, int>> support;
  // Supports on a line v = slope * u through the origin (repetition codes)
  // collapse to a univariate enumerator in w = x y^slope.
  bool collinear = false;
  int slope = 0;
  std::optional<wef::MonomialTable> line;
  int k = 0;

  explicit VnModel(const gf2::IOWeightEnumerator& b) : table(b), k(b.dimension()) {
    for (int u = 0; u <= b.dimension(); ++u)
      for (int v = 0; v <= b.length(); ++v)
        if (b.at(u, v) != 0) support.emplace_back(u, v);
    collinear = true;
    for (const auto& [u, v] : support) {
      if (u == 0) {
        if (v != 0) collinear = false;
        continue;
      }
      if (slope == 0) slope = v / u;
      if (v != slope * u) collinear = false;
    }
    if (collinear) {
      std::vector<mpz_class> coeffs(static_cast<std::size_t>(k) + 1, 0);
      for (const auto& [u, v] : support) coeffs[u] = b.at(u, v);
      line.emplace(gf2::WeightEnumerator(std::move(coeffs)));
    }
  }

  // Edge-weight range per node over the convex hull of the support.
  std::pair<double, double> theta_range(double xi) const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& [u1, v1] : support) {
      if (u1 == xi) {
        lo = std::min(lo, double(v1));
        hi = std::max(hi, double(v1));
      }
      for (const auto& [u2, v2] : support) {
        if (!(u1 < xi && xi < u2)) continue;
        const double v = v1 + (v2 - v1) * (xi - u1) / double(u2 - u1);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    return {lo, hi};
  }
};

struct Model {
  const Ensemble* ens;
  std::vector<VnModel> vns;
  std::vector<wef::MonomialTable> cns;
  double check_ratio;  // int_rho / int_lambda, checks per variable node

  explicit Model(const Ensemble& e) : ens(&e), check_ratio(e.int_rho() / e.int_lambda()) {
    for (const auto& t : e.vn_types()) vns.emplace_back(t.iowef);
    for (const auto& t : e.cn_types()) cns.emplace_back(t.wef);
  }

  double cn_mean(double lz) const {
    double s = 0.0;
    for (std::size_t t = 0; t < cns.size(); ++t) s += ens->gamma()[t] * cns[t].at_log(lz).mean_u;
    return check_ratio * s;
  }

  // X_t and the type's saddle point; beta_t is filled in for collinear types.
  std::optional<double> vn_term(std::size_t t, double alpha_t, double& beta_t,
                                double& x0, double& y0, double& w0) const {
    const VnModel& m = vns[t];
    const double d = ens->delta()[t];
    const double xi = alpha_t / d;
    if (!(xi > 0.0 && xi < m.k)) return std::nullopt;
    try {
      if (m.collinear) {
        beta_t = m.slope * alpha_t;
        const double lw = detail::monotone_root(
            [&](double s) { return m.line->at_log(s).mean_u; }, xi);
        w0 = std::exp(lw);
        return d * (m.line->at_log(lw).log_sum - xi * lw);
      }
      const LemmaLimit lim = detail::solve_bivariate(m.table, xi, beta_t / d);
      x0 = lim.x0;
      y0 = lim.y0;
      return d * lim.limit;
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  std::optional<double> objective(const std::vector<double>& alpha_t,
                                  std::vector<double> beta_t,
                                  TypeApportionment* at) const {
    const std::size_t n = vns.size();
    std::vector<double> x0(n, 0.0), y0(n, 0.0), w0(n, 0.0);
    double s = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const auto x = vn_term(t, alpha_t[t], beta_t[t], x0[t], y0[t], w0[t]);
      if (!x) return std::nullopt;
      s += *x;
    }
    double beta = 0.0;
    for (double b : beta_t) beta += b;
    const double bl = beta * ens->int_lambda();
    if (!(bl > 0.0 && bl < 1.0)) return std::nullopt;

    // Check side: one common z for every CN type.
    double lz;
    try {
      lz = detail::monotone_root([&](double c) { return cn_mean(c); }, beta);
    } catch (const Error&) {
      return std::nullopt;
    }
    double y = 0.0;
    for (std::size_t t = 0; t < cns.size(); ++t) y += ens->gamma()[t] * cns[t].at_log(lz).log_sum;
    s += check_ratio * y - beta * lz;
    s -= wef::binary_entropy(bl) / ens->int_lambda();
    if (!std::isfinite(s)) return std::nullopt;

    if (at) {
      at->alpha = alpha_t;
      at->beta = beta_t;
      at->beta_total = beta;
      at->z0 = std::exp(lz);
      at->eps.clear();
      for (std::size_t t = 0; t < cns.size(); ++t) {
        at->eps.push_back(check_ratio * ens->gamma()[t] * cns[t].at_log(lz).mean_u);
      }
      // Collinear types only pin x y^slope; split it with the y0 implied by
      // stationarity in beta.
      const double y_common = bl / ((1.0 - bl) * at->z0);
      for (std::size_t t = 0; t < n; ++t) {
        if (vns[t].collinear) {
          y0[t] = y_common;
          x0[t] = w0[t] / std::pow(y_common, vns[t].slope);
        }
      }
      at->x0 = x0;
      at->y0 = y0;
    }
    return s;
  }
};

// Maps a point of the unit cube to per-type (alpha_t, beta_t): stick-breaking
// over the alpha split, then a hull fraction for each non-collinear type.
bool decode(const Model& m, double alpha, const std::vector<double>& p,
            std::vector<double>& alpha_t, std::vector<double>& beta_t) {
  const std::size_t n = m.vns.size();
  alpha_t.assign(n, 0.0);
  beta_t.assign(n, 0.0);
  double rest = alpha;
  std::size_t i = 0;
  for (std::size_t t = 0; t + 1 < n; ++t) {
    alpha_t[t] = rest * p[i++];
    rest -= alpha_t[t];
  }
  alpha_t[n - 1] = rest;
  for (std::size_t t = 0; t < n; ++t) {
    if (m.vns[t].collinear) continue;
    const double d = m.ens->delta()[t];
    const double xi = alpha_t[t] / d;
    if (!(xi > 0.0 && xi < m.vns[t].k)) return false;
    const auto [lo, hi] = m.vns[t].theta_range(xi);
    if (!(hi > lo)) return false;
    beta_t[t] = d * (lo + p[i++] * (hi - lo));
  }
  return true;
}

int free_dimensions(const Model& m) {
  int d = static_cast<int>(m.vns.size()) - 1;
  for (const auto& v : m.vns) d += v.collinear ? 0 : 1;
  return d;
}

}  // namespace

std::optional<double> objective_S(const Ensemble& ensemble,
                                  const std::vector<double>& alpha_t,
                                  const std::vector<double>& beta_t,
                                  TypeApportionment* at) {
  if (alpha_t.size() != ensemble.vn_types().size() ||
      beta_t.size() != ensemble.vn_types().size()) {
    throw DomainError("one (alpha_t, beta_t) pair per VN type is required");
  }
  const Model model(ensemble);
  return model.objective(alpha_t, beta_t, at);
}

MaximizeResult maximize_S(const Ensemble& ensemble, double alpha,
                          const MaximizeOptions& options) {
  if (!(alpha > 0.0 && alpha < ensemble.alpha_max())) {
    throw DomainError("alpha must lie in (0, alpha_max)");
  }
  if (ensemble.vn_types().size() > options.max_vn_types) {
    std::ostringstream os;
    os << "grid maximization is limited to " << options.max_vn_types
       << " VN types (got " << ensemble.vn_types().size() << ")";
    throw ResourceLimit(os.str());
  }
  if (options.grid_resolution < 1 || options.refine_points < 2 ||
      !(options.shrink > 1.0) || options.refine_rounds < 0) {
    throw DomainError("invalid grid maximization options");
  }

  const Model model(ensemble);
  const int dims = free_dimensions(model);
  MaximizeResult result;
  result.dimensions = dims;
  result.value = -std::numeric_limits<double>::infinity();
  std::vector<double> best_p;
  std::vector<double> at_alpha, at_beta;

  auto try_point = [&](const std::vector<double>& p) {
    ++result.evaluated;
    std::vector<double> a, b;
    std::optional<double> s;
    if (decode(model, alpha, p, a, b)) s = model.objective(a, b, nullptr);
    if (!s) {
      ++result.skipped;
      return;
    }
    if (*s > result.value) {
      result.value = *s;
      best_p = p;
      at_alpha = a;
      at_beta = b;
    }
  };

  // Visits every point of a tensor grid given per-dimension coordinates.
  auto tensor = [&](const std::vector<std::vector<double>>& axes) {
    std::vector<std::size_t> idx(axes.size(), 0);
    std::vector<double> p(axes.size());
    while (true) {
      for (std::size_t d = 0; d < axes.size(); ++d) p[d] = axes[d][idx[d]];
      try_point(p);
      std::size_t d = 0;
      while (d < axes.size() && ++idx[d] == axes[d].size()) idx[d++] = 0;
      if (d == axes.size()) break;
    }
  };

  const int g = options.grid_resolution;
  std::vector<std::vector<double>> axes(static_cast<std::size_t>(dims));
  for (auto& ax : axes)
    for (int i = 0; i < g; ++i) ax.push_back((i + 0.5) / g);
  tensor(axes);
  if (best_p.empty() && dims > 0) {
    throw SolverError("no feasible point on the coarse grid", 0.0);
  }

  // Shrink only when the incumbent stays inside the box; an incumbent on the
  // box edge means the maximum may lie beyond it, so recentre first.
  double half = 1.0 / g;
  int shrinks = 0;
  for (int round = 0; round < 10 * options.refine_rounds && dims > 0 &&
                      shrinks < options.refine_rounds && half > 1e-14;
       ++round) {
    const std::vector<double> centre = best_p;
    for (int d = 0; d < dims; ++d) {
      auto& ax = axes[d];
      ax.clear();
      for (int j = 0; j < options.refine_points; ++j) {
        const double v = centre[d] - half + 2.0 * half * j / (options.refine_points - 1);
        if (v > 0.0 && v < 1.0) ax.push_back(v);
      }
      if (ax.empty()) ax.push_back(centre[d]);
    }
    tensor(axes);
    bool on_edge = false;
    for (int d = 0; d < dims; ++d) {
      on_edge |= std::abs(best_p[d] - centre[d]) >= half * (1.0 - 1e-12);
    }
    if (!on_edge) {
      half /= options.shrink;
      ++shrinks;
    }
  }
  if (!std::isfinite(result.value)) {
    throw SolverError("objective is infeasible at every grid point", 0.0);
  }
  model.objective(at_alpha, at_beta, &result.at);
  return result;
}

}  // namespace dgldpc::oracle
