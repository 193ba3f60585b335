#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <sstream>

#include "dgldpc/error.hpp"
#include "dgldpc/saddle.hpp"

namespace dgldpc::saddle {

namespace {

Coordinates extrapolate(const SaddlePoint& a, const SaddlePoint& b,
                        double alpha) {
  // Linear in log alpha through the two most recent converged points.
  const double t = (std::log(alpha) - std::log(b.alpha)) /
                   (std::log(b.alpha) - std::log(a.alpha));
  auto lerp = [t](double pa, double pb) { return pb + t * (pb - pa); };
  return {lerp(a.coords.log_x, b.coords.log_x),
          lerp(a.coords.log_y, b.coords.log_y),
          lerp(a.coords.log_z, b.coords.log_z),
          lerp(a.coords.logit, b.coords.logit)};
}

}  // namespace

std::size_t GrowthCurve::converged_count() const {
  return static_cast<std::size_t>(std::count_if(
      points.begin(), points.end(), [](const auto& p) { return p.converged; }));
}

std::vector<double> default_grid(const Ensemble& ensemble, int points,
                                 double lo, std::optional<double> hi) {
  const double top = hi.value_or(0.99 * ensemble.alpha_max());
  if (points < 1) throw DomainError("grid needs at least one point");
  if (!(lo > 0.0) || (points > 1 && !(top > lo))) {
    throw DomainError("grid bounds must satisfy 0 < lo < hi");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  if (points == 1) return {lo};
  const double ratio = std::log(top / lo) / (points - 1);
  for (int i = 0; i < points; ++i) grid.push_back(lo * std::exp(ratio * i));
  grid.back() = top;
  return grid;
}

GrowthCurve sweep(const Ensemble& ensemble, std::span<const double> grid,
                  const SweepOptions& options) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw DomainError("sweep grid must be strictly increasing");
    }
  }
  const auto start = std::chrono::steady_clock::now();
  const Solver solver(ensemble, options.solver);
  GrowthCurve curve;
  curve.points.resize(grid.size());

  // Sequential continuation pass.
  std::vector<const SaddlePoint*> history;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CurvePoint& cp = curve.points[i];
    cp.alpha = grid[i];
    try {
      std::optional<SaddlePoint> p;
      if (history.size() >= 2) {
        p = solver.newton(cp.alpha, extrapolate(*history[history.size() - 2],
                                                *history.back(), cp.alpha));
      }
      if (!p && !history.empty()) p = solver.newton(cp.alpha, history.back()->coords);
      if (!p) {
        p = solver.solve(cp.alpha);
        ++curve.cold_starts;
      }
      cp.point = *p;
      cp.converged = true;
      history.push_back(&cp.point);
    } catch (const Error& err) {
      cp.error = err.what();
    }
  }

  // Polish pass; each point restarts from its own solution, so the result
  // does not depend on the thread count or on scheduling.
  const std::size_t stride = static_cast<std::size_t>(std::max(1, options.polish_threads));
  auto polish = [&](std::size_t first) {
    for (std::size_t i = first; i < curve.points.size(); i += stride) {
      auto& cp = curve.points[i];
      if (!cp.converged) continue;
      if (auto p = solver.newton(cp.alpha, cp.point.coords)) {
        p->cold_start = cp.point.cold_start;
        p->iterations += cp.point.iterations;
        cp.point = *p;
      }
    }
  };
  if (stride == 1) {
    polish(0);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < stride; ++w) jobs.push_back(std::async(std::launch::async, polish, w));
    for (auto& j : jobs) j.get();
  }

  curve.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return curve;
}

AlphaStarResult alpha_star(const Ensemble& ensemble,
                           const AlphaStarOptions& options) {
  AlphaStarResult result;
  if (!ensemble.asymptotically_good()) {
    result.classified_zero = true;
    if (!options.scan_when_bad) return result;
  }
  if (!(options.alpha_lo > 0.0) || !(options.probe_factor > 1.0)) {
    throw DomainError("alpha* scan needs alpha_lo > 0 and probe factor > 1");
  }

  const Solver solver(ensemble);
  const double top = ensemble.alpha_max();
  std::optional<SaddlePoint> prev;
  for (double a = options.alpha_lo; a < top; a *= options.probe_factor) {
    const SaddlePoint p = prev ? solver.solve(a, prev->coords) : solver.solve(a);
    result.probes.emplace_back(a, p.g_value);
    if (p.g_value >= 0.0) {
      if (!prev) {
        result.nonnegative_at_start = true;
        result.value = 0.0;
        return result;
      }
      // Bisect on [prev, p]: G(prev) < 0 <= G(p).
      SaddlePoint lo = *prev, hi = p;
      SaddlePoint mid = hi;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (lo.alpha + hi.alpha);
        if (m <= lo.alpha || m >= hi.alpha) break;
        mid = solver.solve(m, lo.coords);
        if (std::abs(mid.g_value) < options.g_tolerance) break;
        (mid.g_value < 0.0 ? lo : hi) = mid;
      }
      result.crossing_found = true;
      result.value = mid.alpha;
      return result;
    }
    prev = p;
  }
  return result;
}

double growth_rate_bits(const Ensemble& ensemble, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    std::ostringstream os;
    os << "gamma = " << gamma << " outside (0, 1)";
    throw DomainError(os.str());
  }
  const double y = ensemble.bits_per_vn();
  return solve_at(ensemble, gamma * y).g_value / y;
}

}  // namespace dgldpc::saddle
