#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dgldpc/ensemble.hpp"
#include "dgldpc/wef/log_eval.hpp"

namespace dgldpc::saddle {

// Unknowns of the 4x4 system in the coordinates the solver iterates on:
// log x0, log y0, log z0 and logit(beta * int_lambda). Every real vector
// maps to a feasible point (positive x0, y0, z0 and 0 < beta int_lambda < 1).
struct Coordinates {
  double log_x = 0.0;
  double log_y = 0.0;
  double log_z = 0.0;
  double logit = 0.0;
};

struct SaddlePoint {
  double alpha = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  double z0 = 0.0;
  double beta = 0.0;
  Coordinates coords;

  // Residuals of, in order: the z0 equation, the x0 equation, the y0
  // equation, and (beta L)(1 + y0 z0) = y0 z0 divided through by 1 + y0 z0.
  std::array<double, 4> residuals{};

  double g_value = 0.0;     // closed form with log(1 - beta L) / L
  double g_expanded = 0.0;  // form with -beta log z0 - beta log y0 - h(beta L) / L
  int iterations = 0;
  bool cold_start = false;

  double residual_max() const;
};

struct SolverOptions {
  double target_residual = 1e-12;
  double accept_residual = 1e-10;
  int max_newton_steps = 200;
  int max_halvings = 60;
  // Largest Newton step (max-norm, log coordinates) before scaling it down.
  double max_step = 4.0;
};

// Full evaluation of the system at a coordinate vector.
struct SystemEvaluation {
  std::array<double, 4> residuals{};  // solver residuals (F4 = logit - log y - log z)
  std::array<double, 4> reported{};   // residuals as in SaddlePoint
  std::array<std::array<double, 4>, 4> jacobian{};
  double beta = 0.0;
  double sum_delta_log_b = 0.0;
  double sum_gamma_log_a = 0.0;
};

class Solver {
 public:
  explicit Solver(const Ensemble& ensemble, SolverOptions options = {});

  const Ensemble& ensemble() const { return *ensemble_; }
  const SolverOptions& options() const { return options_; }

  // Cold start: nested bracketing, then Newton polish.
  SaddlePoint solve(double alpha) const;
  // Newton from the warm start; falls back to the cold start on failure.
  SaddlePoint solve(double alpha, const Coordinates& warm) const;

  // Newton polish only; nullopt if it does not reach accept_residual.
  std::optional<SaddlePoint> newton(double alpha, Coordinates start) const;

  SystemEvaluation evaluate(double alpha, const Coordinates& c) const;
  SaddlePoint make_point(double alpha, const Coordinates& c, int iterations) const;

  // Left-hand side of the z0 equation and its supremum over z0 > 0.
  double z_equation_lhs(double log_z) const;
  double z_equation_sup() const { return z_sup_; }

  // Candidates of the nested scheme for one alpha, before Newton polish.
  std::vector<Coordinates> nested_candidates(double alpha) const;

 private:
  struct InnerCandidate {
    Coordinates coords;
    double alpha;
  };

  void check_alpha(double alpha) const;
  std::optional<double> solve_log_z(double beta) const;
  std::vector<InnerCandidate> inner(double logit) const;

  const Ensemble* ensemble_;
  SolverOptions options_;
  std::vector<wef::MonomialTable> vn_tables_;
  std::vector<wef::MonomialTable> cn_tables_;
  double z_sup_ = 0.0;
};

// Cold-start solve.
SaddlePoint solve_at(const Ensemble& ensemble, double alpha);

struct CurvePoint {
  double alpha = 0.0;
  bool converged = false;
  SaddlePoint point;  // meaningful when converged
  std::string error;  // set when not converged
};

struct GrowthCurve {
  std::vector<CurvePoint> points;
  double seconds = 0.0;
  int cold_starts = 0;

  std::size_t converged_count() const;
};

struct SweepOptions {
  SolverOptions solver;
  // Threads for the post-continuation polish pass (which always runs).
  int polish_threads = 1;
};

// Continuation sweep over a strictly increasing grid. Points outside
// (0, alpha_max) or that fail to converge are flagged, not fatal.
GrowthCurve sweep(const Ensemble& ensemble, std::span<const double> grid,
                  const SweepOptions& options = {});

// Log-spaced grid; hi defaults to 0.99 alpha_max.
std::vector<double> default_grid(const Ensemble& ensemble, int points = 100,
                                 double lo = 1e-5,
                                 std::optional<double> hi = std::nullopt);

struct AlphaStarOptions {
  double alpha_lo = 1e-6;
  double probe_factor = 1.25;
  double g_tolerance = 1e-10;
  // Scan for a sign change even when C*V classifies the ensemble as bad.
  bool scan_when_bad = false;
};

struct AlphaStarResult {
  double value = 0.0;
  // C*V >= 1: alpha* = 0 without scanning.
  bool classified_zero = false;
  bool crossing_found = false;
  // G(alpha_lo) >= 0 already; the crossing lies below the scan range.
  bool nonnegative_at_start = false;
  std::vector<std::pair<double, double>> probes;  // (alpha, G)
};

AlphaStarResult alpha_star(const Ensemble& ensemble,
                           const AlphaStarOptions& options = {});

// H(gamma) = G(gamma y) / y for gamma in (0, 1).
double growth_rate_bits(const Ensemble& ensemble, double gamma);

}  // namespace dgldpc::saddle
