#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "dgldpc/ensemble.hpp"
#include "dgldpc/error.hpp"
#include "dgldpc/gf2/code.hpp"
#include "dgldpc/wef/exact_poly.hpp"

// Certification oracles. Everything here works from exact big-integer
// coefficients or exhaustive enumeration and shares no code with the saddle
// solver; floating point only enters where a limit has to be compared with
// a solver output.
namespace dgldpc::oracle {

// The requested coefficient is identically zero (parity or input/output
// weight locking), so there is no exponential rate to compare.
class StructuralZero : public DomainError {
 public:
  using DomainError::DomainError;
};

// Finite-l exponent against its saddle-point limit.
struct LemmaCheck {
  std::int64_t ell = 0;
  mpz_class coefficient;
  double rate = 0.0;   // (1 / l) log coefficient
  double x0 = 0.0;     // z for the univariate case
  double y0 = 1.0;     // 1 for the univariate case
  double limit = 0.0;
  double gap = 0.0;    // rate - limit
};

// (1/l) log Coeff[A^l, x^(xi l)] - log(A(z) / z^xi), z A'(z) / A(z) = xi.
// xi * l must be an integer and 0 < xi < deg A.
LemmaCheck lemma1_gap(const gf2::WeightEnumerator& a, double xi,
                      std::int64_t ell);

// Bivariate analogue on an IO weight enumerator with targets (xi, theta).
LemmaCheck lemma2_gap(const gf2::IOWeightEnumerator& b, double xi,
                      double theta, std::int64_t ell);

// Saddle-point limits alone (no big integers).
struct LemmaLimit {
  double x0 = 0.0;
  double y0 = 1.0;
  double limit = 0.0;
};
LemmaLimit lemma1_limit(const gf2::WeightEnumerator& a, double xi);
LemmaLimit lemma2_limit(const gf2::IOWeightEnumerator& b, double xi,
                        double theta);

// Exact expected weight spectrum of a finite ensemble member; values[w] is
// E[N_w] for input weight w = 0..N.
struct FiniteSpectrum {
  std::int64_t n = 0;
  std::vector<mpq_class> values;

  // (1 / n) log E[N_w]; nullopt when E[N_w] = 0.
  std::optional<double> normalized_log(std::int64_t w) const;
};

// Table limits for the exact path: (N + 1) (E + 1) entries at most.
inline constexpr std::int64_t kMaxSpectrumTable = 4'000'000;
// Brute force limits.
inline constexpr std::int64_t kMaxBruteEdges = 9;
inline constexpr std::int64_t kMaxBruteInputs = 20;

// Coefficients of prod_t A_t(z)^#CN_t: check-valid edge assignments by
// weight v = 0..E.
std::vector<mpz_class> check_valid_counts(const FiniteInstance& instance);

// Coefficients of prod_t B_t(x, y)^#VN_t: variable-valid split assignments
// by (input weight, edge weight).
wef::ExactPoly2 variable_valid_counts(const FiniteInstance& instance);

FiniteSpectrum exact_expected_spectrum(const FiniteInstance& instance);

// Average over all E! edge permutations and all 2^K inputs.
FiniteSpectrum brute_force_spectrum(const FiniteInstance& instance);

// Weight apportionment at a point of the pre-Lagrange objective. Edge
// weights are per variable node, so sum(eps) = sum(beta) = beta_total.
struct TypeApportionment {
  std::vector<double> eps;    // per CN type
  std::vector<double> alpha;  // per VN type, sums to alpha
  std::vector<double> beta;   // per VN type
  std::vector<double> x0;     // per VN type
  std::vector<double> y0;     // per VN type
  double z0 = 0.0;
  double beta_total = 0.0;
};

// S(alpha_t, beta_t) = sum_t X_t + Y(beta) - h(beta int_lambda) / int_lambda,
// each X_t a per-type bivariate limit. nullopt outside the feasible region.
std::optional<double> objective_S(const Ensemble& ensemble,
                                  const std::vector<double>& alpha_t,
                                  const std::vector<double>& beta_t,
                                  TypeApportionment* at = nullptr);

struct MaximizeOptions {
  int grid_resolution = 9;  // coarse points per free dimension
  int refine_points = 5;    // per dimension in each refinement round
  int refine_rounds = 30;
  double shrink = 3.0;
  std::size_t max_vn_types = 3;
};

struct MaximizeResult {
  double value = 0.0;
  TypeApportionment at;
  int dimensions = 0;
  std::int64_t evaluated = 0;
  std::int64_t skipped = 0;  // infeasible points or failed inner solves
};

// Grid maximization of S over the apportionment simplex, then nested
// refinement around the incumbent.
MaximizeResult maximize_S(const Ensemble& ensemble, double alpha,
                          const MaximizeOptions& options = {});

}  // namespace dgldpc::oracle
