#pragma once

#include <span>
#include <string_view>

// Log-domain moment kernels over the monomials of an enumerator polynomial
// P(x, y) = sum_i exp(log_coeff[i]) x^u[i] y^v[i], evaluated at
// (x, y) = (exp(lx), exp(ly)).
//
// The scalar kernel is the reference; vector kernels must agree with it to
// within a few ulps of accumulated rounding. The dispatcher picks the widest
// kernel the running CPU supports, unless overridden.

namespace dgldpc::simd {

struct MonomialSpan {
  std::span<const double> log_coeff;
  std::span<const double> u;
  std::span<const double> v;
};

// Weights p_i = c_i x^u_i y^v_i / P(x, y); all moments are under p.
struct Moments {
  double log_sum = 0.0;  // log P(x, y)
  double mean_u = 0.0;   // x dP/dx / P
  double mean_v = 0.0;   // y dP/dy / P
  double var_u = 0.0;
  double cov_uv = 0.0;
  double var_v = 0.0;
};

Moments moments_scalar(const MonomialSpan& terms, double lx, double ly);

#if defined(__x86_64__) || defined(_M_X64)
#define DGLDPC_HAVE_AVX2_KERNEL 1
Moments moments_avx2(const MonomialSpan& terms, double lx, double ly);
#endif

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);
bool isa_available(Isa isa);

// Kernel currently used by moments(); defaults to the best available.
Isa active_isa();
// Throws DomainError if the ISA is not available on this CPU.
void set_active_isa(Isa isa);

Moments moments(const MonomialSpan& terms, double lx, double ly);

}  // namespace dgldpc::simd
