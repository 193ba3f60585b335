#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "dgldpc/config.hpp"
#include "dgldpc/saddle.hpp"
#include "dgldpc/simd/moments.hpp"

using namespace dgldpc;
using namespace dgldpc::simd;

namespace {

struct Table {
  std::vector<double> c, u, v;
  MonomialSpan span() const { return {c, u, v}; }
};

Table random_table(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> lc(0.0, 12.0);
  Table t;
  for (std::size_t i = 0; i < n; ++i) {
    t.c.push_back(lc(rng));
    t.u.push_back(static_cast<double>(rng() % 8));
    t.v.push_back(static_cast<double>(rng() % 25));
  }
  return t;
}

void check_close(const Moments& a, const Moments& b) {
  const double scale = 1.0 + std::abs(a.log_sum);
  CHECK(std::abs(a.log_sum - b.log_sum) <= 1e-13 * scale);
  CHECK(std::abs(a.mean_u - b.mean_u) <= 1e-12 * (1.0 + std::abs(a.mean_u)));
  CHECK(std::abs(a.mean_v - b.mean_v) <= 1e-12 * (1.0 + std::abs(a.mean_v)));
  CHECK(std::abs(a.var_u - b.var_u) <= 1e-10 * (1.0 + std::abs(a.var_u)));
  CHECK(std::abs(a.cov_uv - b.cov_uv) <= 1e-10 * (1.0 + std::abs(a.cov_uv)));
  CHECK(std::abs(a.var_v - b.var_v) <= 1e-10 * (1.0 + std::abs(a.var_v)));
}

// Restores the dispatcher's choice when a test ends.
struct IsaGuard {
  Isa saved = active_isa();
  ~IsaGuard() { set_active_isa(saved); }
};

}  // namespace

TEST_CASE("scalar kernel on a small table") {
  // 1 + x y^2 at x = y = 1.
  std::vector<double> c{0.0, 0.0}, u{0.0, 1.0}, v{0.0, 2.0};
  auto m = moments_scalar({c, u, v}, 0.0, 0.0);
  CHECK(m.log_sum == doctest::Approx(std::log(2.0)));
  CHECK(m.mean_u == doctest::Approx(0.5));
  CHECK(m.mean_v == doctest::Approx(1.0));
  CHECK(m.var_u == doctest::Approx(0.25));
  CHECK(m.cov_uv == doctest::Approx(0.5));
  CHECK(m.var_v == doctest::Approx(1.0));
}

TEST_CASE("scalar kernel avoids overflow") {
  std::vector<double> c{0.0, 3.0, 1.0}, u{0.0, 1.0, 2.0}, v{0.0, 3.0, 6.0};
  auto m = moments_scalar({c, u, v}, 400.0, 300.0);
  CHECK(std::isfinite(m.log_sum));
  CHECK(m.log_sum == doctest::Approx(1.0 + 800.0 + 1800.0));
  CHECK(m.mean_u == doctest::Approx(2.0));
  auto lo = moments_scalar({c, u, v}, -800.0, -300.0);
  CHECK(std::abs(lo.log_sum) < 1e-300);
  CHECK(lo.mean_u >= 0.0);
}

TEST_CASE("dispatcher") {
  CHECK(isa_available(Isa::scalar));
  IsaGuard guard;
  set_active_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  if (!isa_available(Isa::avx2)) CHECK_THROWS_AS(set_active_isa(Isa::avx2), DomainError);
  CHECK(to_string(Isa::avx2) == "avx2");
}

#ifdef DGLDPC_HAVE_AVX2_KERNEL
TEST_CASE("avx2 kernel matches the scalar reference") {
  if (!isa_available(Isa::avx2)) {
    MESSAGE("avx2 not available on this CPU; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> arg(-60.0, 60.0);
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 33u, 64u, 101u}) {
    auto t = random_table(rng, n);
    for (int i = 0; i < 40; ++i) {
      const double lx = arg(rng), ly = arg(rng) / 4.0;
      check_close(moments_scalar(t.span(), lx, ly), moments_avx2(t.span(), lx, ly));
    }
  }
  Table empty;
  auto a = moments_scalar(empty.span(), 0.5, 0.5);
  auto b = moments_avx2(empty.span(), 0.5, 0.5);
  CHECK(a.log_sum == b.log_sum);
}

TEST_CASE("solver output does not depend on the kernel") {
  IsaGuard guard;
  auto ens = config::to_ensemble(config::load_config(DGLDPC_DATA_DIR "/ensemble1.json"));
  for (double alpha : {1e-4, 0.01, 0.1, 0.4}) {
    set_active_isa(Isa::scalar);
    auto s = saddle::solve_at(ens, alpha);
    set_active_isa(Isa::avx2);
    auto v = saddle::solve_at(ens, alpha);
    CHECK(s.g_value == doctest::Approx(v.g_value).epsilon(1e-10));
    CHECK(std::abs(s.g_value - v.g_value) < 1e-10);
  }
}
#endif
