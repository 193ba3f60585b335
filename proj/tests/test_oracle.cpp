#include "doctest.h"

#include <cmath>
#include <numbers>

#include "dgldpc/config.hpp"
#include "dgldpc/oracle.hpp"
#include "dgldpc/saddle.hpp"

using namespace dgldpc;
using namespace dgldpc::oracle;
using gf2::SpcForm;

namespace {

Ensemble load(const char* name) {
  return config::to_ensemble(config::load_config(std::string(DGLDPC_DATA_DIR "/") + name));
}

FiniteInstance::VnGroup vn(const gf2::BinaryLinearCode& c, std::int64_t count) {
  return {c, gf2::enumerate_iowef(c), count};
}
FiniteInstance::CnGroup cn(const gf2::BinaryLinearCode& c, std::int64_t count) {
  return {c, gf2::enumerate_wef(c), count};
}

gf2::WeightEnumerator one_plus_x2() {
  return gf2::WeightEnumerator({mpz_class(1), mpz_class(0), mpz_class(1)});
}

mpz_class binom(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

TEST_CASE("lemma 1 on 1 + x^2") {
  auto a = one_plus_x2();
  auto c = lemma1_gap(a, 1.0, 100);
  CHECK(c.coefficient == binom(100, 50));
  CHECK(c.x0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.limit == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(std::abs(c.gap + std::log(std::numbers::pi * 50) / 200) < 0.005);
  double prev = std::abs(c.gap);
  for (std::int64_t ell : {200, 400, 800}) {
    const double g = std::abs(lemma1_gap(a, 1.0, ell).gap);
    CHECK(g < prev);
    prev = g;
  }
  CHECK_THROWS_AS(lemma1_gap(a, 1.0, 101), StructuralZero);
  CHECK_THROWS_AS(lemma1_gap(a, 0.3, 10), DomainError);
  CHECK_THROWS_AS(lemma1_gap(a, 2.5, 10), DomainError);
}

TEST_CASE("lemma 1 on spc 7") {
  auto a = gf2::enumerate_wef(gf2::make_spc(7, SpcForm::systematic));
  auto c = lemma1_gap(a, 2.0, 500);
  CHECK(std::abs(c.gap) < 0.02);
  CHECK(c.gap < 0);
  auto l = lemma1_limit(a, 2.0);
  CHECK(l.limit == doctest::Approx(c.limit).epsilon(1e-14));
  CHECK(wef::dlog_A(a, l.x0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("lemma 2 examples") {
  auto rep2 = gf2::enumerate_iowef(gf2::make_repetition(2));
  auto c = lemma2_gap(rep2, 0.5, 1.0, 100);
  CHECK(c.coefficient == binom(100, 50));
  CHECK(c.limit == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(c.x0 * c.y0 * c.y0 == doctest::Approx(1.0).epsilon(1e-8));

  auto rep3 = gf2::enumerate_iowef(gf2::make_repetition(3));
  CHECK_THROWS_AS(lemma2_gap(rep3, 0.5, 1.0, 10), StructuralZero);

  auto cyc = gf2::enumerate_iowef(gf2::make_spc(7, SpcForm::cyclic));
  double prev = 1.0;
  for (std::int64_t ell : {175, 350, 700}) {
    const auto r = lemma2_gap(cyc, 1.0 / 7, 2.0 / 7, ell);
    CHECK(std::abs(r.gap) < prev);
    prev = std::abs(r.gap);
  }
  CHECK(prev < 0.03);
}

TEST_CASE("lemma 2 limit at an interior point") {
  auto sys = gf2::enumerate_iowef(gf2::make_spc(7, SpcForm::systematic));
  auto l = lemma2_limit(sys, 3.0, 3.5);
  CHECK(wef::dlog_B_x(sys, l.x0, l.y0) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(wef::dlog_B_y(sys, l.x0, l.y0) == doctest::Approx(3.5).epsilon(1e-10));
  // At x = y = 1 the means are (3, 3.5), so the limit is log 2^6.
  CHECK(l.limit == doctest::Approx(6 * std::log(2.0)).epsilon(1e-12));
  double prev = 1.0;
  for (std::int64_t ell : {20, 40, 80}) {
    const double g = std::abs(lemma2_gap(sys, 3.0, 3.5, ell).gap);
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("exact spectrum equals brute force on toy graphs") {
  auto rep2 = gf2::make_repetition(2);
  auto rep3 = gf2::make_repetition(3);
  auto spc3 = gf2::make_spc(3, SpcForm::cyclic);
  auto spc4 = gf2::make_spc(4, SpcForm::systematic);
  std::vector<FiniteInstance> toys{
      FiniteInstance::from_counts({vn(rep2, 4)}, {cn(spc4, 2)}),
      FiniteInstance::from_counts({vn(rep2, 2)}, {cn(spc4, 1)}),
      FiniteInstance::from_counts({vn(rep3, 2)}, {cn(spc3, 2)}),
      FiniteInstance::from_counts({vn(spc3, 2)}, {cn(spc3, 2)}),
      FiniteInstance::from_counts({vn(rep2, 1), vn(spc3, 2)}, {cn(spc4, 2)}),
      FiniteInstance::from_counts({vn(rep2, 2), vn(rep3, 1)}, {cn(spc3, 1), cn(spc4, 1)}),
  };
  for (const auto& inst : toys) {
    auto exact = exact_expected_spectrum(inst);
    auto brute = brute_force_spectrum(inst);
    REQUIRE(exact.values.size() == brute.values.size());
    CHECK(exact.values[0] == 1);
    for (std::size_t w = 0; w < exact.values.size(); ++w) {
      CHECK(exact.values[w] == brute.values[w]);
      CHECK(exact.values[w] >= 0);
    }
  }
  auto first = exact_expected_spectrum(toys[0]).values;
  std::vector<mpq_class> expected{1, mpq_class(12, 7), mpq_class(114, 35), mpq_class(12, 7), 1};
  CHECK(first == expected);
}

TEST_CASE("universe check nodes leave the input product") {
  auto id2 = gf2::make_explicit({"10", "01"});
  auto inst = FiniteInstance::from_counts({vn(gf2::make_repetition(2), 2), vn(gf2::make_spc(3, SpcForm::cyclic), 1)},
                                          {cn(id2, 2), cn(gf2::make_explicit({"100", "010", "001"}), 1)});
  auto brute = brute_force_spectrum(inst);
  auto exact = exact_expected_spectrum(inst);
  const auto k = inst.bits;
  REQUIRE(k == 4);
  for (std::int64_t w = 0; w <= k; ++w) {
    CHECK(brute.values[w] == binom(k, w));
    CHECK(exact.values[w] == binom(k, w));
  }
}

TEST_CASE("brute force guards") {
  auto big = FiniteInstance::from_counts({vn(gf2::make_repetition(2), 5)}, {cn(gf2::make_spc(5, SpcForm::systematic), 2)});
  CHECK_THROWS_AS(brute_force_spectrum(big), ResourceLimit);
  CHECK_THROWS_AS(FiniteInstance::from_counts({vn(gf2::make_repetition(2), 3)}, {cn(gf2::make_spc(4, SpcForm::systematic), 1)}),
                  ValidationError);
}

TEST_CASE("check-valid counts of a single type are a power coefficient") {
  auto e36 = Ensemble::build({VnType(gf2::make_repetition(3), 1.0)},
                             {CnType(gf2::make_spc(6, SpcForm::systematic), 1.0)});
  auto inst = instantiate(e36, 12);
  auto counts = check_valid_counts(inst);
  REQUIRE(static_cast<std::int64_t>(counts.size()) == inst.edges + 1);
  wef::ExactPoly a(gf2::enumerate_wef(gf2::make_spc(6, SpcForm::systematic)));
  for (std::int64_t v = 0; v <= inst.edges; ++v) CHECK(counts[v] == wef::poly_pow_coeff(a, inst.checks, v));

  auto vv = variable_valid_counts(inst);
  CHECK(vv.coeff(4, 12) == binom(12, 4));
  CHECK(vv.coeff(4, 11) == 0);
}

TEST_CASE("finite-n spectrum approaches the growth rate") {
  auto e36 = load("regular_3_6.json");
  const double g = saddle::solve_at(e36, 0.3).g_value;
  double prev_gap = 1.0;
  for (std::int64_t n : {60, 120}) {
    auto s = exact_expected_spectrum(instantiate(e36, n));
    CHECK(s.values[0] == 1);
    const auto r = s.normalized_log(3 * n / 10);
    REQUIRE(r);
    const double gap = std::abs(*r - g);
    CHECK(gap < prev_gap);
    prev_gap = gap;
    // Weight 1 puts an odd number of ones into even-weight checks.
    CHECK(s.values[1] == 0);
    CHECK_FALSE(s.normalized_log(1));
  }
}

TEST_CASE("objective S and its maximization") {
  auto e36 = load("regular_3_6.json");
  for (double alpha : {0.02, 0.1, 0.3}) {
    auto m = maximize_S(e36, alpha);
    CHECK(m.dimensions == 0);
    CHECK(std::abs(m.value - saddle::solve_at(e36, alpha).g_value) < 1e-6);
  }

  auto e1 = load("ensemble1.json");
  const double g = saddle::solve_at(e1, 0.05).g_value;
  MaximizeOptions coarse;
  coarse.refine_rounds = 0;
  auto rough = maximize_S(e1, 0.05, coarse);
  CHECK(rough.value <= g + 1e-9);
  auto m = maximize_S(e1, 0.05);
  CHECK(m.value >= rough.value);
  CHECK(m.value <= g + 1e-9);
  CHECK(std::abs(m.value - g) < 1e-4);
  REQUIRE(m.at.x0.size() == 2);
  CHECK(m.at.x0[0] == doctest::Approx(m.at.x0[1]).epsilon(1e-3));
  double sa = 0, sb = 0, se = 0;
  for (double a : m.at.alpha) sa += a;
  for (double b : m.at.beta) sb += b;
  for (double e : m.at.eps) se += e;
  CHECK(sa == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(sb == doctest::Approx(m.at.beta_total).epsilon(1e-12));
  CHECK(se == doctest::Approx(m.at.beta_total).epsilon(1e-9));

  CHECK_THROWS_AS(maximize_S(e1, 0.0), DomainError);
  CHECK_THROWS_AS(maximize_S(e1, e1.alpha_max()), DomainError);
  auto e2 = load("ensemble2.json");
  CHECK_THROWS_AS(maximize_S(e2, 0.05), ResourceLimit);
}
