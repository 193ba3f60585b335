#include "doctest.h"

#include <cmath>

#include "dgldpc/config.hpp"
#include "dgldpc/ensemble.hpp"

using namespace dgldpc;
using gf2::SpcForm;

namespace {

Ensemble load(const char* name) {
  return config::to_ensemble(config::load_config(std::string(DGLDPC_DATA_DIR "/") + name));
}

Ensemble regular(int dv, int dc) {
  return Ensemble::build({VnType(gf2::make_repetition(dv), 1.0)},
                         {CnType(gf2::make_spc(dc, SpcForm::systematic), 1.0)});
}

}  // namespace

TEST_CASE("ensemble 1 parameters") {
  auto e = load("ensemble1.json");
  CHECK(std::abs(e.design_rate() - 0.5) < 1e-5);
  REQUIRE(e.c_param());
  REQUIRE(e.v_param());
  CHECK(*e.c_param() == doctest::Approx(0.208674).epsilon(1e-6));
  CHECK(*e.v_param() == doctest::Approx(5.72177).epsilon(1e-6));
  CHECK(std::abs(*e.cv_product() - 1.194) < 5e-4);
  CHECK(e.classification() == Classification::bad_cv_at_least_one);
  CHECK_FALSE(e.asymptotically_good());
}

TEST_CASE("ensemble 2 as printed") {
  auto e = load("ensemble2.json");
  CHECK(std::abs(*e.cv_product() - 1.228) < 5e-4);
  CHECK(e.design_rate() == doctest::Approx(0.50694).epsilon(1e-4));
  CHECK(e.raw_lambda_sum() == doctest::Approx(0.999999).epsilon(1e-12));
  double sum = 0;
  for (std::size_t t = 0; t < e.vn_types().size(); ++t) sum += e.lambda(t);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("regular (3,6)") {
  auto e = regular(3, 6);
  CHECK(e.int_lambda() == doctest::Approx(1.0 / 3));
  CHECK(e.int_rho() == doctest::Approx(1.0 / 6));
  CHECK(e.bits_per_vn() == doctest::Approx(1.0));
  CHECK(e.design_rate() == doctest::Approx(0.5));
  CHECK_FALSE(e.v_param());
  CHECK(e.classification() == Classification::good_no_weight2);
  CHECK(e.asymptotically_good());
}

TEST_CASE("node fractions") {
  for (const char* name : {"ensemble1.json", "ensemble2.json", "regular_3_6.json"}) {
    auto e = load(name);
    double sg = 0, sd = 0;
    for (double g : e.gamma()) sg += g;
    for (double d : e.delta()) sd += d;
    CHECK(sg == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sd == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t t = 0; t < e.vn_types().size(); ++t) {
      const double back = e.delta()[t] * e.vn_types()[t].code.length() * e.int_lambda();
      CHECK(std::abs(back - e.lambda(t)) < 1e-12);
    }
    for (std::size_t t = 0; t < e.cn_types().size(); ++t) {
      const double back = e.gamma()[t] * e.cn_types()[t].code.length() * e.int_rho();
      CHECK(std::abs(back - e.rho(t)) < 1e-12);
    }
  }
}

TEST_CASE("C*V of LDPC ensembles is lambda'(0) rho'(1)") {
  auto e = Ensemble::build(
      {VnType(gf2::make_repetition(2), 0.3), VnType(gf2::make_repetition(3), 0.7)},
      {CnType(gf2::make_spc(6, SpcForm::cyclic), 0.5), CnType(gf2::make_spc(7, SpcForm::systematic), 0.5)});
  const double lambda_prime_0 = 0.3;
  const double rho_prime_1 = 0.5 * 5 + 0.5 * 6;
  CHECK(std::abs(*e.cv_product() - lambda_prime_0 * rho_prime_1) < 1e-12);
  CHECK(e.classification() == Classification::bad_cv_at_least_one);

  auto good = Ensemble::build(
      {VnType(gf2::make_repetition(2), 0.1), VnType(gf2::make_repetition(4), 0.9)},
      {CnType(gf2::make_spc(6, SpcForm::cyclic), 1.0)});
  CHECK(std::abs(*good.cv_product() - 0.1 * 5) < 1e-12);
  CHECK(good.classification() == Classification::good_cv_below_one);
}

TEST_CASE("validation") {
  auto rep2 = gf2::make_repetition(2);
  auto spc4 = gf2::make_spc(4, SpcForm::systematic);
  CHECK_THROWS_AS(Ensemble::build({}, {CnType(spc4, 1.0)}), ValidationError);
  CHECK_THROWS_AS(Ensemble::build({VnType(rep2, 1.0)}, {}), ValidationError);
  CHECK_THROWS_AS(Ensemble::build({VnType(rep2, 0.5)}, {CnType(spc4, 1.0)}), ValidationError);
  CHECK_THROWS_AS(Ensemble::build({VnType(rep2, 1.0)}, {CnType(spc4, -0.2), CnType(spc4, 1.2)}),
                  ValidationError);
  try {
    Ensemble::build({VnType(rep2, 0.9)}, {CnType(spc4, 1.0)});
    FAIL("bad sum accepted");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("deficit") != std::string::npos);
  }
  // rep-2 variables into rate-1/4 checks give R = 1 - (3/4) / (1/2) < 0.
  CHECK_THROWS_AS(Ensemble::build({VnType(rep2, 1.0)}, {CnType(gf2::make_repetition(4), 1.0)}),
                  DegenerateEnsemble);
}

TEST_CASE("instantiate") {
  auto e36 = regular(3, 6);
  auto i = instantiate(e36, 6);
  CHECK(i.edges == 18);
  CHECK(i.checks == 3);
  CHECK(i.bits == 6);
  CHECK(smallest_valid_n(e36) == 2);
  CHECK_THROWS_AS(instantiate(e36, 3), InvalidInstanceSize);

  auto toy = Ensemble::build({VnType(gf2::make_repetition(2), 1.0)},
                             {CnType(gf2::make_spc(4, SpcForm::systematic), 1.0)});
  auto t = instantiate(toy, 4);
  CHECK(t.edges == 8);
  CHECK(t.checks == 2);
  CHECK(t.bits == 4);

  auto e1 = load("ensemble1.json");
  const mpz_class n0 = smallest_valid_n(e1);
  CHECK(n0 == 1139115);
  try {
    instantiate(e1, 1000);
    FAIL("invalid n accepted");
  } catch (const InvalidInstanceSize& err) {
    CHECK(err.smallest_valid_n() == n0);
  }
  auto big = instantiate(e1, n0.get_si());
  CHECK(std::abs(big.rate().get_d() - e1.design_rate()) < 1e-12);
  CHECK(big.n * 1.0 / e1.int_lambda() == doctest::Approx(static_cast<double>(big.edges)));
  // Edge balance: n int_rho = m int_lambda.
  CHECK(std::abs(big.n * e1.int_rho() - big.checks * e1.int_lambda()) < 1e-6);
}

TEST_CASE("rational_from_decimal") {
  CHECK(rational_from_decimal(0.5) == mpq_class(1, 2));
  CHECK(rational_from_decimal(0.944354) == mpq_class(472177, 500000));
  CHECK(rational_from_decimal(1.0 / 3) == mpq_class(1, 3));
}
