#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dgldpc/config.hpp"

using namespace dgldpc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DGLDPC_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const char* name) { return std::string(DGLDPC_DATA_DIR "/") + name; }

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "dgldpc_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

}  // namespace

TEST_CASE("config parsing") {
  auto cfg = config::load_config(data("ensemble1.json"));
  REQUIRE(cfg.vn.size() == 2);
  CHECK(cfg.vn[0].code.kind == "repetition");
  CHECK(cfg.vn[1].code.form == gf2::SpcForm::cyclic);
  CHECK(cfg.vn[1].fraction == 0.944354);
  CHECK(cfg.cn[0].code.kind == "hamming74");
  REQUIRE(cfg.reference.cv_product);
  CHECK(*cfg.reference.cv_product == 1.19);

  const std::string bad_syntax = "{\n  \"schema\": 1,\n  \"vn\": [,]\n}";
  try {
    config::parse_config(bad_syntax, "x.json");
    FAIL("syntax error accepted");
  } catch (const config::ConfigError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 10);
    CHECK(contains(e.what(), "x.json:3:10"));
  }

  auto expect_pointer = [](const std::string& text, const std::string& ptr) {
    try {
      config::parse_config(text);
      FAIL("accepted: " << text);
    } catch (const config::ConfigError& e) {
      CHECK(e.pointer() == ptr);
    }
  };
  const std::string cn = R"("cn": [{"code": {"kind": "spc", "q": 6}, "rho": 1}])";
  expect_pointer(R"({"vn": [{"code": {"kind": "ldpc", "q": 3}, "lambda": 1}], )" + cn + "}", "/vn/0/code/kind");
  expect_pointer(R"({"vn": [{"code": {"kind": "repetition", "q": 3, "x": 1}, "lambda": 1}], )" + cn + "}",
                 "/vn/0/code");
  expect_pointer(R"({"vn": [{"code": {"kind": "repetition", "q": 3}, "lambda": "1"}], )" + cn + "}", "/vn/0/lambda");
  expect_pointer(R"({"schema": 2, "vn": [], )" + cn + "}", "/schema");
  expect_pointer(R"({"vn": [{"code": {"kind": "spc", "q": 6, "form": "antisystematic"}, "lambda": 1}], )" + cn + "}",
                 "/vn/0/code");
  expect_pointer(R"({"vn": [{"code": {"kind": "explicit", "rows": ["11", "11"]}, "lambda": 1}], )" + cn + "}",
                 "/vn/0/code");
  expect_pointer(R"({"vn": [{"code": {"kind": "repetition", "q": 3}, "lambda": 1}], )" + cn + R"(, "extra": 0})", "");
}

TEST_CASE("config round trip") {
  for (const char* name : {"ensemble1.json", "ensemble2.json", "regular_3_6.json"}) {
    auto cfg = config::load_config(data(name));
    auto e = config::to_ensemble(cfg);
    auto again = config::parse_config(config::emit_config(e, cfg.name, cfg.reference));
    auto f = config::to_ensemble(again);
    CHECK(again.name == cfg.name);
    REQUIRE(again.vn.size() == cfg.vn.size());
    for (std::size_t i = 0; i < cfg.vn.size(); ++i) {
      CHECK(again.vn[i].code == cfg.vn[i].code);
      CHECK(again.vn[i].fraction == cfg.vn[i].fraction);
    }
    CHECK(std::abs(f.design_rate() - e.design_rate()) < 1e-12);
    CHECK(std::abs(f.int_lambda() - e.int_lambda()) < 1e-12);
    CHECK(std::abs(f.int_rho() - e.int_rho()) < 1e-12);
    CHECK(std::abs(f.bits_per_vn() - e.bits_per_vn()) < 1e-12);
    CHECK(f.cv_product().has_value() == e.cv_product().has_value());
    if (e.cv_product()) CHECK(std::abs(*f.cv_product() - *e.cv_product()) < 1e-12);
  }
}

TEST_CASE("code words on the command line") {
  auto spec = config::parse_code_words({"spc", "7", "antisystematic"});
  CHECK(spec.q == 7);
  CHECK(config::build_code(spec) == gf2::make_spc(7, gf2::SpcForm::antisystematic));
  CHECK(config::describe_code(gf2::make_explicit({"110", "011"})).kind == "spc");
  CHECK(config::describe_code(gf2::make_explicit({"1011", "0110"})).kind == "explicit");
  CHECK_THROWS_AS(config::parse_code_words({"repetition"}), ValidationError);
  CHECK_THROWS_AS(config::parse_code_words({"repetition", "3", "4"}), ValidationError);
  CHECK_THROWS_AS(config::parse_code_words({"golay"}), ValidationError);
}

TEST_CASE("cli code-info") {
  auto r = run("code-info spc 7 cyclic --format csv");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "weight-2 by input weight u=1..k,\"6,5,4,3,2,1\""));
  r = run("code-info hamming74 --format csv");
  CHECK(contains(r.out, "weight,count\n0,1\n1,0\n2,0\n3,7\n4,7\n5,0\n6,0\n7,1\n"));
  r = run("code-info repetition 2");
  CHECK(contains(r.out, "1 + x y^2"));
  CHECK(run("code-info spc 6 antisystematic").status == 2);
}

TEST_CASE("cli ensemble-info") {
  auto r = run("ensemble-info " + data("ensemble1.json"));
  CHECK(r.status == 0);
  CHECK(contains(r.out, "R=0.500000, C\u00b7V=1.194, asymptotically bad"));
  r = run("ensemble-info " + data("ensemble2.json"));
  CHECK(contains(r.out, "DISCREPANCY"));
  CHECK(contains(r.out, "0.5"));
  r = run("ensemble-info " + data("regular_3_6.json") + " --format json");
  CHECK(contains(r.out, "\"design rate R\": 0.5"));
}

TEST_CASE("cli growth") {
  const auto out = scratch("curve.csv");
  auto r = run("growth " + data("regular_3_6.json") + " --points 1 --alpha-min 1e-6 --alpha-max 1e-6 --out " +
               out.string());
  CHECK(r.status == 0);
  const auto csv = read(out);
  CHECK(csv.rfind("alpha,G,x0,y0,z0,beta,residual_max,converged\n", 0) == 0);
  std::istringstream rows(csv);
  std::string header, line;
  std::getline(rows, header);
  std::getline(rows, line);
  const double g = std::stod(line.substr(line.find(',') + 1));
  CHECK(std::abs(g) < 1e-3);
  CHECK(line.back() == '1');
  CHECK(fs::exists(fs::path(out).replace_extension(".gp")));
  CHECK(contains(r.out, "wall time"));

  const auto a = scratch("a.csv"), b = scratch("b.csv");
  run("growth " + data("ensemble2.json") + " --points 30 --out " + a.string());
  run("growth " + data("ensemble2.json") + " --points 30 --threads 4 --out " + b.string());
  CHECK(read(a) == read(b));
}

TEST_CASE("cli exit codes") {
  const auto bad = scratch("bad.json");
  write(bad, "{\n  \"vn\": [}\n");
  auto r = run("ensemble-info " + bad.string());
  CHECK(r.status == 2);
  CHECK(contains(r.out, ":2:"));

  write(bad, R"({"vn": [{"code": {"kind": "repetition", "q": 3}, "lambda": 0.5}],
                 "cn": [{"code": {"kind": "spc", "q": 6}, "rho": 1}]})");
  CHECK(run("ensemble-info " + bad.string()).status == 2);

  CHECK(run("oracle brute " + data("regular_3_6.json") + " --n 4").status == 4);
  CHECK(run("oracle finite-n " + data("ensemble1.json") + " --n 10 --alpha 0.1").status == 2);
  CHECK(run("growth " + data("regular_3_6.json") + " --points 0").status == 2);
  CHECK(run("").status == 2);
  CHECK(run("--help").status == 0);
}

TEST_CASE("cli oracle and alpha-star") {
  auto r = run("oracle lemma1 --code \"spc 7\" --xi 2 --ell 500 --format csv");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "gap"));
  // Odd l: reported as a structural zero, not an error.
  r = run("oracle lemma1 --code \"repetition 2\" --xi 1 --ell 100 101");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "structural zero"));
  r = run("oracle max-s " + data("regular_3_6.json") + " --alpha 0.1");
  CHECK(r.status == 0);
  r = run("alpha-star " + data("ensemble1.json") + " --format csv");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "alpha*,0"));
}
