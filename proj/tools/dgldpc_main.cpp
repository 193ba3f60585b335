// dgldpc: growth-rate analysis of D-GLDPC ensembles from the command line.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "dgldpc/config.hpp"
#include "dgldpc/oracle.hpp"
#include "dgldpc/saddle.hpp"
#include "report.hpp"

#ifndef DGLDPC_DATA_DIR
#define DGLDPC_DATA_DIR "data/ensembles"
#endif

namespace {

using namespace dgldpc;
using cli::Format;
using cli::Report;
using cli::fixed;
using cli::general;

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitResource = 4;

struct Globals {
  std::string format = "table";
  Format fmt() const {
    if (format == "csv") return Format::csv;
    if (format == "json") return Format::json;
    return Format::table;
  }
};

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

// "1/7" or a decimal.
double parse_fraction(const std::string& s) {
  try {
    if (const auto slash = s.find('/'); slash != std::string::npos) {
      const double num = std::stod(s.substr(0, slash));
      const double den = std::stod(s.substr(slash + 1));
      if (den == 0.0) throw ValidationError("zero denominator in \"" + s + "\"");
      return num / den;
    }
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw ValidationError("\"" + s + "\" is not a number");
  }
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string code_spec_string(const config::CodeSpec& s) {
  if (s.kind == "repetition") return "repetition " + std::to_string(s.q);
  if (s.kind == "spc") return "spc " + std::to_string(s.q) + " " + std::string(gf2::to_string(s.form));
  if (s.kind == "explicit") return "explicit " + join(s.rows, " ");
  return s.kind;
}

std::string classification_text(const Ensemble& e) {
  return e.asymptotically_good() ? "asymptotically good" : "asymptotically bad";
}

// ---------------------------------------------------------------- code-info

int cmd_code_info(const std::vector<std::string>& words, const Globals& g) {
  const auto spec = config::parse_code_words(words);
  const auto code = config::build_code(spec);
  const auto wef = gf2::enumerate_wef(code);
  const auto io = gf2::enumerate_iowef(code);

  Report r;
  r.field("code", code.label());
  r.field("length q", std::to_string(code.length()));
  r.field("dimension k", std::to_string(code.dimension()));
  r.field("rate", general(code.rate(), 6));
  r.field("min distance", std::to_string(wef.min_distance()));
  r.field("WEF", gf2::to_polynomial_string(wef));
  r.field("IO-WEF", gf2::to_polynomial_string(io));
  r.field("weight-2 codewords", io.weight2_total().get_str());
  std::vector<std::string> w2;
  for (int u = 1; u <= io.dimension(); ++u) w2.push_back(io.at(u, 2).get_str());
  r.field("weight-2 by input weight u=1..k", join(w2, ","));

  auto& gen = r.table("generator", {"row", "bits"});
  for (int i = 0; i < code.dimension(); ++i) gen.rows.push_back({std::to_string(i), code.row_string(i)});

  auto& wt = r.table("wef", {"weight", "count"});
  for (int w = 0; w < static_cast<int>(wef.coeffs().size()); ++w) {
    wt.rows.push_back({std::to_string(w), wef[w].get_str()});
  }

  std::vector<std::string> header{"u\\v"};
  for (int v = 0; v <= io.length(); ++v) header.push_back(std::to_string(v));
  auto& it = r.table("iowef", header);
  for (int u = 0; u <= io.dimension(); ++u) {
    std::vector<std::string> row{std::to_string(u)};
    for (int v = 0; v <= io.length(); ++v) row.push_back(io.at(u, v).get_str());
    it.rows.push_back(std::move(row));
  }
  r.print(std::cout, g.fmt());
  return 0;
}

// ------------------------------------------------------------ ensemble-info

void compare(Report& r, const char* what, std::optional<double> reference,
             double computed, double tol) {
  if (!reference) return;
  std::ostringstream os;
  if (std::abs(computed - *reference) <= tol) {
    os << what << ": computed " << general(computed, 6) << " matches reference "
       << general(*reference, 6);
  } else {
    os << "DISCREPANCY " << what << ": computed " << general(computed, 6)
       << ", reference " << general(*reference, 6) << " (tolerance " << tol << ")";
  }
  r.note(os.str());
}

int cmd_ensemble_info(const std::string& path, const Globals& g) {
  const auto cfg = config::load_config(path);
  const auto ens = config::to_ensemble(cfg);

  Report r;
  std::ostringstream summary;
  summary << "R=" << fixed(ens.design_rate(), 6);
  if (ens.cv_product()) summary << ", C·V=" << fixed(*ens.cv_product(), 3);
  summary << ", " << classification_text(ens);
  r.field("summary", summary.str());
  if (!cfg.name.empty()) r.field("name", cfg.name);
  r.field("design rate R", fixed(ens.design_rate(), 6));
  r.field("int lambda", general(ens.int_lambda()));
  r.field("int rho", general(ens.int_rho()));
  r.field("bits per VN y", general(ens.bits_per_vn()));
  r.field("alpha max", general(ens.alpha_max()));
  r.field("C", ens.c_param() ? general(*ens.c_param(), 6) : "n/a");
  r.field("V", ens.v_param() ? general(*ens.v_param(), 6) : "n/a");
  r.field("C*V", ens.cv_product() ? general(*ens.cv_product(), 6) : "n/a");
  r.field("classification", std::string(to_string(ens.classification())));
  r.field("lambda sum (as entered)", general(ens.raw_lambda_sum(), 9));
  r.field("rho sum (as entered)", general(ens.raw_rho_sum(), 9));
  r.field("smallest valid n", smallest_valid_n(ens).get_str());

  auto& vt = r.table("vn types", {"t", "code", "q", "k", "d_min", "lambda", "delta"});
  for (std::size_t t = 0; t < ens.vn_types().size(); ++t) {
    const auto& v = ens.vn_types()[t];
    vt.rows.push_back({std::to_string(t + 1), code_spec_string(config::describe_code(v.code)),
                       std::to_string(v.code.length()), std::to_string(v.code.dimension()),
                       std::to_string(v.iowef.min_distance()), general(ens.raw_lambda()[t], 9),
                       general(ens.delta()[t], 9)});
  }
  auto& ct = r.table("cn types", {"t", "code", "s", "h", "d_min", "rho", "gamma"});
  for (std::size_t t = 0; t < ens.cn_types().size(); ++t) {
    const auto& c = ens.cn_types()[t];
    ct.rows.push_back({std::to_string(t + 1), code_spec_string(config::describe_code(c.code)),
                       std::to_string(c.code.length()), std::to_string(c.code.dimension()),
                       std::to_string(c.wef.min_distance()), general(ens.raw_rho()[t], 9),
                       general(ens.gamma()[t], 9)});
  }
  if (std::abs(ens.raw_lambda_sum() - 1.0) > 1e-12) {
    r.note("lambda entries sum to " + general(ens.raw_lambda_sum(), 9) + "; renormalized to 1");
  }
  if (std::abs(ens.raw_rho_sum() - 1.0) > 1e-12) {
    r.note("rho entries sum to " + general(ens.raw_rho_sum(), 9) + "; renormalized to 1");
  }
  compare(r, "design rate", cfg.reference.design_rate, ens.design_rate(), 1e-4);
  if (ens.cv_product()) compare(r, "C*V", cfg.reference.cv_product, *ens.cv_product(), 0.01);
  r.print(std::cout, g.fmt());
  return 0;
}

// ------------------------------------------------------------------- growth

struct GrowthArgs {
  std::string config;
  int points = 100;
  double alpha_min = 1e-5;
  std::optional<double> alpha_max;
  std::string out;
  int threads = 1;
};

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "nan";
  return general(v, 15);
}

void write_growth_csv(std::ostream& os, const saddle::GrowthCurve& c) {
  os << "alpha,G,x0,y0,z0,beta,residual_max,converged\n";
  for (const auto& p : c.points) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto& s = p.point;
    os << csv_number(p.alpha) << "," << csv_number(p.converged ? s.g_value : nan) << ","
       << csv_number(p.converged ? s.x0 : nan) << "," << csv_number(p.converged ? s.y0 : nan)
       << "," << csv_number(p.converged ? s.z0 : nan) << ","
       << csv_number(p.converged ? s.beta : nan) << ","
       << csv_number(p.converged ? s.residual_max() : nan) << "," << (p.converged ? 1 : 0)
       << "\n";
  }
}

void write_gnuplot(const std::filesystem::path& script, const std::filesystem::path& csv,
                   const std::string& title) {
  std::ofstream gp(script);
  auto png = csv;
  png.replace_extension(".png");
  gp << "# gnuplot " << script.filename().string() << "\n"
     << "set datafile separator \",\"\n"
     << "set terminal pngcairo size 800,560 font \",11\"\n"
     << "set output \"" << png.filename().string() << "\"\n"
     << "set xlabel \"{/Symbol a}\"\n"
     << "set ylabel \"Growth rate, G({/Symbol a})\"\n"
     << "set grid\n"
     << "set key top left\n"
     << "plot \"" << csv.filename().string() << "\" skip 1 using 1:($8 == 1 ? $2 : 1/0) "
     << "with lines lw 2 title \"" << title << "\", \\\n"
     << "     0 with lines dt 2 lc rgb \"black\" notitle\n";
}

int cmd_growth(const GrowthArgs& a, const Globals&) {
  const auto cfg = config::load_config(a.config);
  const auto ens = config::to_ensemble(cfg);
  if (a.points < 1) throw ValidationError("--points must be at least 1");
  if (a.threads < 1) throw ValidationError("--threads must be at least 1");
  const auto grid = saddle::default_grid(ens, a.points, a.alpha_min, a.alpha_max);
  saddle::SweepOptions opts;
  opts.polish_threads = a.threads;
  const auto curve = saddle::sweep(ens, grid, opts);

  std::ostream* log = &std::cout;
  if (a.out.empty()) {
    write_growth_csv(std::cout, curve);
    log = &std::cerr;
  } else {
    const std::filesystem::path csv(a.out);
    std::ofstream os(csv);
    if (!os) throw ValidationError("cannot write " + a.out);
    write_growth_csv(os, curve);
    auto script = csv;
    script.replace_extension(".gp");
    write_gnuplot(script, csv, cfg.name.empty() ? csv.stem().string() : cfg.name);
    *log << "wrote " << csv.string() << " and " << script.string() << "\n";
  }
  *log << curve.points.size() << " points, " << curve.converged_count() << " converged, "
       << curve.cold_starts << " cold starts, wall time " << fixed(curve.seconds, 3) << " s\n";

  // Sign changes of G between neighbouring converged points.
  const saddle::CurvePoint* prev = nullptr;
  int crossings = 0;
  for (const auto& p : curve.points) {
    if (!p.converged) continue;
    if (prev && (prev->point.g_value < 0.0) != (p.point.g_value < 0.0)) {
      const double g0 = prev->point.g_value, g1 = p.point.g_value;
      const double est = prev->alpha + (p.alpha - prev->alpha) * g0 / (g0 - g1);
      *log << "G changes sign between alpha=" << general(prev->alpha, 6) << " and "
           << general(p.alpha, 6) << " (linear estimate " << general(est, 6) << ")\n";
      ++crossings;
    }
    prev = &p;
  }
  if (crossings == 0 && !grid.empty()) {
    *log << "no zero crossing of G on [" << general(grid.front(), 6) << ", "
         << general(grid.back(), 6) << "]\n";
  }
  return curve.converged_count() == curve.points.size() ? 0 : kExitSolver;
}

// --------------------------------------------------------------- alpha-star

int cmd_alpha_star(const std::string& path, double alpha_lo, const Globals& g) {
  const auto cfg = config::load_config(path);
  const auto ens = config::to_ensemble(cfg);
  saddle::AlphaStarOptions opts;
  opts.alpha_lo = alpha_lo;
  opts.scan_when_bad = true;
  const auto res = saddle::alpha_star(ens, opts);

  Report r;
  const double value = ens.asymptotically_good() ? res.value : 0.0;
  r.field("alpha*", general(value, 8));
  r.field("classification", std::string(to_string(ens.classification())));
  if (ens.cv_product()) r.field("C*V", general(*ens.cv_product(), 6));
  if (res.crossing_found) {
    r.field("behavioral", "G crosses zero at alpha=" + general(res.value, 8));
  } else if (res.nonnegative_at_start) {
    r.field("behavioral", "G(" + general(opts.alpha_lo, 3) + ") >= 0, no negative region");
  } else {
    r.field("behavioral", "G < 0 on the whole scanned range");
  }
  r.field("probes", std::to_string(res.probes.size()));
  if (ens.asymptotically_good() && !res.crossing_found) {
    r.note("classified good but no zero crossing was found above alpha=" + general(opts.alpha_lo, 3));
  }
  if (!ens.asymptotically_good() && res.crossing_found) {
    r.note("classified bad by C*V but G changes sign; alpha* = 0 by classification");
  }
  compare(r, "alpha*", cfg.reference.alpha_star, value, 5e-4);
  r.print(std::cout, g.fmt());
  return 0;
}

// ------------------------------------------------------------------- oracle

int cmd_lemma1(const std::string& code_words, const std::string& xi_text,
               const std::vector<std::int64_t>& ells, const Globals& g) {
  const auto code = config::build_code(config::parse_code_words(split_words(code_words)));
  const auto wef = gf2::enumerate_wef(code);
  const double xi = parse_fraction(xi_text);
  Report r;
  r.field("A", gf2::to_polynomial_string(wef));
  r.field("xi", general(xi));
  const auto lim = oracle::lemma1_limit(wef, xi);
  r.field("z", general(lim.x0));
  r.field("limit", general(lim.limit));
  auto& t = r.table("gaps", {"l", "coefficient digits", "rate", "gap"});
  for (auto ell : ells) {
    try {
      const auto c = oracle::lemma1_gap(wef, xi, ell);
      t.rows.push_back({std::to_string(ell),
                        std::to_string(mpz_sizeinbase(c.coefficient.get_mpz_t(), 10)),
                        general(c.rate), general(c.gap)});
    } catch (const oracle::StructuralZero& e) {
      t.rows.push_back({std::to_string(ell), "0", "-inf", "structural zero"});
      r.note(e.what());
    }
  }
  r.print(std::cout, g.fmt());
  return 0;
}

int cmd_lemma2(const std::string& code_words, const std::string& xi_text,
               const std::string& theta_text, const std::vector<std::int64_t>& ells,
               const Globals& g) {
  const auto code = config::build_code(config::parse_code_words(split_words(code_words)));
  const auto io = gf2::enumerate_iowef(code);
  const double xi = parse_fraction(xi_text);
  const double theta = parse_fraction(theta_text);
  Report r;
  r.field("B", gf2::to_polynomial_string(io));
  r.field("xi", general(xi));
  r.field("theta", general(theta));
  auto& t = r.table("gaps", {"l", "coefficient digits", "rate", "limit", "x0", "y0", "gap"});
  for (auto ell : ells) {
    try {
      const auto c = oracle::lemma2_gap(io, xi, theta, ell);
      t.rows.push_back({std::to_string(ell),
                        std::to_string(mpz_sizeinbase(c.coefficient.get_mpz_t(), 10)),
                        general(c.rate), general(c.limit), general(c.x0), general(c.y0),
                        general(c.gap)});
    } catch (const oracle::StructuralZero& e) {
      t.rows.push_back({std::to_string(ell), "0", "-inf", "", "", "", "structural zero"});
      r.note(e.what());
    }
  }
  r.print(std::cout, g.fmt());
  return 0;
}

std::string decimal(const mpq_class& q) {
  if (q == 0) return "0";
  return general(q.get_d(), 12);
}

int cmd_finite_n(const std::string& path, std::int64_t n, std::optional<double> alpha,
                 std::optional<std::int64_t> weight, bool full, bool exact,
                 const Globals& g) {
  const auto ens = config::to_ensemble(config::load_config(path));
  const auto inst = instantiate(ens, n);
  const auto spec = oracle::exact_expected_spectrum(inst);
  Report r;
  r.field("n", std::to_string(n));
  r.field("code bits N", std::to_string(spec.values.size() - 1));
  r.field("edges E", std::to_string(inst.edges));
  r.field("E[N_0]", spec.values[0].get_str());
  std::int64_t w = -1;
  if (weight) w = *weight;
  if (alpha) w = static_cast<std::int64_t>(std::llround(*alpha * static_cast<double>(n)));
  if (w >= 0) {
    if (w >= static_cast<std::int64_t>(spec.values.size())) {
      throw ValidationError("weight exceeds the code length");
    }
    const double a = static_cast<double>(w) / static_cast<double>(n);
    r.field("w", std::to_string(w));
    r.field("E[N_w]", decimal(spec.values[w]));
    if (exact) r.field("E[N_w] exact", spec.values[w].get_str());
    const auto rate = spec.normalized_log(w);
    r.field("(1/n) log E[N_w]", rate ? general(*rate) : "-inf");
    if (a > 0.0 && a < ens.alpha_max()) {
      const double gval = saddle::solve_at(ens, a).g_value;
      r.field("G(w/n)", general(gval));
      if (rate) r.field("gap", general(*rate - gval));
    }
  }
  if (full) {
    auto& t = r.table("spectrum", exact ? std::vector<std::string>{"w", "E[N_w]", "(1/n) log", "exact"}
                                        : std::vector<std::string>{"w", "E[N_w]", "(1/n) log"});
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
      const auto rate = spec.normalized_log(static_cast<std::int64_t>(i));
      std::vector<std::string> row{std::to_string(i), decimal(spec.values[i]),
                                   rate ? general(*rate) : "-inf"};
      if (exact) row.push_back(spec.values[i].get_str());
      t.rows.push_back(std::move(row));
    }
  }
  r.print(std::cout, g.fmt());
  return 0;
}

int cmd_brute(const std::string& path, std::int64_t n, const Globals& g) {
  const auto ens = config::to_ensemble(config::load_config(path));
  const auto inst = instantiate(ens, n);
  const auto t0 = std::chrono::steady_clock::now();
  const auto brute = oracle::brute_force_spectrum(inst);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto exact = oracle::exact_expected_spectrum(inst);
  Report r;
  r.field("n", std::to_string(n));
  r.field("edges E", std::to_string(inst.edges));
  r.field("permutations", std::to_string(static_cast<long long>(std::tgamma(inst.edges + 1.0) + 0.5)));
  r.field("brute force seconds", fixed(secs, 3));
  bool same = brute.values == exact.values;
  r.field("identical", same ? "yes" : "no");
  auto& t = r.table("spectrum", {"w", "brute force", "exact", "equal"});
  for (std::size_t w = 0; w < brute.values.size(); ++w) {
    t.rows.push_back({std::to_string(w), brute.values[w].get_str(), exact.values[w].get_str(),
                      brute.values[w] == exact.values[w] ? "yes" : "no"});
  }
  r.print(std::cout, g.fmt());
  return 0;
}

int cmd_max_s(const std::string& path, double alpha, const oracle::MaximizeOptions& opts,
              const Globals& g) {
  const auto ens = config::to_ensemble(config::load_config(path));
  const auto res = oracle::maximize_S(ens, alpha, opts);
  const auto point = saddle::solve_at(ens, alpha);
  Report r;
  r.field("alpha", general(alpha));
  r.field("max S", general(res.value));
  r.field("G(alpha)", general(point.g_value));
  r.field("max S - G", general(res.value - point.g_value, 3));
  r.field("free dimensions", std::to_string(res.dimensions));
  r.field("points evaluated", std::to_string(res.evaluated));
  r.field("points skipped", std::to_string(res.skipped));
  r.field("z0", general(res.at.z0));
  r.field("solver x0", general(point.x0));
  r.field("solver y0", general(point.y0));
  r.field("solver z0", general(point.z0));
  auto& vt = r.table("vn apportionment", {"t", "alpha_t", "beta_t", "x0_t", "y0_t"});
  for (std::size_t t = 0; t < res.at.alpha.size(); ++t) {
    vt.rows.push_back({std::to_string(t + 1), general(res.at.alpha[t]), general(res.at.beta[t]),
                       general(res.at.x0[t]), general(res.at.y0[t])});
  }
  auto& ct = r.table("cn apportionment", {"t", "eps_t"});
  for (std::size_t t = 0; t < res.at.eps.size(); ++t) {
    ct.rows.push_back({std::to_string(t + 1), general(res.at.eps[t])});
  }
  r.print(std::cout, g.fmt());
  return 0;
}

// -------------------------------------------------------------- emit-config

int cmd_emit_config(const std::string& path, const std::string& out) {
  const auto cfg = config::load_config(path);
  const auto ens = config::to_ensemble(cfg);
  const auto text = config::emit_config(ens, cfg.name, cfg.reference);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out);
    if (!os) throw ValidationError("cannot write " + out);
    os << text;
  }
  return 0;
}

// ---------------------------------------------------------------- reproduce

int cmd_reproduce(const std::string& dir, int points, const Globals& g) {
  Report r;
  auto& t = r.table("reproduction", {"ensemble", "quantity", "computed", "reference", "status"});
  auto status = [](double c, std::optional<double> ref, double tol) -> std::string {
    if (!ref) return "";
    return std::abs(c - *ref) <= tol ? "match" : "DISCREPANCY";
  };
  auto ref_text = [](std::optional<double> v) { return v ? general(*v, 6) : std::string("-"); };
  int rc = 0;
  for (const char* file : {"ensemble1.json", "ensemble2.json"}) {
    const auto path = std::filesystem::path(dir) / file;
    const auto cfg = config::load_config(path);
    const auto ens = config::to_ensemble(cfg);
    const std::string name = cfg.name.empty() ? file : cfg.name;

    t.rows.push_back({name, "design rate R", fixed(ens.design_rate(), 6),
                      ref_text(cfg.reference.design_rate),
                      status(ens.design_rate(), cfg.reference.design_rate, 1e-4)});
    const double cv = ens.cv_product().value_or(0.0);
    t.rows.push_back({name, "C*V", ens.cv_product() ? fixed(cv, 4) : "n/a",
                      ref_text(cfg.reference.cv_product),
                      status(cv, cfg.reference.cv_product, 0.01)});
    t.rows.push_back({name, "classification", classification_text(ens), "", ""});

    saddle::AlphaStarOptions aso;
    aso.scan_when_bad = true;
    const auto as = saddle::alpha_star(ens, aso);
    const double astar = ens.asymptotically_good() ? as.value : 0.0;
    t.rows.push_back({name, "alpha*", general(astar, 6), ref_text(cfg.reference.alpha_star),
                      status(astar, cfg.reference.alpha_star, 5e-4)});

    const auto grid = saddle::default_grid(ens, 20, 1e-4, 1e-2);
    const auto low = saddle::sweep(ens, grid);
    double gmin = std::numeric_limits<double>::infinity();
    for (const auto& p : low.points)
      if (p.converged) gmin = std::min(gmin, p.point.g_value);
    t.rows.push_back({name, "min G on 20 points in [1e-4, 1e-2]", general(gmin, 6), "", ""});

    const auto curve = saddle::sweep(ens, saddle::default_grid(ens, points));
    double worst = 0.0;
    for (const auto& p : curve.points)
      if (p.converged) worst = std::max(worst, p.point.residual_max());
    t.rows.push_back({name, std::to_string(points) + "-point sweep converged",
                      std::to_string(curve.converged_count()) + "/" + std::to_string(curve.points.size()),
                      "", ""});
    t.rows.push_back({name, "sweep wall time (s)", fixed(curve.seconds, 3), "", ""});
    t.rows.push_back({name, "sweep max residual", general(worst, 3), "", ""});
    if (curve.converged_count() != curve.points.size()) rc = kExitSolver;
  }
  for (const auto& row : t.rows) {
    if (row[4] == "DISCREPANCY") {
      r.note(row[0] + ": " + row[1] + " computed " + row[2] + " differs from reference " + row[3]);
    }
  }
  r.print(std::cout, g.fmt());
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth-rate analysis of doubly-generalized LDPC ensembles"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();

  std::vector<std::string> code_words;
  auto* code_info = app.add_subcommand("code-info", "WEF and IO-WEF tables of a local code");
  code_info->add_option("code", code_words, "repetition Q | spc Q [FORM] | hamming74 | explicit ROW...")
      ->required();

  std::string cfg_path;
  auto* ens_info = app.add_subcommand("ensemble-info", "Derived parameters of an ensemble");
  ens_info->add_option("config", cfg_path, "Ensemble JSON file")->required();

  GrowthArgs ga;
  double alpha_max_opt = 0.0;
  auto* growth = app.add_subcommand("growth", "Sweep G(alpha), write CSV and a gnuplot script");
  growth->add_option("config", ga.config, "Ensemble JSON file")->required();
  growth->add_option("--points", ga.points, "Grid points")->capture_default_str();
  growth->add_option("--alpha-min", ga.alpha_min, "Smallest alpha")->capture_default_str();
  auto* amax = growth->add_option("--alpha-max", alpha_max_opt, "Largest alpha (default 0.99 alpha_max)");
  growth->add_option("--out", ga.out, "CSV file; the .gp script is written next to it");
  growth->add_option("--threads", ga.threads, "Threads for the polish pass")->capture_default_str();

  double alpha_lo = 1e-6;
  auto* astar = app.add_subcommand("alpha-star", "Relative minimum distance alpha*");
  astar->add_option("config", cfg_path, "Ensemble JSON file")->required();
  astar->add_option("--alpha-lo", alpha_lo, "Start of the scan")->capture_default_str();

  auto* orc = app.add_subcommand("oracle", "Exact and brute-force certification oracles");
  orc->require_subcommand(1);
  std::string code_text, xi_text, theta_text;
  std::vector<std::int64_t> ells;
  auto* l1 = orc->add_subcommand("lemma1", "Finite-l gap of the univariate coefficient limit");
  l1->add_option("--code", code_text, "Code, e.g. \"repetition 2\"")->required();
  l1->add_option("--xi", xi_text, "Weight fraction (decimal or p/q)")->required();
  l1->add_option("--ell", ells, "One or more l values")->required();
  auto* l2 = orc->add_subcommand("lemma2", "Finite-l gap of the bivariate coefficient limit");
  l2->add_option("--code", code_text, "Code, e.g. \"spc 7 cyclic\"")->required();
  l2->add_option("--xi", xi_text, "Input weight fraction")->required();
  l2->add_option("--theta", theta_text, "Output weight fraction")->required();
  l2->add_option("--ell", ells, "One or more l values")->required();

  std::int64_t n = 0;
  double alpha_v = 0.0;
  std::int64_t weight_v = 0;
  bool full = false, exact = false;
  auto* fin = orc->add_subcommand("finite-n", "Exact expected spectrum of one ensemble member");
  fin->add_option("config", cfg_path, "Ensemble JSON file")->required();
  fin->add_option("--n", n, "Variable nodes")->required();
  auto* fin_alpha = fin->add_option("--alpha", alpha_v, "Report w = round(alpha n)");
  auto* fin_w = fin->add_option("--weight", weight_v, "Report this weight");
  fin_alpha->excludes(fin_w);
  fin->add_flag("--full", full, "Print the whole spectrum");
  fin->add_flag("--exact", exact, "Print exact rationals");

  auto* brute = orc->add_subcommand("brute", "Enumerate every edge permutation of a tiny instance");
  brute->add_option("config", cfg_path, "Ensemble JSON file")->required();
  brute->add_option("--n", n, "Variable nodes")->required();

  oracle::MaximizeOptions mo;
  auto* maxs = orc->add_subcommand("max-s", "Grid maximization of the pre-Lagrange objective");
  maxs->add_option("config", cfg_path, "Ensemble JSON file")->required();
  maxs->add_option("--alpha", alpha_v, "Normalized weight")->required();
  maxs->add_option("--grid", mo.grid_resolution, "Coarse points per dimension")->capture_default_str();
  maxs->add_option("--rounds", mo.refine_rounds, "Refinement rounds")->capture_default_str();

  std::string out;
  auto* emit = app.add_subcommand("emit-config", "Re-emit a config in canonical form");
  emit->add_option("config", cfg_path, "Ensemble JSON file")->required();
  emit->add_option("--out", out, "Output file (default stdout)");

  std::string data_dir = DGLDPC_DATA_DIR;
  int rep_points = 100;
  auto* repro = app.add_subcommand("reproduce", "Side-by-side report for the shipped ensembles");
  repro->add_option("--data-dir", data_dir, "Directory with ensemble1.json and ensemble2.json")
      ->capture_default_str();
  repro->add_option("--points", rep_points, "Sweep points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (*code_info) return cmd_code_info(code_words, g);
    if (*ens_info) return cmd_ensemble_info(cfg_path, g);
    if (*growth) {
      if (amax->count() > 0) ga.alpha_max = alpha_max_opt;
      return cmd_growth(ga, g);
    }
    if (*astar) return cmd_alpha_star(cfg_path, alpha_lo, g);
    if (*l1) return cmd_lemma1(code_text, xi_text, ells, g);
    if (*l2) return cmd_lemma2(code_text, xi_text, theta_text, ells, g);
    if (*fin) {
      std::optional<double> a;
      std::optional<std::int64_t> w;
      if (fin_alpha->count() > 0) a = alpha_v;
      if (fin_w->count() > 0) w = weight_v;
      return cmd_finite_n(cfg_path, n, a, w, full, exact, g);
    }
    if (*brute) return cmd_brute(cfg_path, n, g);
    if (*maxs) return cmd_max_s(cfg_path, alpha_v, mo, g);
    if (*emit) return cmd_emit_config(cfg_path, out);
    if (*repro) return cmd_reproduce(data_dir, rep_points, g);
  } catch (const config::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const SolverError& e) {
    std::cerr << "solver: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return kExitSolver;
  } catch (const InvalidInstanceSize& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
