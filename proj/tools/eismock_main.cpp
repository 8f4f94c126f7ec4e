// eismock: coefficient tables for holomorphic Eisenstein series and their
// mock companions, plus the verification suites (shadow, harmonicity,
// modularity, kernel identities, exact arithmetic oracles).
//
// Exit codes: 0 all checks passed (or pure computation), 1 a check failed
// (the report is still emitted), 2 usage or domain error.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eismock/coeffs.hpp"
#include "eismock/forms.hpp"
#include "eismock/lfun.hpp"
#include "eismock/oracles.hpp"
#include "eismock/report.hpp"

namespace {

using namespace eismock;

struct Options {
  int k = 4;
  std::string psi = "trivial:1";
  std::string rho = "trivial:1";
  int64_t t = 1;
  int64_t D = -4;
  int64_t n_max = 64;
  unsigned bits = 128;
  std::string tol_text;
  std::string y_min_text;
  uint64_t seed = 0;
  int points = 0;  // 0 = per-command default
  std::string format = "json";
  bool compare = false;
  bool audit = false;
};

EisSpec build_spec(const Options& opt) {
  EisSpec spec{opt.k, parse_character_label(opt.psi),
               parse_character_label(opt.rho), opt.t};
  spec.validate();
  return spec;
}

Complex eval_series_retry(FourierSeries& series, const EisSpec& spec,
                          const Complex& z, const Real& tol) {
  for (;;) {
    try {
      return evaluate_series(series, z, tol);
    } catch (const TruncationError& e) {
      series = eisenstein_coefficients(spec, e.required_n_max);
    }
  }
}

Complex eval_harmonic_retry(HarmonicForm& form, const Complex& z,
                            const Real& tol) {
  for (;;) {
    try {
      return evaluate_harmonic(form, z, tol);
    } catch (const TruncationError& e) {
      form = assemble_harmonic(form.spec, e.required_n_max);
    }
  }
}

std::string render_gamma(const GroupElement& g) {
  return "[[" + std::to_string(g.a) + "," + std::to_string(g.b) + "],[" +
         std::to_string(g.c) + "," + std::to_string(g.d) + "]]";
}

void emit(const ReportTable& table, const Options& opt) {
  write_report(std::cout, table, parse_report_format(opt.format));
}

// ---- subcommand bodies; each returns whether every check passed ------------

bool run_characters(const Options& opt, const PrecisionConfig&) {
  int64_t modulus = parse_character_label(opt.psi).modulus();
  ReportTable table;
  table.columns = {"label", "modulus", "conductor", "parity", "primitive"};
  for (const auto& chi : DirichletCharacter::group(modulus))
    table.add_row({chi.label(), chi.modulus(), chi.conductor(), chi.parity(),
                   chi.is_primitive()});
  emit(table, opt);
  return true;
}

bool run_coefficients(const Options& opt, const PrecisionConfig& cfg,
                      bool mock_side) {
  EisSpec spec = build_spec(opt);
  FourierSeries series = mock_side
                             ? mock_coefficients(spec, cfg.n_max)
                             : eisenstein_coefficients(spec, cfg.n_max);
  ReportTable table;
  table.columns = {"n", "re", "im"};
  for (int64_t n = 0; n <= series.n_max(); ++n)
    table.add_row({n, cell_real(series.c[n].re), cell_real(series.c[n].im)});
  emit(table, opt);
  return true;
}

bool run_verify_shadow(const Options& opt, const PrecisionConfig& cfg,
                       bool laplacian_side) {
  EisSpec spec = build_spec(opt);
  // second differences lose roughly 3/5 of the working bits; default the
  // harmonicity tolerance accordingly instead of the first-order 2^(-bits/3)
  Real tol = cfg.tol;
  if (laplacian_side && !cfg.tol_given)
    tol = pow(Real(2), -Real(int64_t(cfg.bits)) / 5);
  Real eval_tol = tol / 16;
  HarmonicForm form = assemble_harmonic(spec, cfg.n_max);
  FourierSeries eis = eisenstein_coefficients(spec, cfg.n_max);
  PointFunction f = [&form, &eval_tol](const Complex& w) {
    return eval_harmonic_retry(form, w, eval_tol);
  };
  int count = opt.points > 0 ? opt.points : 5;
  ReportTable table;
  table.columns = {"point", "z", "residual", "tol", "pass"};
  bool all = true;
  int index = 0;
  for (const Complex& z : sample_points(count, cfg.y_min, cfg.seed)) {
    Complex value = laplacian_side
                        ? laplacian_numeric(f, 2 - spec.k, z)
                        : xi_numeric(f, 2 - spec.k, z) -
                              eval_series_retry(eis, spec, z, eval_tol);
    Real residual = abs(value);
    bool pass = residual < tol;
    all = all && pass;
    table.add_row({index++, cell_complex(z), cell_real(residual),
                   cell_real(tol), pass});
  }
  emit(table, opt);
  return all;
}

bool run_verify_modularity(const Options& opt, const PrecisionConfig& cfg) {
  EisSpec spec = build_spec(opt);
  Real eval_tol = cfg.tol / 16;
  HarmonicForm form = assemble_harmonic(spec, cfg.n_max);
  PointFunction f = [&form, &eval_tol](const Complex& w) {
    return eval_harmonic_retry(form, w, eval_tol);
  };
  auto nu = harmonic_nebentypus(spec);
  Complex z = sample_points(1, cfg.y_min, cfg.seed)[0];
  int count = opt.points > 0 ? opt.points : 10;
  ReportTable table;
  table.columns = {"gamma", "z", "residual", "tol", "pass"};
  bool all = true;
  for (const GroupElement& g : sample_gamma0(spec.level(), count, cfg.seed)) {
    Real residual = modularity_residual(f, 2 - spec.k, nu, g, z);
    bool pass = residual < cfg.tol;
    all = all && pass;
    table.add_row({render_gamma(g), cell_complex(z), cell_real(residual),
                   cell_real(cfg.tol), pass});
  }
  emit(table, opt);
  return all;
}

bool run_verify_omega(const Options& opt, const PrecisionConfig& cfg) {
  Real quad_tol = cfg.tol / 8;
  ReportTable table;
  table.columns = {"check", "p1", "p2", "y", "residual", "tol", "pass"};
  bool all = true;
  auto push = [&](const std::string& check, const Real& p1, const Real& p2,
                  const Real& y, const Real& residual) {
    bool pass = residual < cfg.tol;
    all = all && pass;
    table.add_row({check, cell_real(p1), cell_real(p2), cell_real(y),
                   cell_real(residual), cell_real(cfg.tol), pass});
  };
  const Real alphas[] = {Real(-1) / 2, Real(1) / 4, Real(3) / 4};
  const Real betas[] = {Real(1) / 4, Real(3) / 4, Real(3) / 2};
  const Real heights[] = {Real(3) / 5, Real(1), Real(7) / 2};
  for (const Real& alpha : alphas)
    for (const Real& y : heights)
      push("beta-zero", alpha, Real(0), y,
           abs(omega_function(y, alpha, Real(0), quad_tol) - 1));
  for (const Real& alpha : alphas)
    for (const Real& beta : betas)
      for (const Real& y : heights)
        push("symmetry", alpha, beta, y,
             abs(omega_function(y, 1 - beta, 1 - alpha, quad_tol) -
                 omega_function(y, alpha, beta, quad_tol)));
  for (int k : {2, 3, 4})
    for (int64_t n : {1, 2, 3})
      for (const Real& y : {Real(2) / 5, Real(7) / 10, Real(11) / 10}) {
        Real x = 4 * pi() * n * y;
        Real lhs = pow(y, k - 2) * omega_function(x, Real(k - 1), Real(1),
                                                  quad_tol);
        Real rhs = 4 * pi() * n * exp(x) * beta_kernel(k, n, y);
        push("bridge", Real(k), Real(n), y, abs(lhs - rhs));
      }
  emit(table, opt);
  return all;
}

bool run_verify_symmetry(const Options& opt, const PrecisionConfig& cfg) {
  auto psi = parse_character_label(opt.psi);
  auto rho = parse_character_label(opt.rho);
  EisSpec lhs_spec{1, psi, rho, opt.t};
  lhs_spec.validate();
  EisSpec rhs_spec{1, rho, psi, opt.t};
  auto lhs = eisenstein_coefficients(lhs_spec, cfg.n_max);
  auto rhs = eisenstein_coefficients(rhs_spec, cfg.n_max);
  Complex lhs_scale =
      Real(rho.modulus()) *
      inv(rho.primitive_core().conjugate().gauss_sum());
  Complex rhs_scale =
      Real(psi.modulus()) *
      inv(psi.primitive_core().conjugate().gauss_sum());
  ReportTable table;
  table.columns = {"n", "lhs", "rhs", "residual", "tol", "pass"};
  bool all = true;
  for (int64_t n = 0; n <= cfg.n_max; ++n) {
    Complex left = lhs_scale * lhs.c[n];
    Complex right = rhs_scale * rhs.c[n];
    Real residual = abs(left - right);
    bool pass = residual < cfg.tol;
    all = all && pass;
    table.add_row({n, cell_complex(left), cell_complex(right),
                   cell_real(residual), cell_real(cfg.tol), pass});
  }
  emit(table, opt);
  return all;
}

bool run_hecke(const Options& opt, const PrecisionConfig& cfg) {
  auto data = class_number(opt.D);
  ReportTable table;
  bool all = true;
  if (!opt.compare) {
    table.columns = {"n", "R"};
    table.add_row({int64_t(0), cell_real(Real(data.h) / data.u)});
    for (int64_t n = 1; n <= cfg.n_max; ++n)
      table.add_row({n, hecke_R(opt.D, n)});
  } else {
    table.columns = {"n", "R", "Rplus_def", "Rplus_prop", "equal"};
    for (int64_t n = 0; n <= cfg.n_max; ++n) {
      Real def = hecke_Rplus(opt.D, n, RplusMethod::definitional);
      Real prop = hecke_Rplus(opt.D, n, RplusMethod::proposition);
      bool equal = abs(def - prop) < cfg.tol;
      all = all && equal;
      Cell count = n == 0 ? cell_real(Real(data.h) / data.u)
                          : Cell(hecke_R(opt.D, n));
      table.add_row({n, count, cell_real(def), cell_real(prop), equal});
    }
  }
  emit(table, opt);
  return all;
}

bool run_theta(const Options& opt, const PrecisionConfig& cfg) {
  if (!opt.audit) {
    auto report = theta_power_report(opt.k, cfg.n_max);
    ReportTable table;
    table.columns = {"n", "count", "combination", "match"};
    for (const auto& row : report.rows)
      table.add_row(
          {row.n, row.count, row.combination, row.count == row.combination});
    emit(table, opt);
    return report.all_match;
  }
  Real tol = cfg.tol_given ? cfg.tol
                           : pow(Real(2), -Real(int64_t(cfg.bits)) / 4);
  Complex z = sample_points(1, cfg.y_min, cfg.seed)[0];
  int samples = opt.points > 0 ? opt.points : 5;
  auto audit = theta_mock_audit(opt.k, z, samples, cfg.seed, tol);
  ReportTable table;
  table.columns = {"candidate", "residual", "tol", "modular",
                   "ratio_to_closed_form"};
  table.add_row({"closed-formula scaling", cell_real(audit.residual_closed_form),
                 cell_real(tol), audit.closed_form_is_modular, cell_real(Real(1))});
  table.add_row({"as-printed table", cell_real(audit.residual_printed),
                 cell_real(tol), audit.printed_is_modular,
                 cell_real(audit.printed_to_closed_form_ratio)});
  emit(table, opt);
  return audit.closed_form_is_modular;
}

bool run_level_one(const Options& opt, const PrecisionConfig& cfg) {
  auto pair = normalized_level_one(opt.k, cfg.n_max);
  ReportTable table;
  table.columns = {"n", "classical", "mock_re", "mock_im"};
  for (int64_t n = 0; n <= cfg.n_max; ++n)
    table.add_row({n, pair.classical[n].str(),
                   cell_real(pair.mock_normalized.c[n].re),
                   cell_real(pair.mock_normalized.c[n].im)});
  emit(table, opt);
  return true;
}

bool run_lfun(const Options& opt, const PrecisionConfig&) {
  auto chi = parse_character_label(opt.psi);
  ReportTable table;
  table.columns = {"s", "re", "im", "note"};
  for (int s = 0; s <= opt.k; ++s) {
    if (s == 1 && chi.primitive_core().is_trivial()) {
      table.add_row({s, "", "", "pole"});
      continue;
    }
    Complex value = l_value(chi, s);
    table.add_row({s, cell_real(value.re), cell_real(value.im), ""});
  }
  emit(table, opt);
  return true;
}

int run(int argc, char** argv) {
  Options opt;
  CLI::App app{
      "eismock: Eisenstein series coefficient tables, mock companions, and "
      "verification suites"};
  app.require_subcommand(1);
  app.add_option("--k", opt.k,
                 "weight (eisenstein/mock/verify), theta power (theta), or "
                 "top evaluation point (lfun)");
  app.add_option("--psi", opt.psi,
                 "first character label: trivial:N, kronecker:D, or "
                 "{\"modulus\":N,\"exponents\":[...]}");
  app.add_option("--rho", opt.rho, "second character label");
  app.add_option("--t", opt.t, "scaling parameter t >= 1");
  app.add_option("-D,--discriminant", opt.D,
                 "negative fundamental discriminant");
  app.add_option("--n-max", opt.n_max, "coefficient truncation (default 64)");
  app.add_option("--bits", opt.bits, "working precision bits (default 128)");
  app.add_option("--tol", opt.tol_text,
                 "report tolerance (default 2^(-bits/3))");
  app.add_option("--y-min", opt.y_min_text,
                 "minimal imaginary part for sampled points (default 0.5)");
  app.add_option("--seed", opt.seed, "PRNG seed for sampling (default 0)");
  app.add_option("--points", opt.points,
                 "sample point / group element / audit sample count");
  app.add_option("--format", opt.format, "output format: json (NDJSON) or csv");

  auto* characters = app.add_subcommand(
      "characters", "enumerate the character group of the modulus of --psi");
  auto* eisenstein = app.add_subcommand(
      "eisenstein", "Fourier coefficients of the weight-k series");
  auto* mock = app.add_subcommand(
      "mock", "holomorphic-part coefficients of the mock companion");
  auto* verify = app.add_subcommand("verify", "numerical verification suites");
  verify->require_subcommand(1);
  auto* shadow = verify->add_subcommand(
      "shadow", "xi-image of the completed form against the series");
  auto* laplacian = verify->add_subcommand(
      "laplacian", "harmonicity of the completed form");
  auto* modularity = verify->add_subcommand(
      "modularity", "transformation law of the completed form");
  auto* omega = verify->add_subcommand(
      "omega", "kernel identities: beta-zero, symmetry, bridge");
  auto* symmetry = verify->add_subcommand(
      "symmetry", "weight-1 character-swap identity");
  auto* hecke = app.add_subcommand(
      "hecke", "ideal counts R_D(n) and logarithmic companions");
  hecke->add_flag("--compare", opt.compare,
                  "compare the definitional and prime-local companions");
  auto* theta = app.add_subcommand(
      "theta", "sum-of-squares identities for the theta power --k");
  theta->add_flag("--audit", opt.audit,
                  "modularity audit of the two printed mock scalings");
  auto* level_one = app.add_subcommand(
      "level-one", "normalized classical series and mock companion");
  auto* lfun = app.add_subcommand(
      "lfun", "Dirichlet L-values of --psi at s = 0..--k");
  for (CLI::App* sub : {characters, eisenstein, mock, verify, shadow,
                        laplacian, modularity, omega, symmetry, hecke, theta,
                        level_one, lfun})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  PrecisionConfig cfg = make_precision_config(opt.bits, opt.n_max,
                                              opt.tol_text, opt.y_min_text,
                                              opt.seed);
  bool pass = true;
  if (*characters) pass = run_characters(opt, cfg);
  if (*eisenstein) pass = run_coefficients(opt, cfg, false);
  if (*mock) pass = run_coefficients(opt, cfg, true);
  if (*shadow) pass = run_verify_shadow(opt, cfg, false);
  if (*laplacian) pass = run_verify_shadow(opt, cfg, true);
  if (*modularity) pass = run_verify_modularity(opt, cfg);
  if (*omega) pass = run_verify_omega(opt, cfg);
  if (*symmetry) pass = run_verify_symmetry(opt, cfg);
  if (*hecke) pass = run_hecke(opt, cfg);
  if (*theta) pass = run_theta(opt, cfg);
  if (*level_one) pass = run_level_one(opt, cfg);
  if (*lfun) pass = run_lfun(opt, cfg);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
