// Command-line front end: solve / apply / verify / convergence / eigs
// subcommands over the disk spectral library. Outputs are plain CSV and JSON
// text with a configuration header on every file; reruns with the same
// configuration and seed are bit-identical.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "diskfrac/io.hpp"

namespace fs = std::filesystem;
using namespace diskfrac;

namespace {

void warn_or_fail_wellposed(const DiffusivitySpec& K, const RunConfig& cfg) {
  if (K.wellposed) return;
  std::ostringstream os;
  os << "K spectral ratio " << K.lambda_M / K.lambda_m << " exceeds the well-posedness bound "
     << wellposedness_ratio_bound(cfg.alpha) << " at alpha=" << cfg.alpha;
  if (cfg.strict) throw std::runtime_error(os.str() + " (--strict)");
  std::cerr << "warning: " << os.str() << "; proceeding (pass --strict to fail instead)\n";
}

int run_solve(RunConfig cfg, bool apply_only) {
  cfg.validate();
  DiffusivitySpec K = make_diffusivity(cfg.k_selector, cfg.alpha);
  warn_or_fail_wellposed(K, cfg);

  SolveConfig scfg;
  scfg.alpha = cfg.alpha;
  scfg.trunc = Truncation{cfg.L, cfg.N};
  scfg.K = K;
  scfg.allow_not_wellposed = true;  // warning already issued above
  scfg.linear_tol = cfg.linear_tol;

  fs::create_directories(cfg.outdir);
  if (apply_only) {
    CoeffVec u(cfg.alpha / 2.0, cfg.alpha / 2.0, scfg.trunc);
    if (!cfg.coeffs_in.empty()) {
      std::ifstream is(cfg.coeffs_in);
      if (!is) throw std::runtime_error("cannot read coefficient table " + cfg.coeffs_in);
      u = read_coeff_table(is);
    } else {
      const auto p = parse_selector(cfg.f_selector).second;
      if (parse_selector(cfg.f_selector).first != "mode" || (p.size() != 3 && p.size() != 4))
        throw std::invalid_argument("apply needs --coeffs FILE or --f mode:l,n,mu[,amp]");
      u.set(BasisIndex{int(p[0]), int(p[1]), int(p[2])}, p.size() == 4 ? p[3] : 1.0);
    }
    const CoeffVec image = apply_operator(scfg, u);
    write_text_file(fs::path(cfg.outdir) / "coeffs.csv",
                    cfg.header_comment() + "\n" + coeff_table_string(image, cfg.alpha));
    json j;
    j["tool_version"] = DISKFRAC_VERSION_STRING;
    j["alpha"] = cfg.alpha;
    j["K"] = cfg.k_selector;
    j["modes_out"] = image.size();
    write_text_file(fs::path(cfg.outdir) / "report.json", j.dump(2) + "\n");
    return 0;
  }

  const RhsSpec rhs = make_rhs(cfg.f_selector, cfg.alpha);
  scfg.rhs_coeffs = rhs.coeffs;
  scfg.rhs_field = rhs.field;
  const SolveReport rep = solve(scfg);

  write_text_file(fs::path(cfg.outdir) / "report.json", report_to_json(rep, cfg).dump(2) + "\n");
  write_text_file(fs::path(cfg.outdir) / "coeffs.csv",
                  cfg.header_comment() + "\n" + coeff_table_string(rep.solution, cfg.alpha));
  if (cfg.grid_r > 0 && cfg.grid_phi > 0)
    write_text_file(fs::path(cfg.outdir) / "field.csv",
                    field_csv(rep.solution, cfg.grid_r, cfg.grid_phi, cfg));
  return 0;
}

int run_verify(RunConfig cfg) {
  cfg.validate();
  std::vector<CheckResult> results;
  const Truncation trunc{cfg.L, cfg.N};
  const auto want = [&](const std::string& s) { return cfg.suite == "all" || cfg.suite == s; };

  if (want("constants")) {
    results.push_back(check_ratio_bounds(cfg.alpha));
    results.push_back(check_sup_formulas(cfg.alpha));
  }
  if (want("norms")) {
    for (double s : {0.0, -0.5, 0.5, 1.0}) {
      results.push_back(check_norm_equivalence(cfg.alpha, trunc, 250, cfg.seed, s));
      results.push_back(check_w_bound(cfg.alpha, trunc, 250, cfg.seed, s));
    }
  }
  if (want("infsup")) {
    const DiffusivitySpec K = make_diffusivity(cfg.k_selector, cfg.alpha);
    warn_or_fail_wellposed(K, cfg);
    results.push_back(check_infsup(cfg.alpha, K, trunc));
  }
  if (want("mapping"))
    results.push_back(check_mapping_properties(cfg.alpha, {0.0, 0.5}, {50, 100, 200}, cfg.seed));
  if (want("selfadjoint")) results.push_back(check_selfadjointness(cfg.alpha, std::min(cfg.L, 8)));
  if (cfg.exploratory || cfg.suite == "exploratory") {
    for (auto& c : explore_lambda_necessity(cfg.alpha, Truncation{std::min(cfg.L, 8), std::min(cfg.N, 8)}))
      results.push_back(c);
  }
  if (results.empty()) throw std::invalid_argument("unknown suite '" + cfg.suite + "'");

  fs::create_directories(cfg.outdir);
  write_text_file(fs::path(cfg.outdir) / "verify_summary.csv", verify_summary_csv(results, cfg));
  int idx = 0;
  bool all_pass = true;
  for (const auto& c : results) {
    write_text_file(fs::path(cfg.outdir) / ("check_" + std::to_string(idx++) + "_" + c.name + ".json"),
                    check_to_json(c).dump(2) + "\n");
    if (!c.exploratory) all_pass &= c.pass;
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " alpha=" << c.alpha
              << " measured=" << c.measured << " bound=" << c.bound << " margin=" << c.margin
              << (c.exploratory ? " (exploratory)" : "") << "\n";
  }
  return all_pass ? 0 : 3;
}

int run_convergence(RunConfig cfg, const std::string& manufactured) {
  cfg.validate();
  DiffusivitySpec K = make_diffusivity(cfg.k_selector, cfg.alpha);
  warn_or_fail_wellposed(K, cfg);
  const std::vector<int> truncs = {4, 8, 16, 32};
  const double h = cfg.alpha / 2.0;

  std::optional<CoeffVec> truth;
  std::optional<CoeffVec> manufactured_rhs;
  if (!manufactured.empty()) {
    CoeffVec u(h, h, Truncation{0, 0});
    std::stringstream ss(manufactured);
    std::string tok;
    int Lm = 0, Nm = 0;
    while (std::getline(ss, tok, ';')) {
      int l, n, mu;
      double a;
      if (std::sscanf(tok.c_str(), "%d,%d,%d,%lf", &l, &n, &mu, &a) != 4)
        throw std::invalid_argument("manufactured term '" + tok + "' is not l,n,mu,amp");
      u.set(BasisIndex{l, n, mu}, a);
      Lm = std::max(Lm, l);
      Nm = std::max(Nm, n);
    }
    u.set_truncation(Truncation{Lm, Nm});
    SolveConfig fwd;
    fwd.alpha = cfg.alpha;
    fwd.trunc = Truncation{truncs.back(), truncs.back()};
    fwd.K = K;
    fwd.allow_not_wellposed = true;
    manufactured_rhs = apply_operator(fwd, u);
    truth = u;
  }

  std::vector<double> errors;
  std::vector<CoeffVec> solutions;
  for (int t : truncs) {
    SolveConfig scfg;
    scfg.alpha = cfg.alpha;
    scfg.trunc = Truncation{t, t};
    scfg.K = K;
    scfg.allow_not_wellposed = true;
    scfg.linear_tol = cfg.linear_tol;
    scfg.compute_infsup = false;
    if (manufactured_rhs)
      scfg.rhs_coeffs = manufactured_rhs;
    else {
      const RhsSpec rhs = make_rhs(cfg.f_selector, cfg.alpha);
      scfg.rhs_coeffs = rhs.coeffs;
      scfg.rhs_field = rhs.field;
    }
    solutions.push_back(solve(scfg).solution);
  }
  const CoeffVec& ref = truth ? *truth : solutions.back();
  for (std::size_t k = 0; k < solutions.size(); ++k) {
    const bool is_ref = !truth && k + 1 == solutions.size();
    errors.push_back(is_ref ? 0.0 : std::sqrt((solutions[k] - ref).norm_sq()));
  }

  std::ostringstream os;
  os << cfg.header_comment() << "\n" << "N,error,slope\n";
  for (std::size_t k = 0; k < truncs.size(); ++k) {
    os << truncs[k] << "," << fmt17(errors[k]) << ",";
    if (k > 0 && errors[k] > 0.0 && errors[k - 1] > 0.0)
      os << fmt17(std::log2(errors[k - 1] / errors[k]));
    os << "\n";
  }
  fs::create_directories(cfg.outdir);
  write_text_file(fs::path(cfg.outdir) / "convergence.csv", os.str());
  std::cout << os.str();
  return 0;
}

int run_eigs(RunConfig cfg) {
  cfg.validate();
  std::ostringstream os;
  os << cfg.header_comment() << "\n" << "l,n,lambda\n";
  for (int l = 0; l <= cfg.L; ++l)
    for (int n = 0; n <= cfg.N; ++n)
      os << l << "," << n << "," << fmt17(frac_laplacian_eigenvalue(BasisIndex{l, n, +1}, cfg.alpha))
         << "\n";
  fs::create_directories(cfg.outdir);
  write_text_file(fs::path(cfg.outdir) / "eigs.csv", os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver and verification suite for the variable-diffusivity "
               "fractional Laplace equation on the unit disk"};
  app.set_config("--config", "", "Read options from a config file (flags override it)");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string manufactured;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha, "Operator order in (1,2)");
    sub->add_option("--L", cfg.L, "Angular truncation L_max");
    sub->add_option("--N", cfg.N, "Radial truncation N_max");
    sub->add_option("--K", cfg.k_selector,
                    "Diffusivity selector: identity | diag:k1,k2 | rot:theta,k1,k2 | radial:eps | angular:eps");
    sub->add_option("--out", cfg.outdir, "Output directory");
    sub->add_option("--seed", cfg.seed, "Seed for randomized checks");
    sub->add_option("--tol", cfg.linear_tol, "Linear-solve tolerance");
    sub->add_flag("--strict", cfg.strict, "Fail instead of warning on a non-well-posed K");
  };

  CLI::App* s_solve = app.add_subcommand("solve", "Solve the weak problem");
  add_common(s_solve);
  s_solve->add_option("--f", cfg.f_selector, "Right-hand side: mode:l,n,mu[,amp] | poly:one|x|y|xy|r2 | gauss:c | absx");
  s_solve->add_option("--grid-r", cfg.grid_r, "Radial grid count for field.csv");
  s_solve->add_option("--grid-phi", cfg.grid_phi, "Angular grid count for field.csv");

  CLI::App* s_apply = app.add_subcommand("apply", "Apply the forward operator to a coefficient vector");
  add_common(s_apply);
  s_apply->add_option("--f", cfg.f_selector, "Input as mode:l,n,mu[,amp]");
  s_apply->add_option("--coeffs", cfg.coeffs_in, "Input coefficient table file");

  CLI::App* s_verify = app.add_subcommand("verify", "Run the constant/inequality audit suite");
  add_common(s_verify);
  s_verify->add_option("--suite", cfg.suite, "constants | norms | infsup | mapping | selfadjoint | exploratory | all");
  s_verify->add_flag("--exploratory", cfg.exploratory, "Also run the exploratory lambda_M sweep");

  CLI::App* s_conv = app.add_subcommand("convergence", "Truncation refinement study");
  add_common(s_conv);
  s_conv->add_option("--f", cfg.f_selector, "Right-hand side selector");
  s_conv->add_option("--manufactured", manufactured,
                     "Manufactured solution terms 'l,n,mu,amp[;l,n,mu,amp...]' (overrides --f)");

  CLI::App* s_eigs = app.add_subcommand("eigs", "Tabulate operator eigenvalues");
  add_common(s_eigs);

  CLI11_PARSE(app, argc, argv);

  try {
    if (s_solve->parsed()) return run_solve(cfg, false);
    if (s_apply->parsed()) return run_solve(cfg, true);
    if (s_verify->parsed()) return run_verify(cfg);
    if (s_conv->parsed()) return run_convergence(cfg, manufactured);
    if (s_eigs->parsed()) return run_eigs(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
