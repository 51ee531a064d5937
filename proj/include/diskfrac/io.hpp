#ifndef DISKFRAC_IO_HPP_
#define DISKFRAC_IO_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diskfrac/quadrature.hpp"
#include "diskfrac/solver.hpp"
#include "diskfrac/verify.hpp"
#include "diskfrac/version.hpp"

namespace diskfrac {

using json = nlohmann::ordered_json;

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Catalogs. The K catalog is a closed set of selectors; arbitrary user
// expressions are not accepted.
// ---------------------------------------------------------------------------

/// Parse "name" or "name:p1,p2,..." into name + parameter list.
inline std::pair<std::string, std::vector<double>> parse_selector(const std::string& s) {
  const auto colon = s.find(':');
  std::string name = s.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::stringstream ss(s.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("selector parameter '" + tok + "' is not a number");
      params.push_back(v);
    }
  }
  return {name, params};
}

/// Diffusivity catalog:
///   identity              | diag:k1,k2          | rot:theta,k1,k2
///   radial:eps   (1+eps r^2) * I
///   angular:eps  (1+eps r^2 cos 2phi) * I
/// Spectral bounds are exact for the constant selectors and sampled on a
/// boundary-reaching grid otherwise.
inline DiffusivitySpec make_diffusivity(const std::string& selector, double alpha) {
  auto [name, p] = parse_selector(selector);
  DiffusivitySpec K;
  if (name == "identity") {
    if (!p.empty()) throw std::invalid_argument("identity takes no parameters");
    K = DiffusivitySpec::identity();
    K.wellposed = true;
    return K;
  }
  if (name == "diag") {
    if (p.size() != 2) throw std::invalid_argument("diag needs parameters k1,k2");
    const double k1 = p[0], k2 = p[1];
    K.k11 = [k1](PolarPoint) { return k1; };
    K.k12 = [](PolarPoint) { return 0.0; };
    K.k22 = [k2](PolarPoint) { return k2; };
    K.is_constant = true;
    K.lambda_m = std::min(k1, k2);
    K.lambda_M = std::max(k1, k2);
  } else if (name == "rot") {
    if (p.size() != 3) throw std::invalid_argument("rot needs parameters theta,k1,k2");
    const double c = std::cos(p[0]), s = std::sin(p[0]), k1 = p[1], k2 = p[2];
    const double a = c * c * k1 + s * s * k2;
    const double b = c * s * (k1 - k2);
    const double d = s * s * k1 + c * c * k2;
    K.k11 = [a](PolarPoint) { return a; };
    K.k12 = [b](PolarPoint) { return b; };
    K.k22 = [d](PolarPoint) { return d; };
    K.is_constant = true;
    K.lambda_m = std::min(k1, k2);
    K.lambda_M = std::max(k1, k2);
  } else if (name == "radial") {
    if (p.size() != 1) throw std::invalid_argument("radial needs parameter eps");
    const double eps = p[0];
    auto k = [eps](PolarPoint q) { return 1.0 + eps * q.r * q.r; };
    K.k11 = k;
    K.k12 = [](PolarPoint) { return 0.0; };
    K.k22 = k;
  } else if (name == "angular") {
    if (p.size() != 1) throw std::invalid_argument("angular needs parameter eps");
    const double eps = p[0];
    auto k = [eps](PolarPoint q) { return 1.0 + eps * q.r * q.r * std::cos(2.0 * q.phi); };
    K.k11 = k;
    K.k12 = [](PolarPoint) { return 0.0; };
    K.k22 = k;
  } else {
    throw std::invalid_argument("unknown K selector '" + name + "'");
  }
  if (!K.is_constant) {
    const auto s = spd_check(K, alpha, default_sample_grid());
    K.lambda_m = s.lambda_m;
    K.lambda_M = s.lambda_M;
    K.wellposed = s.wellposed;
  } else {
    if (!(K.lambda_m > 0.0))
      throw std::runtime_error("make_diffusivity: K is not positive definite");
    K.wellposed = K.lambda_M < wellposedness_ratio_bound(alpha) * K.lambda_m;
  }
  return K;
}

/// Right-hand-side catalog:
///   mode:l,n,mu[,amp]  a single basis mode in the (alpha/2, l) basis
///   poly:one|x|y|xy|r2 low-order polynomials
///   gauss:c            exp(-c r^2)
///   absx               |x| (limited smoothness)
struct RhsSpec {
  std::optional<CoeffVec> coeffs;
  std::optional<ScalarField> field;
};

inline RhsSpec make_rhs(const std::string& selector, double alpha) {
  const auto colon = selector.find(':');
  const std::string name = selector.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : selector.substr(colon + 1);
  RhsSpec rhs;
  if (name == "mode") {
    const std::vector<double> p = parse_selector(selector).second;
    if (p.size() != 3 && p.size() != 4) throw std::invalid_argument("mode needs l,n,mu[,amp]");
    const BasisIndex idx{int(p[0]), int(p[1]), int(p[2])};
    require_valid(idx, "make_rhs");
    CoeffVec c(alpha / 2.0, 0.0, Truncation{idx.l, idx.n});
    c.set(idx, p.size() == 4 ? p[3] : 1.0);
    rhs.coeffs = c;
  } else if (name == "poly") {
    if (arg == "one")
      rhs.field = [](PolarPoint) { return 1.0; };
    else if (arg == "x")
      rhs.field = [](PolarPoint q) { return q.r * std::cos(q.phi); };
    else if (arg == "y")
      rhs.field = [](PolarPoint q) { return q.r * std::sin(q.phi); };
    else if (arg == "xy")
      rhs.field = [](PolarPoint q) { return q.r * q.r * std::cos(q.phi) * std::sin(q.phi); };
    else if (arg == "r2")
      rhs.field = [](PolarPoint q) { return q.r * q.r; };
    else
      throw std::invalid_argument("unknown poly sub-name '" + arg + "'");
  } else if (name == "gauss") {
    if (arg.empty()) throw std::invalid_argument("gauss needs parameter c");
    const double c = std::stod(arg);
    rhs.field = [c](PolarPoint q) { return std::exp(-c * q.r * q.r); };
  } else if (name == "absx") {
    rhs.field = [](PolarPoint q) { return std::abs(q.r * std::cos(q.phi)); };
  } else {
    throw std::invalid_argument("unknown f selector '" + name + "'");
  }
  return rhs;
}

// ---------------------------------------------------------------------------
// Run configuration and output writers. Every output file starts with a
// header echoing alpha, truncation, K selector, seed and tool version, so a
// rerun with identical configuration is bit-identical.
// ---------------------------------------------------------------------------

struct RunConfig {
  std::string subcommand;
  double alpha = 1.5;
  int L = 8;
  int N = 8;
  std::string k_selector = "identity";
  std::string f_selector = "mode:0,0,+1";
  std::string outdir = "out";
  std::uint64_t seed = 12345;
  double linear_tol = 1e-12;
  bool strict = false;
  std::string suite = "all";
  bool exploratory = false;
  int grid_r = 0;  // if > 0, write field.csv on a grid_r x grid_phi grid
  int grid_phi = 0;
  std::string coeffs_in;  // input coefficient table for `apply`

  void validate() const {
    if (!(alpha > 1.0 && alpha < 2.0)) throw std::invalid_argument("alpha must lie in (1,2)");
    if (L < 0 || N < 0) throw std::invalid_argument("truncation must be non-negative");
  }

  std::string header_comment() const {
    std::ostringstream os;
    os << "# diskfrac v" << DISKFRAC_VERSION_STRING << " alpha=" << fmt17(alpha) << " L=" << L
       << " N=" << N << " K=" << k_selector << " f=" << f_selector << " seed=" << seed;
    return os.str();
  }
};

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file " + path.string());
  os << content;
}

inline json report_to_json(const SolveReport& rep, const RunConfig& cfg) {
  json j;
  j["tool_version"] = DISKFRAC_VERSION_STRING;
  j["alpha"] = cfg.alpha;
  j["L_max"] = cfg.L;
  j["N_max"] = cfg.N;
  j["K"] = cfg.k_selector;
  j["f"] = cfg.f_selector;
  j["seed"] = cfg.seed;
  j["dimension"] = rep.dimension;
  j["residual"] = rep.residual;
  j["infsup_measured"] = rep.infsup_measured;
  j["s_est"] = rep.s_est;
  j["u_h1_norm"] = rep.u_h1_norm;
  j["f_dual_norm"] = rep.f_dual_norm;
  j["c2_bound"] = rep.c2_bound;
  j["apriori_satisfied"] = rep.apriori_satisfied;
  j["wall_ms"] = rep.wall_ms;
  return j;
}

inline json check_to_json(const CheckResult& c) {
  json j;
  j["check"] = c.name;
  j["alpha"] = c.alpha;
  j["params"] = c.params;
  j["seed"] = c.seed;
  j["measured"] = c.measured;
  j["bound"] = c.bound;
  j["margin"] = c.margin;
  j["pass"] = c.pass;
  j["exploratory"] = c.exploratory;
  json d;
  for (const auto& [k, v] : c.details) d[k] = v;
  j["details"] = d;
  return j;
}

inline std::string verify_summary_csv(const std::vector<CheckResult>& results,
                                      const RunConfig& cfg) {
  std::ostringstream os;
  os << cfg.header_comment() << "\n";
  os << "check,alpha,measured,bound,margin,pass\n";
  for (const auto& c : results)
    os << c.name << "," << fmt17(c.alpha) << "," << fmt17(c.measured) << "," << fmt17(c.bound)
       << "," << fmt17(c.margin) << "," << (c.pass ? "true" : "false") << "\n";
  return os.str();
}

/// Grid samples as CSV rows "r,phi,x,y,value".
inline std::string field_csv(const CoeffVec& u, int nr, int nphi, const RunConfig& cfg) {
  std::ostringstream os;
  os << cfg.header_comment() << "\n";
  os << "r,phi,x,y,value\n";
  std::vector<PolarPoint> grid;
  for (int i = 0; i <= nr; ++i) {
    const double r = double(i) / nr;
    for (int j = 0; j < nphi; ++j) grid.push_back({r, 2.0 * kPi * j / nphi});
  }
  const std::vector<double> vals = evaluate_solution(u, grid);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double x = grid[g].r * std::cos(grid[g].phi), y = grid[g].r * std::sin(grid[g].phi);
    os << fmt17(grid[g].r) << "," << fmt17(grid[g].phi) << "," << fmt17(x) << "," << fmt17(y)
       << "," << fmt17(vals[g]) << "\n";
  }
  return os.str();
}

inline std::string coeff_table_string(const CoeffVec& c, double alpha) {
  std::ostringstream os;
  write_coeff_table(os, c, alpha);
  return os.str();
}

}  // namespace diskfrac

#endif  // DISKFRAC_IO_HPP_
