#ifndef DISKFRAC_SOLVER_HPP_
#define DISKFRAC_SOLVER_HPP_

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diskfrac/coeff_ops.hpp"
#include "diskfrac/quadrature.hpp"

namespace diskfrac {

/// Trial/test index set of the discrete scheme: all (l,n,mu) with l <= L_max,
/// n <= N_max, mu = +-1, minus the absent (0,-1) rows. Deterministic order.
inline std::vector<BasisIndex> mode_set(Truncation t) {
  std::vector<BasisIndex> m;
  m.reserve(std::size_t(2 * (t.L_max + 1) * (t.N_max + 1)));
  for (int l = 0; l <= t.L_max; ++l)
    for (int n = 0; n <= t.N_max; ++n)
      for (int mu : {+1, -1}) {
        if (l == 0 && mu == -1) continue;
        m.push_back({l, n, mu});
      }
  return m;
}

/// Inf-sup lower-bound constant
///   (9 alpha + 2)/8 * (lambda_m - (2-alpha)/sqrt(alpha(2+alpha)) * lambda_M).
inline double c2_theoretical(double alpha, double lambda_m, double lambda_M) {
  const double discount = (2.0 - alpha) / std::sqrt(alpha * (2.0 + alpha));
  return (9.0 * alpha + 2.0) / 8.0 * (lambda_m - discount * lambda_M);
}

struct SolveConfig {
  double alpha = 1.5;
  Truncation trunc{8, 8};
  DiffusivitySpec K = DiffusivitySpec::identity();
  std::optional<CoeffVec> rhs_coeffs;    // expansion of f in the (alpha/2, l) basis, no prefactor
  std::optional<ScalarField> rhs_field;  // or f as a callable
  bool allow_not_wellposed = false;
  double linear_tol = 1e-12;
  int k_resolution_margin = 4;   // extra quadrature resolution for non-polynomial K
  bool compute_infsup = true;
  std::size_t direct_solve_limit = 4000;

  void validate() const {
    if (!(alpha > 1.0 && alpha < 2.0))
      throw std::domain_error("SolveConfig: alpha must lie in (1,2)");
    if (trunc.L_max < 0 || trunc.N_max < 0)
      throw std::invalid_argument("SolveConfig: truncation must be non-negative");
    if (!rhs_coeffs && !rhs_field) throw std::invalid_argument("SolveConfig: no right-hand side");
  }
};

struct SolveReport {
  CoeffVec solution;        // omega^{alpha/2} prefactor, gamma = alpha/2
  double residual = 0.0;    // coefficient-space relative linear residual
  double infsup_measured = -1.0;  // normalized smallest singular value (-1 if skipped)
  double s_est = 0.0;
  double wall_ms = 0.0;
  int dimension = 0;
  // a-priori bound bookkeeping (valid when the K bounds are exact)
  double u_h1_norm = 0.0;
  double f_dual_norm = 0.0;
  double c2_bound = 0.0;
  bool apriori_satisfied = true;
};

/// Error carrying a condition estimate for singular/ill-conditioned systems.
class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& msg, double rcond)
      : std::runtime_error(msg + " (rcond ~ " + std::to_string(rcond) + ")"), rcond_(rcond) {}
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

struct AssembledSystem {
  Eigen::MatrixXd B;        // rows: test modes, cols: trial modes
  Eigen::VectorXd F;
  std::vector<BasisIndex> modes;
};

namespace detail {
inline void require_wellposed(const SolveConfig& cfg) {
  if (!cfg.K.wellposed && !cfg.allow_not_wellposed)
    throw std::runtime_error(
        "assemble: K violates the well-posedness condition lambda_M < "
        "sqrt(alpha(2+alpha))/(2-alpha) * lambda_m (pass the override to proceed)");
}

inline CoeffVec unit_mode(const BasisIndex& i, double gamma, double prefactor, Truncation t) {
  CoeffVec c(gamma, prefactor, t);
  c.set(i, 1.0);
  return c;
}
}  // namespace detail

/// Stiffness part of the discrete weak problem: trial functions
/// omega^{alpha/2} phi_i, test functions omega^{alpha/2} phi_j, entries
///   B_{ji} = integral omega^{alpha/2-1} (K U_i) . V_j.
/// Constant K uses the exact coefficient-space assembly; variable K uses
/// tensor quadrature.
inline std::pair<Eigen::MatrixXd, std::vector<BasisIndex>> assemble_matrix(
    double alpha, Truncation trunc, const DiffusivitySpec& K, int k_resolution_margin = 4) {
  const double h = alpha / 2.0;
  const std::vector<BasisIndex> modes = mode_set(trunc);
  const std::size_t D = modes.size();

  std::vector<VecCoeffField> U(D), V(D);
  parallel_for(D, [&](std::size_t i) {
    const CoeffVec e = detail::unit_mode(modes[i], h, h, trunc);
    U[i] = grad_weighted(e);
    V[i] = riesz_grad(e, alpha);
  });

  Eigen::MatrixXd B;
  if (K.is_constant) {
    const PolarPoint origin{0.0, 0.0};
    const double k11 = K.k11(origin), k12 = K.k12(origin), k22 = K.k22(origin);
    B.resize(D, D);
    parallel_for(D, [&](std::size_t j) {
      for (std::size_t i = 0; i < D; ++i)
        B(j, i) = field_pairing_const_K(U[i], V[j], k11, k12, k22);
    });
  } else {
    const DiskRule rule =
        make_disk_rule(h - 1.0, Truncation{trunc.L_max + 1, trunc.N_max + 1}, k_resolution_margin);
    B = weighted_gram_K(K, U, V, alpha, rule);
  }
  return {std::move(B), modes};
}

/// Assemble the full discrete system (stiffness matrix plus load vector).
inline AssembledSystem assemble(const SolveConfig& cfg) {
  cfg.validate();
  detail::require_wellposed(cfg);
  const double h = cfg.alpha / 2.0;
  AssembledSystem sys;
  auto [B, modes] = assemble_matrix(cfg.alpha, cfg.trunc, cfg.K, cfg.k_resolution_margin);
  sys.B = std::move(B);
  sys.modes = std::move(modes);
  const std::size_t D = sys.modes.size();

  // Load vector F_j = (f, phi_j)_{alpha/2}.
  sys.F.resize(D);
  if (cfg.rhs_coeffs) {
    const CoeffVec& f = *cfg.rhs_coeffs;
    if (std::abs(f.gamma() - h) > 1e-12 || std::abs(f.prefactor_exponent()) > 1e-12)
      throw std::invalid_argument("assemble: rhs expansion must use the (alpha/2, l) basis, no prefactor");
    for (std::size_t j = 0; j < D; ++j)
      sys.F(j) = f.get(sys.modes[j]) * basis_norm_sq(sys.modes[j], h);
  } else {
    const CoeffVec pf = project(*cfg.rhs_field, h, cfg.trunc, cfg.k_resolution_margin);
    for (std::size_t j = 0; j < D; ++j)
      sys.F(j) = pf.get(sys.modes[j]) * basis_norm_sq(sys.modes[j], h);
  }
  return sys;
}

/// Normalized discrete inf-sup value: smallest singular value of B after the
/// test rows are scaled by the H^{alpha-1} mode norms and the trial columns
/// by the H^1 mode norms (both in the coefficient-decay norms).
inline double measure_infsup(const Eigen::MatrixXd& B, const std::vector<BasisIndex>& modes,
                             double alpha) {
  const double h = alpha / 2.0;
  const std::size_t D = modes.size();
  Eigen::VectorXd row_scale(D), col_scale(D);
  for (std::size_t i = 0; i < D; ++i) {
    const double q = double(modes[i].n + 1) * double(modes[i].n + modes[i].l + 1);
    const double nf = basis_norm_sq(modes[i], h);
    row_scale(i) = 1.0 / std::sqrt(std::pow(q, alpha - 1.0) * nf);
    col_scale(i) = 1.0 / std::sqrt(q * nf);
  }
  Eigen::MatrixXd Bn = row_scale.asDiagonal() * B * col_scale.asDiagonal();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(Bn);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (n * sxy - sx * sy) / denom;
}

/// Estimated regularity index: the largest s on the grid {0, 0.25, ..., 6}
/// whose (1+s)-weighted shell sums over n+l = m still decay (fitted log-log
/// slope below -1.25, so the shell series converges with margin). A finite
/// expansion with fewer than three populated shells is in every such space
/// and reports the scan maximum.
inline double regularity_report(const CoeffVec& u) {
  if (u.empty()) throw std::invalid_argument("regularity_report: zero expansion");
  int m_max = 0;
  for (const auto& [i, v] : u.entries()) m_max = std::max(m_max, i.l + i.n);
  const double s_top = 6.0;
  auto shell_sums = [&](double s) {
    std::vector<double> xs, ys;
    std::vector<double> S(std::size_t(m_max) + 1, 0.0);
    for (const auto& [i, v] : u.entries()) {
      const double q = double(i.n + 1) * double(i.n + i.l + 1);
      S[std::size_t(i.l + i.n)] += std::pow(q, 1.0 + s) * v * v * basis_norm_sq(i, u.gamma());
    }
    for (int m = 0; m <= m_max; ++m)
      if (S[std::size_t(m)] > 0.0) {
        xs.push_back(m + 1.0);
        ys.push_back(S[std::size_t(m)]);
      }
    return std::pair(xs, ys);
  };
  auto [xs0, ys0] = shell_sums(0.0);
  if (xs0.size() < 3) return s_top;
  double best = 0.0;
  bool any = false;
  for (double s = 0.0; s <= s_top + 1e-9; s += 0.25) {
    auto [xs, ys] = shell_sums(s);
    if (loglog_slope(xs, ys) <= -1.25) {
      best = s;
      any = true;
    }
  }
  return any ? best : 0.0;
}

/// Solve the assembled system. Dense direct factorization up to
/// direct_solve_limit unknowns, iterative above.
inline SolveReport solve(const SolveConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  AssembledSystem sys = assemble(cfg);
  const std::size_t D = sys.modes.size();
  const double h = cfg.alpha / 2.0;

  Eigen::VectorXd a(D);
  if (D <= cfg.direct_solve_limit) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.B);
    const double rcond = lu.rcond();
    if (!(rcond > std::numeric_limits<double>::epsilon()))
      throw SolveError("solve: system is singular or ill-conditioned", rcond);
    a = lu.solve(sys.F);
  } else {
    Eigen::BiCGSTAB<Eigen::MatrixXd> it(sys.B);
    it.setTolerance(cfg.linear_tol);
    a = it.solve(sys.F);
    if (it.info() != Eigen::Success)
      throw SolveError("solve: iterative solver failed to converge", it.error());
  }

  const double fnorm = sys.F.norm();
  double res = (fnorm > 0.0) ? (sys.B * a - sys.F).norm() / fnorm : (sys.B * a).norm();
  if (res > cfg.linear_tol && D <= cfg.direct_solve_limit && fnorm > 0.0) {
    // one step of iterative refinement
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.B);
    a += lu.solve(sys.F - sys.B * a);
    res = (sys.B * a - sys.F).norm() / fnorm;
  }

  SolveReport rep;
  rep.dimension = int(D);
  rep.solution = CoeffVec(h, h, cfg.trunc);
  for (std::size_t i = 0; i < D; ++i)
    if (a(i) != 0.0) rep.solution.set(sys.modes[i], a(i));
  rep.residual = res;
  if (fnorm > 0.0 && res > cfg.linear_tol)
    throw SolveError("solve: residual exceeds tolerance", res);

  if (cfg.compute_infsup && D <= 2000) rep.infsup_measured = measure_infsup(sys.B, sys.modes, cfg.alpha);
  rep.s_est = rep.solution.empty() ? 0.0 : regularity_report(rep.solution);

  rep.u_h1_norm = rep.solution.sobolev_norm(1.0);
  if (cfg.rhs_coeffs) rep.f_dual_norm = cfg.rhs_coeffs->sobolev_norm(-(cfg.alpha - 1.0));
  rep.c2_bound = c2_theoretical(cfg.alpha, cfg.K.lambda_m, cfg.K.lambda_M);
  if (cfg.rhs_coeffs && rep.c2_bound > 0.0)
    rep.apriori_satisfied = rep.u_h1_norm <= rep.f_dual_norm / rep.c2_bound + 1e-10;

  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// Galerkin image of a coefficient solution: the expansion f with
///   (f, phi_t)_{alpha/2} = B(u~, omega^{alpha/2} phi_t)
/// for every t in the truncation rectangle extended by a halo of two in each
/// direction (the operator couples l to l +- 2 for anisotropic K). Exact
/// (quadrature-free) for constant K.
inline CoeffVec apply_operator(const SolveConfig& cfg, const CoeffVec& u) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 2.0))
    throw std::domain_error("apply_operator: alpha must lie in (0,2)");
  const double h = cfg.alpha / 2.0;
  if (std::abs(u.gamma() - h) > 1e-12 || std::abs(u.prefactor_exponent() - h) > 1e-12)
    throw std::invalid_argument("apply_operator: u must be an omega^{alpha/2}-weighted expansion");
  detail::require_wellposed(cfg);

  int Lu = 0, Nu = 0;
  for (const auto& [i, v] : u.entries()) {
    Lu = std::max(Lu, i.l);
    Nu = std::max(Nu, i.n);
  }
  const Truncation ext{std::max(cfg.trunc.L_max, Lu) + 2, std::max(cfg.trunc.N_max, Nu) + 2};
  const std::vector<BasisIndex> targets = mode_set(ext);
  const VecCoeffField Uu = grad_weighted(u);

  CoeffVec f(h, 0.0, ext);
  if (cfg.K.is_constant) {
    const PolarPoint origin{0.0, 0.0};
    const double k11 = cfg.K.k11(origin), k12 = cfg.K.k12(origin), k22 = cfg.K.k22(origin);
    for (const auto& t : targets) {
      const VecCoeffField Vt = riesz_grad(detail::unit_mode(t, h, h, ext), cfg.alpha);
      const double b = field_pairing_const_K(Uu, Vt, k11, k12, k22);
      if (b != 0.0) f.set(t, b / basis_norm_sq(t, h));
    }
  } else {
    std::vector<VecCoeffField> Vt(targets.size());
    parallel_for(targets.size(), [&](std::size_t j) {
      Vt[j] = riesz_grad(detail::unit_mode(targets[j], h, h, ext), cfg.alpha);
    });
    const DiskRule rule =
        make_disk_rule(h - 1.0, Truncation{ext.L_max + 1, ext.N_max + 1}, cfg.k_resolution_margin);
    Eigen::MatrixXd col = weighted_gram_K(cfg.K, {Uu}, Vt, cfg.alpha, rule);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      const double v = col(j, 0) / basis_norm_sq(targets[j], h);
      if (std::abs(v) > 0.0) f.set(targets[j], v);
    }
  }
  return f;
}

/// Evaluate omega^{alpha/2} times the solution series on a grid of polar
/// points. Points with r = 1 evaluate to exactly zero (exterior condition);
/// r > 1 is an error.
inline std::vector<double> evaluate_solution(const CoeffVec& u, const std::vector<PolarPoint>& grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (const auto& p : grid) {
    if (p.r > 1.0) throw std::domain_error("evaluate_solution: point outside the closed disk");
    out.push_back(p.r == 1.0 ? 0.0 : u.eval_physical(p));
  }
  return out;
}

}  // namespace diskfrac

#endif  // DISKFRAC_SOLVER_HPP_
