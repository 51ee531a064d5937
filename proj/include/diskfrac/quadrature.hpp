#ifndef DISKFRAC_QUADRATURE_HPP_
#define DISKFRAC_QUADRATURE_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "diskfrac/basis.hpp"
#include "diskfrac/coeff_ops.hpp"
#include "diskfrac/util.hpp"

namespace diskfrac {

/// Gauss-Jacobi rule on (-1,1) for the weight (1-t)^a (1+t)^b, by the
/// Golub-Welsch eigenvalue method. Exact for polynomial degree <= 2m-1.
/// Nodes are returned in ascending order.
struct GaussJacobiRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussJacobiRule gauss_jacobi_rule(int m, double a, double b) {
  if (m < 1) throw std::invalid_argument("gauss_jacobi_rule: need m >= 1");
  if (!(a > -1.0) || !(b > -1.0))
    throw std::domain_error("gauss_jacobi_rule: weight exponents must exceed -1");
  // Recurrence coefficients of the monic Jacobi polynomials.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  auto diag = [&](int k) -> double {
    if (k == 0) return (b - a) / (a + b + 2.0);
    const double c = 2.0 * k + a + b;
    return (b * b - a * a) / (c * (c + 2.0));
  };
  auto offdiag_sq = [&](int k) -> double {  // beta_k, k >= 1
    if (k == 1) return 4.0 * (1.0 + a) * (1.0 + b) / (sqr(2.0 + a + b) * (3.0 + a + b));
    const double c = 2.0 * k + a + b;
    return 4.0 * k * (k + a) * (k + b) * (k + a + b) / (sqr(c) * (c + 1.0) * (c - 1.0));
  };
  for (int k = 0; k < m; ++k) J(k, k) = diag(k);
  for (int k = 1; k < m; ++k) {
    const double e = std::sqrt(offdiag_sq(k));
    J(k, k - 1) = e;
    J(k - 1, k) = e;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gauss_jacobi_rule: eigen decomposition failed");
  const double mu0 =
      std::exp((a + b + 1.0) * 0.69314718055994530941723212145818 + ln_gamma(a + 1.0) +
               ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0));
  GaussJacobiRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int k = 0; k < m; ++k) {
    rule.nodes[k] = es.eigenvalues()(k);
    rule.weights[k] = mu0 * sqr(es.eigenvectors()(0, k));
  }
  return rule;
}

/// Tensor quadrature on the unit disk against the weight omega^beta:
/// a radial Gauss-Jacobi rule in rho = 2r^2-1 with the (1-rho)^beta factor
/// folded into the Jacobi weight (so the boundary singularity for beta < 0
/// is handled analytically and nodes stay interior), crossed with a uniform
/// angular trapezoid rule, exact for trigonometric polynomials of frequency
/// below M_phi.
class DiskRule {
 public:
  DiskRule(double beta, int radial_count, int angular_count)
      : beta_(beta), m_phi_(angular_count) {
    if (angular_count < 1) throw std::invalid_argument("DiskRule: need M_phi >= 1");
    auto gj = gauss_jacobi_rule(radial_count, beta, 0.0);
    radii_.resize(gj.nodes.size());
    radial_w_.resize(gj.nodes.size());
    const double scale = std::pow(2.0, -(beta + 2.0));
    for (std::size_t k = 0; k < gj.nodes.size(); ++k) {
      radii_[k] = std::sqrt(0.5 * (1.0 + gj.nodes[k]));
      radial_w_[k] = scale * gj.weights[k];
    }
    angles_.resize(m_phi_);
    for (int j = 0; j < m_phi_; ++j) angles_[j] = 2.0 * kPi * j / m_phi_;
    angular_w_ = 2.0 * kPi / m_phi_;
  }

  double beta() const { return beta_; }
  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& radial_weights() const { return radial_w_; }
  const std::vector<double>& angles() const { return angles_; }
  double angular_weight() const { return angular_w_; }

  /// Integral of omega^beta f over the disk.
  double integrate(const ScalarField& f) const {
    double s = 0.0;
    for (std::size_t k = 0; k < radii_.size(); ++k) {
      double ring = 0.0;
      for (int j = 0; j < m_phi_; ++j) {
        const double v = f(PolarPoint{radii_[k], angles_[j]});
        if (!std::isfinite(v)) throw std::runtime_error("DiskRule: non-finite sample");
        ring += v;
      }
      s += radial_w_[k] * angular_w_ * ring;
    }
    return s;
  }

 private:
  double beta_;
  int m_phi_;
  std::vector<double> radii_, radial_w_, angles_;
  double angular_w_;
};

/// Default quadrature sizes for a truncation rectangle: radial degree covers
/// the polynomial content plus a margin, M_phi covers all angular products.
inline DiskRule make_disk_rule(double beta, Truncation t, int k_resolution_margin = 0) {
  const int m_r = t.N_max + t.L_max + 8 + k_resolution_margin;
  const int m_phi = 2 * t.L_max + 8 + 2 * k_resolution_margin;
  return DiskRule(beta, m_r, m_phi);
}

/// Orthogonal projection of a scalar field onto the truncated basis:
/// coefficients (f, phi_i)_gamma / ||phi_i||^2_gamma.
inline CoeffVec project(const ScalarField& f, double gamma, Truncation trunc,
                        int k_resolution_margin = 0) {
  const DiskRule rule = make_disk_rule(gamma, trunc, k_resolution_margin);
  CoeffVec out(gamma, 0.0, trunc);
  // Cache f at the tensor nodes once.
  const auto& rr = rule.radii();
  const auto& ph = rule.angles();
  std::vector<double> fv(rr.size() * ph.size());
  for (std::size_t k = 0; k < rr.size(); ++k)
    for (std::size_t j = 0; j < ph.size(); ++j) {
      const double v = f(PolarPoint{rr[k], ph[j]});
      if (!std::isfinite(v)) throw std::runtime_error("project: non-finite sample");
      fv[k * ph.size() + j] = v;
    }
  for (int l = 0; l <= trunc.L_max; ++l) {
    for (int mu : {+1, -1}) {
      if (l == 0 && mu == -1) continue;
      for (int n = 0; n <= trunc.N_max; ++n) {
        const BasisIndex idx{l, n, mu};
        double acc = 0.0;
        for (std::size_t k = 0; k < rr.size(); ++k) {
          const double rho = 2.0 * rr[k] * rr[k] - 1.0;
          const double rad = jacobi_eval(n, gamma, l, rho) * std::pow(rr[k], l);
          double ring = 0.0;
          for (std::size_t j = 0; j < ph.size(); ++j) {
            const double ang = (l == 0) ? 0.5 : (mu == +1 ? std::cos(l * ph[j]) : std::sin(l * ph[j]));
            ring += ang * fv[k * ph.size() + j];
          }
          acc += rule.radial_weights()[k] * rule.angular_weight() * rad * ring;
        }
        const double c = acc / basis_norm_sq(idx, gamma);
        if (std::abs(c) > 0.0) out.set(idx, c);
      }
    }
  }
  return out;
}

/// The SPD matrix field K(x) with its sampled spectral bounds. Entries are
/// scalar-field callables; symmetry is structural (k21 = k12).
struct DiffusivitySpec {
  ScalarField k11;
  ScalarField k12;
  ScalarField k22;
  double lambda_m = 1.0;
  double lambda_M = 1.0;
  bool wellposed = true;
  bool is_identity = false;
  bool is_constant = false;  // entries independent of x

  static DiffusivitySpec identity() {
    DiffusivitySpec k;
    k.k11 = [](PolarPoint) { return 1.0; };
    k.k12 = [](PolarPoint) { return 0.0; };
    k.k22 = [](PolarPoint) { return 1.0; };
    k.is_identity = true;
    k.is_constant = true;
    return k;
  }
};

/// Critical spectral-ratio bound sqrt(alpha(2+alpha))/(2-alpha); the problem
/// is well posed when lambda_M / lambda_m stays strictly below it.
inline double wellposedness_ratio_bound(double alpha) {
  return std::sqrt(alpha * (2.0 + alpha)) / (2.0 - alpha);
}

struct SpdCheckResult {
  double lambda_m = 0.0;
  double lambda_M = 0.0;
  bool wellposed = false;
};

/// Min/max eigenvalues of K over a sample grid, and the well-posedness flag
/// lambda_M < sqrt(alpha(2+alpha))/(2-alpha) * lambda_m. A non-SPD sample
/// (lambda_m <= 0) is a hard error.
inline SpdCheckResult spd_check(const DiffusivitySpec& K, double alpha,
                                const std::vector<PolarPoint>& sample_grid) {
  if (sample_grid.empty()) throw std::invalid_argument("spd_check: empty sample grid");
  double lam_m = std::numeric_limits<double>::infinity();
  double lam_M = -std::numeric_limits<double>::infinity();
  for (const auto& p : sample_grid) {
    const double a = K.k11(p), b = K.k12(p), c = K.k22(p);
    const double tr = a + c;
    const double disc = std::sqrt(sqr(a - c) + 4.0 * b * b);
    const double lo = 0.5 * (tr - disc), hi = 0.5 * (tr + disc);
    if (!(lo > 0.0)) throw std::runtime_error("spd_check: K not positive definite at a sample point");
    lam_m = std::min(lam_m, lo);
    lam_M = std::max(lam_M, hi);
  }
  SpdCheckResult r;
  r.lambda_m = lam_m;
  r.lambda_M = lam_M;
  r.wellposed = lam_M < wellposedness_ratio_bound(alpha) * lam_m;
  return r;
}

/// Default sampling grid for K diagnostics, reaching close to the boundary.
inline std::vector<PolarPoint> default_sample_grid(int nr = 48, int nphi = 64) {
  std::vector<PolarPoint> g;
  g.reserve(std::size_t(nr) * nphi);
  for (int i = 0; i < nr; ++i) {
    const double r = (i + 1.0) / nr;  // include r = 1
    for (int j = 0; j < nphi; ++j) g.push_back({r, 2.0 * kPi * j / nphi});
  }
  return g;
}

/// Max |k| over the grid (the n = 0 weighted-sup estimate).
inline double winf_norm_estimate(const ScalarField& k, const std::vector<PolarPoint>& grid) {
  if (grid.empty()) throw std::invalid_argument("winf_norm_estimate: empty sample grid");
  double m = 0.0;
  for (const auto& p : grid) {
    const double v = k(p);
    if (!std::isfinite(v)) throw std::runtime_error("winf_norm_estimate: non-finite sample");
    m = std::max(m, std::abs(v));
  }
  return m;
}

namespace detail {
/// Sampled values of one vector field (plain series) at the tensor nodes of
/// a DiskRule, stored ring-major.
struct FieldSamples {
  std::vector<double> vx, vy;
};

inline FieldSamples sample_field(const VecCoeffField& F, const DiskRule& rule) {
  const auto& rr = rule.radii();
  const auto& ph = rule.angles();
  FieldSamples s;
  s.vx.assign(rr.size() * ph.size(), 0.0);
  s.vy.assign(rr.size() * ph.size(), 0.0);
  auto accumulate = [&](const CoeffVec& c, std::vector<double>& dst) {
    for (const auto& [i, v] : c.entries()) {
      for (std::size_t k = 0; k < rr.size(); ++k) {
        const double rho = 2.0 * rr[k] * rr[k] - 1.0;
        const double rad = v * jacobi_eval(i.n, c.gamma(), i.l, rho) * std::pow(rr[k], i.l);
        for (std::size_t j = 0; j < ph.size(); ++j) {
          const double ang =
              (i.l == 0) ? 0.5 : (i.mu == +1 ? std::cos(i.l * ph[j]) : std::sin(i.l * ph[j]));
          dst[k * ph.size() + j] += rad * ang;
        }
      }
    }
  };
  accumulate(F.x, s.vx);
  accumulate(F.y, s.vy);
  return s;
}
}  // namespace detail

/// Gram matrix of the weak-form pairing  integral omega^{alpha/2-1} (K U_i) . V_j
/// over the disk, by tensor quadrature. U carries the omega^{alpha/2-1}
/// prefactor folded into the quadrature weight; V carries none; the pairing
/// weight enters exactly once through the rule's beta = alpha/2 - 1.
/// Entry (j, i) of the result pairs test field V_j with trial field U_i.
inline Eigen::MatrixXd weighted_gram_K(const DiffusivitySpec& K,
                                       const std::vector<VecCoeffField>& U_cols,
                                       const std::vector<VecCoeffField>& V_rows, double alpha,
                                       const DiskRule& rule) {
  const auto& rr = rule.radii();
  const auto& ph = rule.angles();
  const std::size_t nodes = rr.size() * ph.size();
  // Node weights and K entries.
  std::vector<double> w(nodes), a11(nodes), a12(nodes), a22(nodes);
  for (std::size_t k = 0; k < rr.size(); ++k)
    for (std::size_t j = 0; j < ph.size(); ++j) {
      const std::size_t q = k * ph.size() + j;
      w[q] = rule.radial_weights()[k] * rule.angular_weight();
      const PolarPoint p{rr[k], ph[j]};
      a11[q] = K.k11(p);
      a12[q] = K.k12(p);
      a22[q] = K.k22(p);
      if (!std::isfinite(a11[q]) || !std::isfinite(a12[q]) || !std::isfinite(a22[q]))
        throw std::runtime_error("weighted_gram_K: K evaluation failed at a node");
    }
  std::vector<detail::FieldSamples> us(U_cols.size()), vs(V_rows.size());
  parallel_for(U_cols.size(), [&](std::size_t i) { us[i] = detail::sample_field(U_cols[i], rule); });
  parallel_for(V_rows.size(), [&](std::size_t j) { vs[j] = detail::sample_field(V_rows[j], rule); });
  Eigen::MatrixXd B(V_rows.size(), U_cols.size());
  parallel_for(V_rows.size(), [&](std::size_t j) {
    for (std::size_t i = 0; i < U_cols.size(); ++i) {
      double acc = 0.0;
      for (std::size_t q = 0; q < nodes; ++q) {
        const double kux = a11[q] * us[i].vx[q] + a12[q] * us[i].vy[q];
        const double kuy = a12[q] * us[i].vx[q] + a22[q] * us[i].vy[q];
        acc += w[q] * (kux * vs[j].vx[q] + kuy * vs[j].vy[q]);
      }
      B(j, i) = acc;
    }
  });
  return B;
}

}  // namespace diskfrac

#endif  // DISKFRAC_QUADRATURE_HPP_
