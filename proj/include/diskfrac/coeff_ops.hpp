#ifndef DISKFRAC_COEFF_OPS_HPP_
#define DISKFRAC_COEFF_OPS_HPP_

#include <cmath>
#include <stdexcept>
#include <utility>

#include "diskfrac/basis.hpp"
#include "diskfrac/specfun.hpp"

namespace diskfrac {

/// Parameters of one operator application. s_shift is the integer shift of
/// the Riesz action; the action requires alpha/2 - s_shift > -1.
struct OperatorContext {
  double alpha = 1.5;
  int s_shift = 1;

  void require_riesz_precondition() const {
    if (!(alpha / 2.0 - s_shift > -1.0))
      throw std::domain_error("OperatorContext: alpha/2 - s must exceed -1");
  }
};

/// Eigenvalue of the order-alpha fractional Laplacian on
/// omega^{alpha/2} V_{l,mu} P_n^{(alpha/2,l)}:
///   lambda_{l,n} = 2^alpha G(n+1+a/2) G(n+l+1+a/2) / (G(n+1) G(n+l+1)).
inline double frac_laplacian_eigenvalue(const BasisIndex& idx, double alpha) {
  require_valid(idx, "frac_laplacian_eigenvalue");
  if (!(alpha > 0.0)) throw std::domain_error("frac_laplacian_eigenvalue: alpha must be positive");
  const double h = alpha / 2.0;
  const double n = idx.n, l = idx.l;
  return std::exp(alpha * 0.69314718055994530941723212145818 + ln_gamma(n + 1.0 + h) +
                  ln_gamma(n + l + 1.0 + h) - ln_gamma(n + 1.0) - ln_gamma(n + l + 1.0));
}

/// Action of the order (alpha-2)/2 Riesz operator on one weighted mode
/// omega^{alpha/2-s} V_{l,mu} P_n^{(alpha/2-s,l)}: the image is
/// factor * V_{l,mu} P_{n+1-s}^{(alpha/2-2+s,l)} with
///   factor = (-1)^{1-s} 2^{alpha-2}
///            G(n+1-s+a/2) G(n+l+a/2) / (G(n+1) G(n+l+2-s)).
inline std::pair<BasisIndex, double> riesz_scalar(const BasisIndex& idx, double alpha, int s) {
  require_valid(idx, "riesz_scalar");
  OperatorContext{alpha, s}.require_riesz_precondition();
  const double h = alpha / 2.0;
  const double n = idx.n, l = idx.l;
  const double num1 = n + 1.0 - s + h;
  const double num2 = n + l + h;
  const double den2 = n + l + 2.0 - s;
  if (!(num1 > 0.0) || !(num2 > 0.0) || !(den2 > 0.0))
    throw std::domain_error("riesz_scalar: gamma-factor argument not positive for this (l,n,s)");
  const double sign = ((1 - s) % 2 == 0) ? 1.0 : -1.0;
  const double factor =
      sign * std::exp((alpha - 2.0) * 0.69314718055994530941723212145818 + ln_gamma(num1) +
                      ln_gamma(num2) - ln_gamma(n + 1.0) - ln_gamma(den2));
  BasisIndex target{idx.l, idx.n + 1 - s, idx.mu};
  return {target, factor};
}

/// Row indexing for stencil outputs. The compact derivative formulas address
/// the constant harmonic (l = 0) at full strength; the storage basis uses the
/// halved constant V_{0,1} = 1/2, so converting a stencil row that lands on
/// l = 0 doubles its coefficient. `storage` is the analytic field (validated
/// against finite differences and the operator identity); `compact` keeps the
/// uniform-formula coefficients, which is the indexing in which the sharp
/// norm-equivalence constants are attained exactly.
enum class RowConvention { storage, compact };

namespace detail {
inline double constant_row_scale(int target_l, RowConvention conv) {
  return (target_l == 0 && conv == RowConvention::storage) ? 2.0 : 1.0;
}
inline void stencil_add(CoeffVec& out, BasisIndex target, double value, RowConvention conv) {
  if (target.l < 0 || target.n < 0) return;          // trivial extension: zero function
  if (target.l == 0 && target.mu == -1) return;      // V_{0,-1} is identically zero
  if (value == 0.0) return;
  out.add(target, value * constant_row_scale(target.l, conv));
}
}  // namespace detail

/// Gradient of a weighted expansion: for u with weight exponent g (both the
/// Jacobi parameter and the omega prefactor), grad(omega^g u) =
/// omega^{g-1} * (U1, U2) with U expanded in the (g-1, l) basis. Coefficient
/// flow per source (l,n): target (l+1,n) with weight -(n+g) and target
/// (l-1,n+1) with weight -(n+1); the y component follows the mu-keyed sign
/// table with targets in the mu* family.
inline VecCoeffField grad_weighted(const CoeffVec& u, RowConvention conv = RowConvention::storage) {
  const double g = u.gamma();
  if (std::abs(u.prefactor_exponent() - g) > 1e-12)
    throw std::invalid_argument("grad_weighted: expected prefactor exponent equal to gamma");
  if (!(g > 0.0)) throw std::domain_error("grad_weighted: weight exponent must be positive");
  Truncation t{u.truncation().L_max + 1, u.truncation().N_max + 1};
  VecCoeffField out{CoeffVec(g - 1.0, g - 1.0, t), CoeffVec(g - 1.0, g - 1.0, t)};
  for (const auto& [i, a] : u.entries()) {
    const double sgn = (i.mu == +1) ? 1.0 : -1.0;
    const double up = -(i.n + g) * a;
    const double down = -(i.n + 1.0) * a;
    detail::stencil_add(out.x, {i.l + 1, i.n, i.mu}, up, conv);
    detail::stencil_add(out.x, {i.l - 1, i.n + 1, i.mu}, down, conv);
    detail::stencil_add(out.y, {i.l + 1, i.n, mu_star(i.mu)}, sgn * up, conv);
    detail::stencil_add(out.y, {i.l - 1, i.n + 1, mu_star(i.mu)}, -sgn * down, conv);
  }
  return out;
}

/// Riesz-transported gradient: the order (alpha-2)/2 Riesz operator applied
/// to grad(omega^{alpha/2} v), evaluated mode-by-mode in closed form. The
/// image is an unweighted field in the (alpha/2-1, l) basis.
inline VecCoeffField riesz_grad(const CoeffVec& v, double alpha,
                                RowConvention conv = RowConvention::storage) {
  const double h = alpha / 2.0;
  if (std::abs(v.gamma() - h) > 1e-12 || std::abs(v.prefactor_exponent() - h) > 1e-12)
    throw std::invalid_argument("riesz_grad: input must be an omega^{alpha/2}-weighted expansion");
  Truncation t{v.truncation().L_max + 1, v.truncation().N_max + 1};
  VecCoeffField out{CoeffVec(h - 1.0, 0.0, t), CoeffVec(h - 1.0, 0.0, t)};
  for (const auto& [i, b] : v.entries()) {
    const double n = i.n, l = i.l;
    const double c2 = -std::exp((alpha - 2.0) * 0.69314718055994530941723212145818 +
                                ln_gamma(n + 1.0 + h) + ln_gamma(n + h + l) -
                                ln_gamma(n + 1.0) - ln_gamma(n + 2.0 + l));
    const double sgn = (i.mu == +1) ? 1.0 : -1.0;
    const double up = c2 * (n + h + l) * b;
    const double down = c2 * (n + l + 1.0) * b;
    detail::stencil_add(out.x, {i.l + 1, i.n, i.mu}, up, conv);
    detail::stencil_add(out.x, {i.l - 1, i.n + 1, i.mu}, down, conv);
    detail::stencil_add(out.y, {i.l + 1, i.n, mu_star(i.mu)}, sgn * up, conv);
    detail::stencil_add(out.y, {i.l - 1, i.n + 1, mu_star(i.mu)}, -sgn * down, conv);
  }
  return out;
}

/// Gradient of an unweighted expansion in the (gamma, l) basis; the image is
/// expanded in the (gamma+1, l) basis. Coefficient flow per source (l,n):
/// target (l-1,n) with weight (n+l) and target (l+1,n-1) with weight
/// (n+gamma+l+1).
inline VecCoeffField grad_unweighted(const CoeffVec& p, RowConvention conv = RowConvention::storage) {
  const double g = p.gamma();
  if (!(g > -1.0)) throw std::domain_error("grad_unweighted: gamma must exceed -1");
  Truncation t{p.truncation().L_max + 1, p.truncation().N_max};
  VecCoeffField out{CoeffVec(g + 1.0, p.prefactor_exponent(), t),
                    CoeffVec(g + 1.0, p.prefactor_exponent(), t)};
  for (const auto& [i, a] : p.entries()) {
    const double sgn = (i.mu == +1) ? 1.0 : -1.0;
    const double down = (i.n + double(i.l)) * a;
    const double up = (i.n + g + i.l + 1.0) * a;
    detail::stencil_add(out.x, {i.l - 1, i.n, i.mu}, down, conv);
    detail::stencil_add(out.x, {i.l + 1, i.n - 1, i.mu}, up, conv);
    detail::stencil_add(out.y, {i.l - 1, i.n, mu_star(i.mu)}, -sgn * down, conv);
    detail::stencil_add(out.y, {i.l + 1, i.n - 1, mu_star(i.mu)}, sgn * up, conv);
  }
  return out;
}

/// The test-function map: coefficients of the omega^{alpha/2} expansion are
/// rescaled by
///   2^{2-alpha} (n+1) G(n+1) G(n+l+1) / (G(n+1+a/2) G(n+l+a/2)),
/// then by ((n+1)(n+l+1))^{s_weight}. Index set unchanged.
inline CoeffVec test_map(const CoeffVec& u, double alpha, double s_weight = 0.0) {
  const double h = alpha / 2.0;
  if (std::abs(u.gamma() - h) > 1e-12 || std::abs(u.prefactor_exponent() - h) > 1e-12)
    throw std::invalid_argument("test_map: input must be an omega^{alpha/2}-weighted expansion");
  CoeffVec out(u.gamma(), u.prefactor_exponent(), u.truncation());
  for (const auto& [i, a] : u.entries()) {
    const double n = i.n, l = i.l;
    double f = std::exp((2.0 - alpha) * 0.69314718055994530941723212145818 + ln_gamma(n + 1.0) +
                        ln_gamma(n + l + 1.0) - ln_gamma(n + 1.0 + h) - ln_gamma(n + l + h)) *
               (n + 1.0);
    if (s_weight != 0.0) f *= std::pow((n + 1.0) * (n + l + 1.0), s_weight);
    out.set(i, f * a);
  }
  return out;
}

/// Residual field W = U - V, compared as plain series in the shared
/// (alpha/2-1, l) basis. The omega prefactor flag of U describes how U
/// relates to grad(u~) and plays no role in the componentwise difference.
inline VecCoeffField w_residual(const VecCoeffField& U, const VecCoeffField& V) {
  if (std::abs(U.x.gamma() - V.x.gamma()) > 1e-12 || std::abs(U.y.gamma() - V.y.gamma()) > 1e-12)
    throw std::invalid_argument("w_residual: mismatched weight exponents");
  return {U.x.as_plain_series() - V.x.as_plain_series(),
          U.y.as_plain_series() - V.y.as_plain_series()};
}

/// Weak-form pairing of two vector fields expanded in the same gamma basis:
///   sum over both components of a_t b_t ||phi_t||^2_gamma,
/// i.e. the integral of omega^gamma (A . B) over the disk, with the pairing
/// weight carried exactly once by the basis norms.
inline double field_pairing(const VecCoeffField& A, const VecCoeffField& B) {
  return A.x.as_plain_series().dot_weighted(B.x.as_plain_series()) +
         A.y.as_plain_series().dot_weighted(B.y.as_plain_series());
}

/// Same pairing with a constant symmetric 2x2 matrix applied to A.
inline double field_pairing_const_K(const VecCoeffField& A, const VecCoeffField& B, double k11,
                                    double k12, double k22) {
  const CoeffVec ax = A.x.as_plain_series(), ay = A.y.as_plain_series();
  const CoeffVec bx = B.x.as_plain_series(), by = B.y.as_plain_series();
  return k11 * ax.dot_weighted(bx) + k12 * (ax.dot_weighted(by) + ay.dot_weighted(bx)) +
         k22 * ay.dot_weighted(by);
}

}  // namespace diskfrac

#endif  // DISKFRAC_COEFF_OPS_HPP_
