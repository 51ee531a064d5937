#ifndef DISKFRAC_BASIS_HPP_
#define DISKFRAC_BASIS_HPP_

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "diskfrac/specfun.hpp"
#include "diskfrac/util.hpp"

namespace diskfrac {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Index of one basis function V_{l,mu}(x) P_n^{(gamma,l)}(2r^2-1).
/// mu = +1 selects the cosine family, mu = -1 the sine family.
/// (l, mu) = (0, -1) is not a basis function and is never constructed.
struct BasisIndex {
  int l = 0;
  int n = 0;
  int mu = +1;

  friend bool operator==(const BasisIndex& a, const BasisIndex& b) {
    return a.l == b.l && a.n == b.n && a.mu == b.mu;
  }
};

struct BasisIndexLess {
  bool operator()(const BasisIndex& a, const BasisIndex& b) const {
    if (a.l != b.l) return a.l < b.l;
    if (a.n != b.n) return a.n < b.n;
    return a.mu > b.mu;  // +1 sorts before -1
  }
};

inline bool valid_index(const BasisIndex& i) {
  return i.l >= 0 && i.n >= 0 && (i.mu == +1 || i.mu == -1) && !(i.l == 0 && i.mu == -1);
}

inline void require_valid(const BasisIndex& i, const char* where) {
  if (!valid_index(i)) throw std::invalid_argument(std::string(where) + ": invalid basis index");
}

/// mu* notation: flips the angular family.
inline int mu_star(int mu) { return -mu; }

/// Angular factor C_{l,mu} of the squared disk norm: pi/2 for the constant
/// mode (l=0, mu=+1), pi otherwise.
inline double angular_norm_const(const BasisIndex& i) {
  return (i.l == 0) ? kPi / 2.0 : kPi;
}

/// Solid harmonic V_{l,mu} at a point. V_{0,1} := 1/2 (halved constant);
/// V_{l,1} = r^l cos(l phi), V_{l,-1} = r^l sin(l phi) for l >= 1.
inline double harmonic_eval(int l, int mu, PolarPoint p) {
  BasisIndex idx{l, 0, mu};
  require_valid(idx, "harmonic_eval");
  if (l == 0) return 0.5;
  const double rl = std::pow(p.r, l);
  return (mu == +1) ? rl * std::cos(l * p.phi) : rl * std::sin(l * p.phi);
}

/// Basis function V_{l,mu}(x) P_n^{(gamma,l)}(2r^2-1) at a point.
inline double basis_eval(const BasisIndex& idx, double gamma, PolarPoint p) {
  require_valid(idx, "basis_eval");
  const double rho = 2.0 * p.r * p.r - 1.0;
  return harmonic_eval(idx.l, idx.mu, p) * jacobi_eval(idx.n, gamma, idx.l, rho);
}

/// Squared L2_beta(disk) norm of V_{l,mu} P_n^{(beta,l)}:
///   C_{l,mu} * 2^{-(beta+l+2)} * |||P_n^{(beta,l)}|||^2,
/// obtained from the substitution rho = 2r^2-1. Evaluated in log space so
/// large l never overflows.
inline double basis_norm_sq(const BasisIndex& idx, double beta) {
  require_valid(idx, "basis_norm_sq");
  if (!(beta > -1.0)) throw std::domain_error("basis_norm_sq: beta must exceed -1");
  const double ln2 = 0.69314718055994530941723212145818;
  const int n = idx.n, l = idx.l;
  // log of 2^{-(beta+l+2)} * 2^{beta+l+1} / (2n+beta+l+1) * Gamma ratio
  double s = -ln2 - std::log(2.0 * n + beta + l + 1.0);
  s += ln_gamma(n + beta + 1.0) + ln_gamma(n + l + 1.0);
  s -= ln_gamma(n + 1.0) + ln_gamma(n + beta + l + 1.0);
  return angular_norm_const(idx) * std::exp(s);
}

/// Ratio ||V P_n^{(gamma+k,l)}||^2_{gamma+k} / ||V P_n^{(gamma,l)}||^2_{gamma}
/// as the exact product
///   (2n+gamma+l+1)/(2n+gamma+l+1+k) * prod_{s=1..k} (n+gamma+s)/(n+gamma+l+s).
inline double norm_ratio_shift_weight(const BasisIndex& idx, double gamma, int k) {
  require_valid(idx, "norm_ratio_shift_weight");
  if (k < 0) throw std::invalid_argument("norm_ratio_shift_weight: k must be >= 0");
  if (!(gamma > -1.0) || !(gamma + k > -1.0))
    throw std::domain_error("norm_ratio_shift_weight: weights must exceed -1");
  const int n = idx.n, l = idx.l;
  double r = (2.0 * n + gamma + l + 1.0) / (2.0 * n + gamma + l + 1.0 + k);
  for (int s = 1; s <= k; ++s) r *= (n + gamma + s) / (n + gamma + l + s);
  return r;
}

/// Ratio ||V_{l+j} P_{n+m}^{(gamma,l+j)}||^2 / ||V_l P_n^{(gamma,l)}||^2 in
/// L2_gamma, exact product form.
inline double norm_ratio_shift_index_up(const BasisIndex& idx, double gamma, int j, int m) {
  require_valid(idx, "norm_ratio_shift_index_up");
  if (j < 0 || m < 0) throw std::invalid_argument("norm_ratio_shift_index_up: j, m must be >= 0");
  const int n = idx.n, l = idx.l;
  const BasisIndex target{l + j, n + m, idx.mu};
  require_valid(target, "norm_ratio_shift_index_up (target)");
  double r = angular_norm_const(target) / angular_norm_const(idx);
  r *= (2.0 * n + gamma + l + 1.0) / (2.0 * n + 2.0 * m + gamma + l + j + 1.0);
  for (int s = 1; s <= m; ++s) r *= (n + gamma + s) / (n + s);
  for (int s = 1; s <= m + j; ++s) r *= (n + l + s) / (n + gamma + l + s);
  return r;
}

/// Ratio ||V_{l-j} P_{n+m}^{(gamma,l-j)}||^2 / ||V_l P_n^{(gamma,l)}||^2 in
/// L2_gamma (requires m >= j and a valid target).
inline double norm_ratio_shift_index_down(const BasisIndex& idx, double gamma, int j, int m) {
  require_valid(idx, "norm_ratio_shift_index_down");
  if (j < 0 || m < j) throw std::invalid_argument("norm_ratio_shift_index_down: need m >= j >= 0");
  const int n = idx.n, l = idx.l;
  const BasisIndex target{l - j, n + m, idx.mu};
  require_valid(target, "norm_ratio_shift_index_down (target)");
  double r = angular_norm_const(target) / angular_norm_const(idx);
  r *= (2.0 * n + gamma + l + 1.0) / (2.0 * n + 2.0 * m + gamma + l - j + 1.0);
  for (int s = 1; s <= m; ++s) r *= (n + gamma + s) / (n + s);
  for (int s = 1; s <= m - j; ++s) r *= (n + l + s) / (n + gamma + l + s);
  return r;
}

/// Rectangular truncation l <= L_max, n <= N_max.
struct Truncation {
  int L_max = 0;
  int N_max = 0;
};

/// A finite expansion sum a_{l,n,mu} V_{l,mu} P_n^{(gamma,l)}(rho) for one
/// Jacobi weight exponent gamma. prefactor_exponent g records that the
/// physical-space function is omega^g times the series (0 means none).
/// Entries are stored sparsely; stencil outputs may carry a halo beyond the
/// nominal truncation rectangle and are retained, never dropped.
class CoeffVec {
 public:
  using Map = std::map<BasisIndex, double, BasisIndexLess>;

  CoeffVec() = default;
  CoeffVec(double gamma, double prefactor_exponent, Truncation trunc)
      : gamma_(gamma), prefactor_(prefactor_exponent), trunc_(trunc) {}

  double gamma() const { return gamma_; }
  double prefactor_exponent() const { return prefactor_; }
  const Truncation& truncation() const { return trunc_; }
  void set_truncation(Truncation t) { trunc_ = t; }

  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  double get(const BasisIndex& i) const {
    auto it = entries_.find(i);
    return it == entries_.end() ? 0.0 : it->second;
  }

  void set(const BasisIndex& i, double v) {
    require_valid(i, "CoeffVec::set");
    if (!std::isfinite(v)) throw std::invalid_argument("CoeffVec::set: non-finite coefficient");
    if (v == 0.0)
      entries_.erase(i);
    else
      entries_[i] = v;
  }

  void add(const BasisIndex& i, double v) {
    require_valid(i, "CoeffVec::add");
    if (!std::isfinite(v)) throw std::invalid_argument("CoeffVec::add: non-finite coefficient");
    double& slot = entries_[i];
    slot += v;
    if (slot == 0.0) entries_.erase(i);
  }

  void require_combinable(const CoeffVec& other, const char* where) const {
    if (std::abs(gamma_ - other.gamma_) > 1e-12 || std::abs(prefactor_ - other.prefactor_) > 1e-12)
      throw std::invalid_argument(std::string(where) + ": representation mismatch (gamma or prefactor)");
  }

  CoeffVec& operator+=(const CoeffVec& other) {
    require_combinable(other, "CoeffVec::operator+=");
    for (const auto& [i, v] : other.entries_) add(i, v);
    return *this;
  }
  CoeffVec& operator-=(const CoeffVec& other) {
    require_combinable(other, "CoeffVec::operator-=");
    for (const auto& [i, v] : other.entries_) add(i, -v);
    return *this;
  }
  friend CoeffVec operator+(CoeffVec a, const CoeffVec& b) { return a += b; }
  friend CoeffVec operator-(CoeffVec a, const CoeffVec& b) { return a -= b; }

  CoeffVec scaled(double c) const {
    CoeffVec out(gamma_, prefactor_, trunc_);
    for (const auto& [i, v] : entries_) out.set(i, c * v);
    return out;
  }

  /// Same series with the prefactor flag cleared; used when a stencil output
  /// is to be read as a plain L2 field.
  CoeffVec as_plain_series() const {
    CoeffVec out(gamma_, 0.0, trunc_);
    out.entries_ = entries_;
    return out;
  }

  /// Coefficients premultiplied by ((n+1)(n+l+1))^{s/2}.
  CoeffVec premultiplied(double s) const {
    CoeffVec out(gamma_, prefactor_, trunc_);
    for (const auto& [i, v] : entries_)
      out.set(i, v * std::pow(double(i.n + 1) * double(i.n + i.l + 1), 0.5 * s));
    return out;
  }

  /// Weighted inner product sum a_i b_i ||phi_i||^2_{gamma}.
  double dot_weighted(const CoeffVec& other) const {
    require_combinable(other, "CoeffVec::dot_weighted");
    const CoeffVec* small = this;
    const CoeffVec* big = &other;
    if (small->size() > big->size()) std::swap(small, big);
    double s = 0.0;
    for (const auto& [i, v] : small->entries_) {
      double w = big->get(i);
      if (w != 0.0) s += v * w * basis_norm_sq(i, gamma_);
    }
    return s;
  }

  /// Squared L2_beta norm of the series (beta defaults to gamma).
  double norm_sq(double beta) const {
    double s = 0.0;
    for (const auto& [i, v] : entries_) s += v * v * basis_norm_sq(i, beta);
    return s;
  }
  double norm_sq() const { return norm_sq(gamma_); }

  /// Coefficient-decay Sobolev norm
  ///   ( sum (n+1)^s (n+l+1)^s a^2 ||phi||^2_{gamma} )^{1/2};
  /// s may be negative (dual norm, same formula).
  double sobolev_norm(double s) const {
    double acc = 0.0;
    for (const auto& [i, v] : entries_) {
      const double w = std::pow(double(i.n + 1) * double(i.n + i.l + 1), s);
      acc += w * v * v * basis_norm_sq(i, gamma_);
    }
    return std::sqrt(acc);
  }

  /// Evaluate the series (without any omega^g prefactor) at a point.
  double eval_series(PolarPoint p) const {
    double s = 0.0;
    for (const auto& [i, v] : entries_) s += v * basis_eval(i, gamma_, p);
    return s;
  }

  /// Evaluate the physical-space function omega^g * series at a point.
  double eval_physical(PolarPoint p) const {
    if (p.r > 1.0) throw std::domain_error("CoeffVec::eval_physical: r > 1");
    if (p.r == 1.0 && prefactor_ > 0.0) return 0.0;
    const double w = (prefactor_ == 0.0) ? 1.0 : std::pow(1.0 - p.r * p.r, prefactor_);
    return w * eval_series(p);
  }

 private:
  double gamma_ = 0.0;
  double prefactor_ = 0.0;
  Truncation trunc_{};
  Map entries_;
};

/// Pair of CoeffVec components of a vector field; both components share the
/// weight exponent and truncation.
struct VecCoeffField {
  CoeffVec x;
  CoeffVec y;

  double norm_sq(double beta) const { return x.norm_sq(beta) + y.norm_sq(beta); }

  VecCoeffField premultiplied(double s) const { return {x.premultiplied(s), y.premultiplied(s)}; }

  VecCoeffField operator-(const VecCoeffField& o) const { return {x - o.x, y - o.y}; }
};

// ---------------------------------------------------------------------------
// Coefficient table serialization: a '#' header line recording gamma,
// prefactor exponent, alpha and truncation, then rows "l,n,mu,coefficient".
// ---------------------------------------------------------------------------

inline void write_coeff_table(std::ostream& os, const CoeffVec& c, double alpha) {
  char buf[384];
  std::snprintf(buf, sizeof(buf),
                "# diskfrac coeff-table v1 alpha=%.17g gamma=%.17g prefactor=%.17g L_max=%d N_max=%d",
                alpha, c.gamma(), c.prefactor_exponent(), c.truncation().L_max, c.truncation().N_max);
  os << buf << "\n" << "l,n,mu,coefficient\n";
  for (const auto& [i, v] : c.entries()) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%+d,%.17g", i.l, i.n, i.mu, v);
    os << buf << "\n";
  }
}

inline CoeffVec read_coeff_table(std::istream& is, double* alpha_out = nullptr) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# diskfrac coeff-table", 0) != 0)
    throw std::runtime_error("read_coeff_table: missing header line");
  double alpha = 0, gamma = 0, pre = 0;
  int L = 0, N = 0;
  {
    std::istringstream hs(line);
    std::string tok;
    while (hs >> tok) {
      if (tok.rfind("alpha=", 0) == 0) alpha = std::stod(tok.substr(6));
      else if (tok.rfind("gamma=", 0) == 0) gamma = std::stod(tok.substr(6));
      else if (tok.rfind("prefactor=", 0) == 0) pre = std::stod(tok.substr(10));
      else if (tok.rfind("L_max=", 0) == 0) L = std::stoi(tok.substr(6));
      else if (tok.rfind("N_max=", 0) == 0) N = std::stoi(tok.substr(6));
    }
  }
  if (!std::getline(is, line) || line != "l,n,mu,coefficient")
    throw std::runtime_error("read_coeff_table: missing column header");
  CoeffVec c(gamma, pre, Truncation{L, N});
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    int l, n, mu;
    double v;
    if (std::sscanf(line.c_str(), "%d,%d,%d,%lf", &l, &n, &mu, &v) != 4)
      throw std::runtime_error("read_coeff_table: malformed row '" + line + "'");
    c.set(BasisIndex{l, n, mu}, v);
  }
  if (alpha_out) *alpha_out = alpha;
  return c;
}

}  // namespace diskfrac

#endif  // DISKFRAC_BASIS_HPP_
