// Operator stencil tests: eigenvalues, the Riesz action, both gradient maps
// against a centered finite-difference oracle, the test-function map, the
// residual field, and the weak-form eigen-identity with its norm brackets.

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "diskfrac/coeff_ops.hpp"
#include "diskfrac/verify.hpp"

using namespace diskfrac;
using Catch::Approx;

namespace {

CoeffVec random_vec(double gamma, double prefactor, Truncation t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  CoeffVec c(gamma, prefactor, t);
  for (int l = 0; l <= t.L_max; ++l)
    for (int n = 0; n <= t.N_max; ++n)
      for (int mu : {+1, -1}) {
        if (l == 0 && mu == -1) continue;
        c.set({l, n, mu}, dist(rng));
      }
  return c;
}

// centered finite difference of the physical function omega^g * series
double fd_partial(const CoeffVec& u, double x, double y, bool wrt_x, double hstep) {
  auto eval = [&](double xx, double yy) {
    const double r = std::sqrt(xx * xx + yy * yy);
    return u.eval_physical({r, std::atan2(yy, xx)});
  };
  if (wrt_x) return (eval(x + hstep, y) - eval(x - hstep, y)) / (2.0 * hstep);
  return (eval(x, y + hstep) - eval(x, y - hstep)) / (2.0 * hstep);
}

}  // namespace

TEST_CASE("fractional Laplacian eigenvalues", "[coeff_ops]") {
  CHECK(frac_laplacian_eigenvalue({0, 0, +1}, 1.0) == Approx(kPi / 2.0).epsilon(1e-14));
  for (int l : {0, 1, 5})
    for (int n : {0, 2, 9})
      CHECK(frac_laplacian_eigenvalue({l, n, +1}, 2.0) ==
            Approx(4.0 * (n + 1.0) * (n + l + 1.0)).epsilon(1e-13));
  // strictly increasing in n and l
  for (double alpha : {1.2, 1.7}) {
    for (int n = 0; n < 12; ++n)
      CHECK(frac_laplacian_eigenvalue({3, n + 1, +1}, alpha) >
            frac_laplacian_eigenvalue({3, n, +1}, alpha));
    for (int l = 0; l < 12; ++l)
      CHECK(frac_laplacian_eigenvalue({l + 1, 4, +1}, alpha) >
            frac_laplacian_eigenvalue({l, 4, +1}, alpha));
  }
}

TEST_CASE("riesz_scalar action", "[coeff_ops]") {
  // s = 1 is diagonal
  auto [t10, f10] = riesz_scalar({0, 0, +1}, 1.0, 1);
  CHECK(t10 == BasisIndex{0, 0, +1});
  CHECK(f10 == Approx(kPi / 2.0).epsilon(1e-14));

  for (int l : {0, 2, 7})
    for (int n : {0, 3, 11}) {
      auto [t, f] = riesz_scalar({l, n, +1}, 1.5, 1);
      CHECK(t == BasisIndex{l, n, +1});
      const double expect = std::exp(-0.5 * std::log(2.0) + std::lgamma(n + 0.75) +
                                     std::lgamma(n + l + 0.75) - std::lgamma(n + 1.0) -
                                     std::lgamma(n + l + 1.0));
      CHECK(f == Approx(expect).epsilon(1e-13));
      // order-zero limit: the factor telescopes to one
      auto [t2, f2] = riesz_scalar({l, n, +1}, 2.0, 1);
      CHECK(t2 == BasisIndex{l, n, +1});
      CHECK(f2 == Approx(1.0).epsilon(1e-13));
    }

  // s = 0 shifts the radial index up by one and flips the sign
  auto [t0, f0] = riesz_scalar({1, 2, -1}, 1.5, 0);
  CHECK(t0 == BasisIndex{1, 3, -1});
  CHECK(f0 < 0.0);

  CHECK_THROWS_AS(riesz_scalar({0, 0, +1}, 1.5, 2), std::domain_error);
}

TEST_CASE("grad_weighted single-mode stencil", "[coeff_ops]") {
  const double alpha = 1.5, h = alpha / 2.0;
  CoeffVec u(h, h, Truncation{0, 0});
  u.set({0, 0, +1}, 1.0);
  const VecCoeffField U = grad_weighted(u);
  REQUIRE(U.x.size() == 1);
  REQUIRE(U.y.size() == 1);
  CHECK(U.x.get({1, 0, +1}) == Approx(-h).epsilon(1e-15));
  CHECK(U.y.get({1, 0, -1}) == Approx(-h).epsilon(1e-15));
  CHECK(U.x.gamma() == Approx(h - 1.0));
  CHECK(U.x.prefactor_exponent() == Approx(h - 1.0));

  const VecCoeffField Z = grad_weighted(CoeffVec(h, h, Truncation{2, 2}));
  CHECK(Z.x.empty());
  CHECK(Z.y.empty());
}

TEST_CASE("grad_weighted matches finite differences", "[coeff_ops]") {
  for (double alpha : {1.3, 1.7}) {
    const double h = alpha / 2.0;
    const CoeffVec u = random_vec(h, h, Truncation{4, 4}, 91u + std::uint64_t(alpha * 100));
    const VecCoeffField U = grad_weighted(u);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ur(0.05, 0.9), uphi(0.0, 2.0 * kPi);
    double scale = 1.0;
    for (int k = 0; k < 200; ++k) {
      const PolarPoint p{ur(rng), uphi(rng)};
      const double x = p.r * std::cos(p.phi), y = p.r * std::sin(p.phi);
      const double w = std::pow(1.0 - p.r * p.r, h - 1.0);
      const double gx = w * U.x.eval_series(p);
      const double gy = w * U.y.eval_series(p);
      scale = std::max({scale, std::abs(gx), std::abs(gy)});
      CHECK(std::abs(fd_partial(u, x, y, true, 1e-5) - gx) <= 1e-6 * scale);
      CHECK(std::abs(fd_partial(u, x, y, false, 1e-5) - gy) <= 1e-6 * scale);
    }
  }
}

TEST_CASE("sign table against directional differentiation of single harmonics", "[coeff_ops]") {
  // omega^{alpha/2} r^l cos(l phi) and ... sin(l phi) for l <= 3: the mu-keyed
  // sign lookup is exercised channel by channel.
  const double alpha = 1.4, h = alpha / 2.0;
  for (int l = 0; l <= 3; ++l)
    for (int mu : {+1, -1}) {
      if (l == 0 && mu == -1) continue;
      for (int n = 0; n <= 2; ++n) {
        CoeffVec u(h, h, Truncation{l, n});
        u.set({l, n, mu}, 1.0);
        const VecCoeffField U = grad_weighted(u);
        for (const PolarPoint p : {PolarPoint{0.31, 0.7}, PolarPoint{0.77, 4.0}}) {
          const double x = p.r * std::cos(p.phi), y = p.r * std::sin(p.phi);
          const double w = std::pow(1.0 - p.r * p.r, h - 1.0);
          CHECK(std::abs(fd_partial(u, x, y, true, 1e-5) - w * U.x.eval_series(p)) <= 1e-7);
          CHECK(std::abs(fd_partial(u, x, y, false, 1e-5) - w * U.y.eval_series(p)) <= 1e-7);
        }
      }
    }
}

TEST_CASE("grad_unweighted stencil and finite differences", "[coeff_ops]") {
  // p = x: the x-derivative is the constant one, the y-derivative vanishes
  const double gamma = 0.6;
  CoeffVec p(gamma, 0.0, Truncation{1, 0});
  p.set({1, 0, +1}, 1.0);
  const VecCoeffField G = grad_unweighted(p);
  REQUIRE(G.x.size() == 1);
  CHECK(G.x.get({0, 0, +1}) == Approx(2.0).epsilon(1e-15));  // 2 * (1/2) = 1
  CHECK(G.x.eval_series({0.3, 1.1}) == Approx(1.0).epsilon(1e-14));
  CHECK(G.y.empty());

  // constants have zero gradient
  CoeffVec c(gamma, 0.0, Truncation{0, 0});
  c.set({0, 0, +1}, 4.2);
  const VecCoeffField Gc = grad_unweighted(c);
  CHECK(Gc.x.empty());
  CHECK(Gc.y.empty());

  // random expansion against finite differences (no omega prefactor)
  const CoeffVec q = random_vec(gamma, 0.0, Truncation{3, 3}, 1234);
  const VecCoeffField Gq = grad_unweighted(q);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ur(0.05, 0.9), uphi(0.0, 2.0 * kPi);
  for (int k = 0; k < 100; ++k) {
    const PolarPoint pt{ur(rng), uphi(rng)};
    const double x = pt.r * std::cos(pt.phi), y = pt.r * std::sin(pt.phi);
    CHECK(std::abs(fd_partial(q, x, y, true, 1e-5) - Gq.x.eval_series(pt)) <= 1e-6 * 50);
    CHECK(std::abs(fd_partial(q, x, y, false, 1e-5) - Gq.y.eval_series(pt)) <= 1e-6 * 50);
  }
}

TEST_CASE("riesz_grad single mode and order-two limit", "[coeff_ops]") {
  const double alpha = 1.5, h = alpha / 2.0;
  CoeffVec v(h, h, Truncation{0, 0});
  v.set({0, 0, +1}, 1.0);
  const VecCoeffField V = riesz_grad(v, alpha);
  const double c2 = -std::exp((alpha - 2.0) * std::log(2.0) + std::lgamma(1.0 + h) + std::lgamma(h) -
                              std::lgamma(2.0));
  REQUIRE(V.x.size() == 1);
  CHECK(V.x.get({1, 0, +1}) == Approx(c2 * h).epsilon(1e-13));
  CHECK(V.y.get({1, 0, -1}) == Approx(c2 * h).epsilon(1e-13));
  CHECK(V.x.prefactor_exponent() == 0.0);

  // alpha near 2: the Riesz factor approaches one and V approaches U
  const double a2 = 1.999;
  const CoeffVec u = random_vec(a2 / 2.0, a2 / 2.0, Truncation{3, 3}, 77);
  const VecCoeffField U2 = grad_weighted(u);
  const VecCoeffField V2 = riesz_grad(u, a2);
  for (const auto& [i, val] : U2.x.entries())
    CHECK(std::abs(V2.x.get(i) - val) <= 2e-3 * std::abs(val));
}

TEST_CASE("riesz composition route agrees with the direct stencil", "[coeff_ops]") {
  for (double alpha : {1.2, 1.5, 1.8})
    for (auto conv : {RowConvention::storage, RowConvention::compact}) {
      const double h = alpha / 2.0;
      const CoeffVec u = random_vec(h, h, Truncation{4, 4}, 31);
      const VecCoeffField U = grad_weighted(u, conv);
      const VecCoeffField V = riesz_grad(u, alpha, conv);
      // diagonal Riesz action applied to each gradient component
      for (const auto* pair : {&U.x, &U.y}) {
        const CoeffVec& direct = (pair == &U.x) ? V.x : V.y;
        for (const auto& [i, a] : pair->entries()) {
          auto [target, factor] = riesz_scalar(i, alpha, 1);
          CHECK(direct.get(target) == Approx(factor * a).epsilon(1e-12));
        }
      }
    }
}

TEST_CASE("test_map scaling", "[coeff_ops]") {
  // at order two the map factor telescopes to exactly one
  CoeffVec u2(1.0, 1.0, Truncation{3, 3});
  u2.set({2, 1, +1}, 0.7);
  u2.set({0, 3, +1}, -1.1);
  const CoeffVec v2 = test_map(u2, 2.0);
  for (const auto& [i, v] : u2.entries()) CHECK(v2.get(i) == Approx(v).epsilon(1e-13));

  // zero maps to zero
  CHECK(test_map(CoeffVec(0.75, 0.75, Truncation{2, 2}), 1.5).empty());

  // single mode (l,n) = (2,3) at alpha = 1.5
  CoeffVec m(0.75, 0.75, Truncation{2, 3});
  m.set({2, 3, +1}, 1.0);
  const double expect = std::exp(0.5 * std::log(2.0) + std::lgamma(4.0) + std::lgamma(6.0) -
                                 std::lgamma(4.75) - std::lgamma(5.75)) *
                        4.0;
  CHECK(test_map(m, 1.5).get({2, 3, +1}) == Approx(expect).epsilon(1e-13));

  // the weighted variant multiplies by ((n+1)(n+l+1))^s
  CHECK(test_map(m, 1.5, 0.5).get({2, 3, +1}) ==
        Approx(expect * std::pow(4.0 * 6.0, 0.5)).epsilon(1e-13));

  CHECK_THROWS_AS(test_map(CoeffVec(0.6, 0.0, Truncation{1, 1}), 1.5), std::invalid_argument);
}

TEST_CASE("w_residual structure", "[coeff_ops]") {
  const double alpha = 1.5, h = alpha / 2.0;

  // V = U gives the zero field
  const CoeffVec u = random_vec(h, h, Truncation{3, 3}, 8);
  const VecCoeffField U = grad_weighted(u);
  const VecCoeffField W0 = w_residual(U, U);
  CHECK(W0.x.empty());
  CHECK(W0.y.empty());

  // single mode: the residual lives on the (l+1, n) channel only
  for (int l : {1, 2, 5}) {
    CoeffVec m(h, h, Truncation{l, 2});
    m.set({l, 2, +1}, 1.0);
    const VecCoeffField Um = grad_weighted(m, RowConvention::compact);
    const VecCoeffField Vm = riesz_grad(test_map(m, alpha), alpha, RowConvention::compact);
    const VecCoeffField W = w_residual(Um, Vm);
    for (const auto& [i, v] : W.x.entries()) {
      CHECK(i.l == l + 1);
      CHECK(i.n == 2);
    }
    for (const auto& [i, v] : W.y.entries()) {
      CHECK(i.l == l + 1);
      CHECK(i.n == 2);
    }
    CHECK(W.x.size() + W.y.size() > 0);
  }

  // residual-to-gradient bound over random vectors at several orders
  for (double alpha2 : {1.1, 1.5, 1.9}) {
    const double bound = w_bound_constant(alpha2);
    const double h2 = alpha2 / 2.0;
    for (int rep = 0; rep < 100; ++rep) {
      const CoeffVec uu = random_vec(h2, h2, Truncation{6, 6}, 1000 + rep);
      CHECK(verify_detail::w_ratio(uu, alpha2) <= bound + 1e-12);
    }
  }
}

TEST_CASE("weak-form eigen-identity for identity diffusivity", "[coeff_ops]") {
  const double alpha = 1.5, h = alpha / 2.0;
  const Truncation t{6, 6};
  const auto modes = mode_set(t);
  std::vector<VecCoeffField> U(modes.size()), V(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    CoeffVec e(h, h, t);
    e.set(modes[i], 1.0);
    U[i] = grad_weighted(e);
    V[i] = riesz_grad(e, alpha);
  }
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const double b = field_pairing(U[j], V[i]);
      if (i == j) {
        const double expect = frac_laplacian_eigenvalue(modes[i], alpha) * basis_norm_sq(modes[i], h);
        CHECK(b == Approx(expect).epsilon(1e-10));
      } else {
        CHECK(std::abs(b) <= 1e-10 * frac_laplacian_eigenvalue(modes[i], alpha) *
                                 basis_norm_sq(modes[i], h));
      }
    }
}

TEST_CASE("norm-equivalence bracket and attainment", "[coeff_ops]") {
  const double alpha = 1.2;
  const double lo = (9.0 * alpha + 2.0) / 8.0;
  CoeffVec m(alpha / 2.0, alpha / 2.0, Truncation{1, 0});
  m.set({1, 0, +1}, 1.0);
  CHECK(verify_detail::equivalence_ratio(m) == Approx(1.6).epsilon(1e-12));
  CHECK(lo == Approx(1.6));

  for (double a : {1.2, 1.8}) {
    const double lo2 = (9.0 * a + 2.0) / 8.0;
    for (int rep = 0; rep < 50; ++rep) {
      const CoeffVec u = random_vec(a / 2.0, a / 2.0, Truncation{8, 8}, 400 + rep);
      const double r = verify_detail::equivalence_ratio(u);
      CHECK(r >= lo2 - 1e-12);
      CHECK(r < 4.0);
    }
  }
}

TEST_CASE("premultiplied weighted variants keep the bracket and residual bound", "[coeff_ops]") {
  const double alpha = 1.5;
  const double lo = (9.0 * alpha + 2.0) / 8.0;
  const double wb = w_bound_constant(alpha);
  for (double s : {-0.5, 0.5, 1.0})
    for (int rep = 0; rep < 30; ++rep) {
      const CoeffVec u =
          random_vec(alpha / 2.0, alpha / 2.0, Truncation{6, 6}, 7000 + rep).premultiplied(s);
      const double r = verify_detail::equivalence_ratio(u);
      CHECK(r >= lo - 1e-12);
      CHECK(r < 4.0);
      CHECK(verify_detail::w_ratio(u, alpha) <= wb + 1e-12);
    }
}

TEST_CASE("representation mismatches are rejected", "[coeff_ops]") {
  CHECK_THROWS_AS(grad_weighted(CoeffVec(0.75, 0.0, Truncation{1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(riesz_grad(CoeffVec(0.6, 0.6, Truncation{1, 1}), 1.5), std::invalid_argument);
  VecCoeffField A{CoeffVec(0.5, 0.0, {1, 1}), CoeffVec(0.5, 0.0, {1, 1})};
  VecCoeffField B{CoeffVec(0.25, 0.0, {1, 1}), CoeffVec(0.25, 0.0, {1, 1})};
  CHECK_THROWS_AS(w_residual(A, B), std::invalid_argument);
}
