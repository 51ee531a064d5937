// Special-function tests: log-gamma accuracy, gamma ratios, Jacobi polynomial
// recurrence against an independent series oracle, and the closed-form norms
// against Gauss-Jacobi quadrature.

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "diskfrac/quadrature.hpp"
#include "diskfrac/specfun.hpp"

using namespace diskfrac;
using Catch::Approx;

namespace {

// Series definition of P_n^{(a,b)} through the regularized hypergeometric
// sum, evaluated independently of the library (std::lgamma / std::tgamma).
// The parameter flip P_n^{(a,b)}(-t) = (-1)^n P_n^{(b,a)}(t) keeps the
// expansion variable at most 1/2 so the alternating sum stays benign.
double jacobi_series_oracle(int n, double a, double b, double t) {
  if (n < 0) return 0.0;
  if (t < 0.0) return ((n % 2 == 0) ? 1.0 : -1.0) * jacobi_series_oracle(n, b, a, -t);
  const double z = 0.5 * (1.0 - t);
  double sum = 0.0;
  double poch1 = 1.0, poch2 = 1.0, zk = 1.0, kfact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      poch1 *= -double(n) + (k - 1);
      poch2 *= n + a + b + k;
      zk *= z;
      kfact *= k;
    }
    sum += poch1 * poch2 / (kfact * std::tgamma(a + 1.0 + k)) * zk;
  }
  return std::exp(std::lgamma(a + 1.0 + n) - std::lgamma(n + 1.0)) * sum;
}

}  // namespace

TEST_CASE("ln_gamma matches reference values", "[specfun]") {
  CHECK(ln_gamma(1.0) == Approx(0.0).margin(1e-15));
  CHECK(ln_gamma(5.0) == Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(ln_gamma(0.5) == Approx(0.5 * std::log(kPi)).epsilon(1e-14));
  CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(ln_gamma(-2.5), std::domain_error);
}

TEST_CASE("ln_gamma relative accuracy across [1e-3, 1e7]", "[specfun]") {
  // std::lgamma (glibc) is accurate to a few ulp and serves as the oracle
  for (double x = 1e-3; x <= 1.0e7; x *= 1.77) {
    const double ref = std::lgamma(x);
    const double got = ln_gamma(x);
    if (std::abs(ref) < 1e-12) {
      CHECK(std::abs(got - ref) < 1e-13);
    } else {
      CHECK(got == Approx(ref).epsilon(1e-13));
    }
  }
}

TEST_CASE("gamma_ratio basic values", "[specfun]") {
  CHECK(gamma_ratio({{3.0}, {2.0}}) == Approx(2.0).epsilon(1e-14));
  CHECK(gamma_ratio({{1.5, 1.5}, {1.0, 1.0}}) == Approx(kPi / 4.0).epsilon(1e-14));
  // no overflow with large arguments
  const double big = gamma_ratio({{1e6 + 0.75}, {1e6}});
  CHECK(std::isfinite(big));
  CHECK(big == Approx(std::pow(1e6, 0.75)).epsilon(1e-6));
}

TEST_CASE("asymptotic gamma ratio approaches n^sigma scaling", "[specfun]") {
  // G(n+sigma)/(G(n) n^sigma) = 1 + sigma(sigma-1)/(2n) + O(1/n^2); at
  // n = 4e6 the correction stays below 1e-6 across sigma in [-2, 2].
  for (double n : {4.0e6, 1.0e7}) {
    for (double sigma = -2.0; sigma <= 2.0 + 1e-9; sigma += 0.25) {
      const double r = std::exp(ln_gamma(n + sigma) - ln_gamma(n) - sigma * std::log(n));
      CHECK(std::abs(r - 1.0) <= 1e-6);
    }
  }
  // the grid point quoted with the operator asymptotics
  const double r = std::exp(ln_gamma(1e6 + 0.75) - ln_gamma(1e6) - 0.75 * std::log(1e6));
  CHECK(std::abs(r - 1.0) <= 1e-6);
}

TEST_CASE("jacobi_eval boundary and low-order values", "[specfun]") {
  CHECK(jacobi_eval(0, 0.75, 3.0, -0.2) == 1.0);
  CHECK(jacobi_eval(-1, 0.0, 0.0, 0.5) == 0.0);
  CHECK(jacobi_eval(-3, 0.5, 1.0, 0.5) == 0.0);
  CHECK(jacobi_eval(1, 0.0, 0.0, 0.3) == Approx(0.3).epsilon(1e-15));
  // P_1^{(a,b)}(t) = ((a+b+2) t + (a-b))/2
  CHECK(jacobi_eval(1, 0.75, 3.0, 0.4) == Approx((4.75 * 0.4 + (0.75 - 3.0)) / 2.0).epsilon(1e-14));
  // value at t = 1 is G(n+a+1)/(n! G(a+1))
  const double expect = std::exp(std::lgamma(2 + 0.75 + 1) - std::lgamma(3.0) - std::lgamma(1.75));
  CHECK(jacobi_eval(2, 0.75, 3.0, 1.0) == Approx(expect).epsilon(1e-13));
  CHECK_THROWS_AS(jacobi_eval(2, -1.5, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(jacobi_eval(2, 0.0, -1.0, 0.0), std::domain_error);
}

TEST_CASE("jacobi recurrence agrees with the series definition", "[specfun]") {
  const std::vector<double> params = {-0.25, 0.0, 0.5, 0.75, 1.0, 3.0};
  const std::vector<double> ts = {-1.0, -0.9, -0.5, -0.2, 0.0, 0.3, 0.7, 1.0};
  for (double a : params)
    for (double b : params)
      for (int n : {1, 2, 3, 5, 8, 13, 21, 34, 50})
        for (double t : ts) {
          const double rec = jacobi_eval(n, a, b, t);
          const double ser = jacobi_series_oracle(n, a, b, t);
          CHECK(std::abs(rec - ser) <= 1e-11 * std::max(1.0, std::abs(ser)));
        }
}

TEST_CASE("jacobi_norm closed form", "[specfun]") {
  CHECK(jacobi_norm(0, 0.0, 0.0) == Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(jacobi_norm_sq(2, -1.0, 0.0), std::domain_error);

  // quadrature oracle: integrate (1-t)^a (1+t)^b P_n^2 with a Gauss-Jacobi
  // rule built by the independent Golub-Welsch path
  const double a = 0.75, b = 2.0;
  const auto rule = gauss_jacobi_rule(16, a, b);
  for (int n : {0, 1, 3, 7, 12, 30}) {
    double q = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double p = jacobi_eval(n, a, b, rule.nodes[k]);
      q += rule.weights[k] * p * p;
    }
    const auto big = gauss_jacobi_rule(40, a, b);
    if (n > 12) {
      q = 0.0;
      for (std::size_t k = 0; k < big.nodes.size(); ++k) {
        const double p = jacobi_eval(n, a, b, big.nodes[k]);
        q += big.weights[k] * p * p;
      }
    }
    CHECK(jacobi_norm_sq(n, a, b) == Approx(q).epsilon(1e-10));
  }
}

TEST_CASE("jacobi orthogonality under the matching weight", "[specfun]") {
  const double a = 0.75, b = 2.0;
  const auto rule = gauss_jacobi_rule(24, a, b);
  for (int n = 0; n <= 6; ++n)
    for (int m = 0; m < n; ++m) {
      double q = 0.0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        q += rule.weights[k] * jacobi_eval(n, a, b, rule.nodes[k]) * jacobi_eval(m, a, b, rule.nodes[k]);
      CHECK(std::abs(q) <= 1e-10 * jacobi_norm(n, a, b) * jacobi_norm(m, a, b));
    }
}
