#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

// Statistical kernels: regularized incomplete beta and its inverse, binomial
// pmf/cdf, Student-t quantiles. These are the only nontrivial numerics in the
// library; everything else reduces to them.
//
// Accuracy targets: reg_inc_beta to ~1e-12 absolute, inv_reg_inc_beta to a
// residual of ~1e-10 or better. Tail probabilities are assembled in log space
// so trial counts up to 10^6 do not underflow.

namespace saa {

// Number of Bernoulli trials plus the per-trial success probability.
struct BinomialSpec {
  int trials = 0;
  double success_prob = 0.0;
};

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the incomplete beta function, evaluated with the
// modified Lentz algorithm (Numerical Recipes 6.4). Converges quickly for
// x < (a+1)/(a+b+2); callers apply the symmetry switch.
inline double beta_cont_fraction(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 3e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

inline double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline void check_binomial(const BinomialSpec& spec) {
  require(spec.trials >= 0, "binomial trials must be nonnegative");
  require(spec.success_prob >= 0.0 && spec.success_prob <= 1.0,
          "binomial success probability outside [0,1]");
}

}  // namespace detail

// Regularized incomplete beta function I_x(a,b).
// https://en.wikipedia.org/wiki/Beta_function#Incomplete_beta_function
inline double reg_inc_beta(double x, double a, double b) {
  detail::require(a > 0.0 && b > 0.0, "beta shape parameters must be positive");
  detail::require(x >= 0.0 && x <= 1.0, "beta argument outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - detail::log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * detail::beta_cont_fraction(x, a, b) / a;
  return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) -
                        detail::log_beta(b, a)) *
                   detail::beta_cont_fraction(1.0 - x, b, a) / b;
}

// Inverse of reg_inc_beta in x: smallest x with I_x(a,b) = q. Bracketed
// bisection refined by Newton steps; the bracket guarantees convergence
// without quantile-approximation seeds.
inline double inv_reg_inc_beta(double q, double a, double b) {
  detail::require(a > 0.0 && b > 0.0, "beta shape parameters must be positive");
  detail::require(q >= 0.0 && q <= 1.0, "beta quantile outside [0,1]");
  if (q == 0.0) return 0.0;
  if (q == 1.0) return 1.0;
  const double log_beta_ab = detail::log_beta(a, b);
  double lo = 0.0, hi = 1.0;
  double x = a / (a + b);
  for (int it = 0; it < 300; ++it) {
    const double f = reg_inc_beta(x, a, b) - q;
    if (f == 0.0) return x;
    (f > 0.0 ? hi : lo) = x;
    // Newton step using the beta density as the derivative.
    const double pdf = std::exp((a - 1.0) * std::log(x) +
                                (b - 1.0) * std::log1p(-x) - log_beta_ab);
    double nx = (pdf > 0.0 && std::isfinite(pdf))
                    ? x - f / pdf
                    : std::numeric_limits<double>::quiet_NaN();
    if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
    if (hi - lo < 4.0 * std::numeric_limits<double>::epsilon() * x &&
        std::fabs(f) < 1e-14)
      break;
    x = nx;
  }
  return x;
}

// P(Bin(N,p) = k), computed in log space.
inline double binom_pmf(const BinomialSpec& spec, int k) {
  detail::check_binomial(spec);
  detail::require(k >= 0 && k <= spec.trials, "binomial pmf index out of range");
  const int n = spec.trials;
  const double p = spec.success_prob;
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  return std::exp(detail::log_choose(n, k) + k * std::log(p) +
                  (n - k) * std::log1p(-p));
}

// P(Bin(N,p) <= k). Any integer k is accepted: k < 0 gives 0, k >= N gives 1.
// Summation runs over whichever tail is shorter; the Beta identity
// P(Bin(N,p) <= k) = I_{1-p}(N-k, k+1) is left to reg_inc_beta so the two
// routes stay independently checkable.
inline double binom_cdf(const BinomialSpec& spec, int k) {
  detail::check_binomial(spec);
  const int n = spec.trials;
  const double p = spec.success_prob;
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double lgn = std::lgamma(n + 1.0);
  const auto term = [&](int j) {
    return std::exp(lgn - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) +
                    j * log_p + (n - j) * log_q);
  };
  double sum = 0.0;
  if (k + 1 <= n - k) {
    for (int j = 0; j <= k; ++j) sum += term(j);
    return sum < 1.0 ? sum : 1.0;
  }
  for (int j = k + 1; j <= n; ++j) sum += term(j);
  const double cdf = 1.0 - sum;
  return cdf > 0.0 ? cdf : 0.0;
}

// q-quantile of Student's t with dof degrees of freedom, via the incomplete
// beta inverse: for t >= 0, 1 - F(t) = I_x(dof/2, 1/2) / 2 at x = dof/(dof+t^2).
inline double student_t_quantile(double q, int dof) {
  detail::require(dof >= 1, "degrees of freedom must be positive");
  detail::require(q > 0.0 && q < 1.0, "t quantile level must be inside (0,1)");
  if (q == 0.5) return 0.0;
  if (q < 0.5) return -student_t_quantile(1.0 - q, dof);
  const double x = inv_reg_inc_beta(2.0 * (1.0 - q), dof / 2.0, 0.5);
  if (x <= 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(dof * (1.0 - x) / x);
}

}  // namespace saa
