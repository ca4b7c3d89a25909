#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tailscope/errors.hpp"
#include "tailscope/family.hpp"

namespace tailscope {

// Root x of x^(1/beta) / ln x = (ln v)^(1/beta) on the increasing branch
// x > e^beta, by bisection to relative tolerance 1e-12. Requires v > e and a
// bracket [e^beta, 4 ln(v) (2 ln ln v)^beta] that straddles the root
// (NoBracketError otherwise).
double ne_root(double beta, double v);

// One of the four canonical ("tonic") tail families on {k0, k0+1, ...}:
//   Power           p_k = c k^-lambda                          lambda > 1
//   SubExponential  p_k = c exp(-lambda k^alpha)               0 < alpha < 1
//   NearExponential p_k = c exp(-lambda (k+1) / ln(k+1)^beta)  beta > 0
//   Exponential     p_k = c exp(-lambda k)
// The near-exponential kernel shifts its argument by one so that k = 1 is
// well defined. The normalizing constant c and the inverse-CDF sampling
// table are computed once at construction; instances are immutable and safe
// to share across threads.
class TonicDistribution {
 public:
  enum class Kind { Power, SubExponential, NearExponential, Exponential };

  static TonicDistribution power(double lambda, std::int64_t k0 = 1);
  static TonicDistribution sub_exponential(double lambda, double alpha, std::int64_t k0 = 1);
  static TonicDistribution near_exponential(double lambda, double beta, std::int64_t k0 = 1);
  static TonicDistribution exponential(double lambda, std::int64_t k0 = 1);

  // Spec strings: "power:lambda=2", "subexp:lambda=1,alpha=0.5",
  // "nearexp:lambda=1,beta=2", "exp:lambda=1".
  static TonicDistribution parse(std::string_view spec);
  std::string spec_string() const;

  Kind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::int64_t k0() const { return k0_; }

  // Tail class this distribution belongs to.
  TailFamily family() const;

  // Cached normalizing constant (computed at construction to 1e-12).
  double c() const { return c_; }

  // Recomputes 1 / sum(kernel) with a certified tail bound < tol on the
  // kernel sum. NonConvergentError if the kernel sum diverges.
  double normalizing_constant(double tol) const;

  // Probability of symbol k; OutOfSupportError for k < k0.
  double pmf(std::int64_t k) const;

  // Exact tail index tau_v = v * sum_k p_k (1-p_k)^v with truncation error
  // below tol. Power tails are accelerated with a binomial-moment expansion
  // of the remainder; the other kernels decay fast enough for direct
  // summation with analytic tail majorants.
  double exact_tau(std::int64_t v, double tol = 1e-10) const;

  // n i.i.d. draws; the same (parameters, n, seed) produce the same sequence
  // on every platform. Inverse-CDF over a cached cumulative table; power
  // tails beyond the table are inverted analytically.
  std::vector<std::int64_t> sample(std::int64_t n, std::uint64_t seed) const;

  // Closed-form divergence rate of the tail index:
  //   Power           (c^(1/lambda)/lambda) v^(1/lambda)
  //   SubExponential  (1/alpha) lambda^(-1/alpha) (ln c + ln v)^(1/alpha-1)
  //   NearExponential (ln x_v)^(beta+1) / (ln x_v - beta),
  //                   x_v = ne_root(beta, (c v)^(1/lambda))
  // UnsupportedError for Exponential.
  double asymptotic_rate(double v) const;

 private:
  TonicDistribution(Kind kind, double lambda, double alpha, double beta, std::int64_t k0);

  double kernel(double k) const;
  // Upper bound on sum_{k > K} kernel(k), valid once K is past the kernel's
  // settling point; returns +inf if the bound does not apply yet at K.
  double kernel_tail_bound(double K) const;
  void build_cdf_table();

  Kind kind_;
  double lambda_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  std::int64_t k0_;
  double c_ = 0.0;
  std::vector<double> cdf_;  // cumulative probabilities for k0, k0+1, ...
};

}  // namespace tailscope
