#include "tailscope/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "tailscope/rng.hpp"

namespace tailscope {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Hurwitz zeta tail sum_{m>=0} (a+m)^-s for s > 1, a >= 1, via
// Euler-Maclaurin with a certified remainder below tol. The remainder of the
// truncated expansion is bounded by the first omitted term because the
// integrand is completely monotone.
double hurwitz_zeta_em(double s, double a, double tol) {
  std::int64_t head = 16;
  while (head < (1 << 22)) {
    const double rem = s * (s + 1) * (s + 2) * (s + 3) * (s + 4) *
                       std::pow(a + static_cast<double>(head), -s - 5) / 30240.0;
    if (rem < tol) break;
    head *= 2;
  }
  KahanSum acc;
  for (std::int64_t m = 0; m < head; ++m)
    acc.add(std::pow(a + static_cast<double>(m), -s));
  const double b = a + static_cast<double>(head);
  acc.add(std::pow(b, 1.0 - s) / (s - 1.0));
  acc.add(0.5 * std::pow(b, -s));
  acc.add(s * std::pow(b, -s - 1.0) / 12.0);
  acc.add(-s * (s + 1) * (s + 2) * std::pow(b, -s - 3.0) / 720.0);
  return acc.sum;
}

double parse_positive_real(const std::string& text, const std::string& key) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw InvalidArgumentError("bad value for " + key + ": " + text);
  }
  if (pos != text.size() || !(value > 0.0) || !std::isfinite(value))
    throw InvalidArgumentError("bad value for " + key + ": " + text);
  return value;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  double roundtrip = 0.0;
  std::sscanf(buf, "%lg", &roundtrip);
  // prefer the shortest representation that still round-trips
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    std::sscanf(buf, "%lg", &roundtrip);
    if (roundtrip == x) break;
  }
  return buf;
}

}  // namespace

double ne_root(double beta, double v) {
  if (!(beta > 0.0)) throw InvalidArgumentError("ne_root requires beta > 0");
  if (!(v > std::exp(1.0))) throw InvalidArgumentError("ne_root requires v > e");
  const double target = std::pow(std::log(v), 1.0 / beta);
  const auto f = [beta](double x) { return std::pow(x, 1.0 / beta) / std::log(x); };
  double lo = std::exp(beta);
  double hi = 4.0 * std::log(v) * std::pow(2.0 * std::log(std::log(v)), beta);
  if (!(f(lo) <= target) || !(f(hi) >= target))
    throw NoBracketError("no root bracketed on the increasing branch x > e^beta");
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-12 * lo; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TonicDistribution::TonicDistribution(Kind kind, double lambda, double alpha,
                                     double beta, std::int64_t k0)
    : kind_(kind), lambda_(lambda), alpha_(alpha), beta_(beta), k0_(k0) {
  if (k0_ < 1) throw InvalidArgumentError("support start k0 must be >= 1");
  c_ = normalizing_constant(1e-12);
  build_cdf_table();
}

TonicDistribution TonicDistribution::power(double lambda, std::int64_t k0) {
  if (!(lambda > 1.0))
    throw NonConvergentError("power kernel sum diverges for lambda <= 1");
  return TonicDistribution(Kind::Power, lambda, 0.0, 0.0, k0);
}

TonicDistribution TonicDistribution::sub_exponential(double lambda, double alpha,
                                                     std::int64_t k0) {
  if (!(lambda > 0.0)) throw InvalidArgumentError("sub-exponential requires lambda > 0");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgumentError("sub-exponential requires alpha in (0,1)");
  return TonicDistribution(Kind::SubExponential, lambda, alpha, 0.0, k0);
}

TonicDistribution TonicDistribution::near_exponential(double lambda, double beta,
                                                      std::int64_t k0) {
  if (!(lambda > 0.0)) throw InvalidArgumentError("near-exponential requires lambda > 0");
  if (!(beta > 0.0)) throw InvalidArgumentError("near-exponential requires beta > 0");
  return TonicDistribution(Kind::NearExponential, lambda, 0.0, beta, k0);
}

TonicDistribution TonicDistribution::exponential(double lambda, std::int64_t k0) {
  if (!(lambda > 0.0)) throw InvalidArgumentError("exponential requires lambda > 0");
  return TonicDistribution(Kind::Exponential, lambda, 0.0, 0.0, k0);
}

TailFamily TonicDistribution::family() const {
  switch (kind_) {
    case Kind::Power: return TailFamily::Power;
    case Kind::SubExponential: return TailFamily::SubExponential;
    case Kind::NearExponential: return TailFamily::NearExponential;
    case Kind::Exponential: return TailFamily::ExponentialOrThinner;
  }
  return TailFamily::ExponentialOrThinner;
}

double TonicDistribution::kernel(double k) const {
  switch (kind_) {
    case Kind::Power:
      return std::pow(k, -lambda_);
    case Kind::SubExponential:
      return std::exp(-lambda_ * std::pow(k, alpha_));
    case Kind::NearExponential:
      return std::exp(-lambda_ * (k + 1.0) / std::pow(std::log(k + 1.0), beta_));
    case Kind::Exponential:
      return std::exp(-lambda_ * k);
  }
  return 0.0;
}

double TonicDistribution::kernel_tail_bound(double K) const {
  switch (kind_) {
    case Kind::Power:
      // integral majorant of a decreasing kernel
      return std::pow(K, 1.0 - lambda_) / (lambda_ - 1.0);
    case Kind::SubExponential: {
      // integration by parts of int_K^inf exp(-lambda x^alpha) dx; valid
      // once lambda*alpha*K^alpha exceeds 1-alpha
      const double t = lambda_ * alpha_ * std::pow(K, alpha_);
      if (t <= 1.0 - alpha_) return kInf;
      const double lead =
          std::pow(K, 1.0 - alpha_) * std::exp(-lambda_ * std::pow(K, alpha_)) /
          (lambda_ * alpha_);
      return lead / (1.0 - (1.0 - alpha_) / t);
    }
    case Kind::NearExponential: {
      // once lambda*u/ln(u)^beta dominates sqrt(u) (and stays dominating),
      // the tail is below int exp(-sqrt(u)) du = 2(sqrt(u)+1)exp(-sqrt(u))
      const double u = K + 1.0;
      const double lu = std::log(u);
      if (lu <= 2.0 * beta_) return kInf;
      if (lambda_ * std::sqrt(u) < std::pow(lu, beta_)) return kInf;
      const double su = std::sqrt(u);
      return 2.0 * (su + 1.0) * std::exp(-su);
    }
    case Kind::Exponential:
      return std::exp(-lambda_ * (K + 1.0)) / (1.0 - std::exp(-lambda_));
  }
  return kInf;
}

double TonicDistribution::normalizing_constant(double tol) const {
  if (!(tol > 0.0)) throw InvalidArgumentError("tolerance must be positive");
  if (kind_ == Kind::Power)
    return 1.0 / hurwitz_zeta_em(lambda_, static_cast<double>(k0_), tol);

  KahanSum acc;
  double k = static_cast<double>(k0_);
  for (std::int64_t iter = 0; iter < 50'000'000; ++iter, k += 1.0) {
    acc.add(kernel(k));
    if (kernel_tail_bound(k) < tol) return 1.0 / acc.sum;
  }
  throw NonConvergentError("kernel sum did not reach the requested tolerance");
}

double TonicDistribution::pmf(std::int64_t k) const {
  if (k < k0_) throw OutOfSupportError("symbol below support start k0");
  return c_ * kernel(static_cast<double>(k));
}

double TonicDistribution::exact_tau(std::int64_t v, double tol) const {
  if (v < 1) throw InvalidArgumentError("tail index order v must be >= 1");
  if (!(tol > 0.0)) throw InvalidArgumentError("tolerance must be positive");
  const double vd = static_cast<double>(v);
  const double tol_zeta = tol / vd;

  if (kind_ == Kind::Power) {
    // Head sum to K with v*p_K small, then the tail expanded in binomial
    // moments: sum_{k>K} p (1-p)^v = sum_j (-1)^j C(v,j) c^{j+1} H_j with
    // H_j the Hurwitz tail of order lambda*(j+1). The alternating terms
    // shrink geometrically, so the first omitted term bounds the remainder.
    double K = std::max({4000.0, std::ceil(std::pow(50.0 * vd * c_, 1.0 / lambda_)),
                         static_cast<double>(k0_) + 1000.0});
    KahanSum head;
    for (double k = static_cast<double>(k0_); k <= K; k += 1.0) {
      const double p = c_ * std::pow(k, -lambda_);
      head.add(p * std::exp(vd * std::log1p(-p)));
    }
    const double a = K + 1.0;
    KahanSum tail;
    double h_prev = hurwitz_zeta_em(lambda_, a, 1e-16 * std::pow(a, 1.0 - lambda_));
    double magnitude = c_ * h_prev;
    double sign = 1.0;
    for (std::int64_t j = 0;; ++j) {
      tail.add(sign * magnitude);
      if (magnitude < 0.01 * tol_zeta || j >= v || j > 200) break;
      const double s_next = lambda_ * static_cast<double>(j + 2);
      const double h_next =
          hurwitz_zeta_em(s_next, a, 1e-16 * std::pow(a, 1.0 - s_next) + 1e-300);
      const double next =
          magnitude * c_ * (vd - static_cast<double>(j)) / static_cast<double>(j + 1) *
          (h_prev > 0.0 ? h_next / h_prev : 0.0);
      if (next >= magnitude)
        throw NonConvergentError("tail moment expansion failed to contract");
      magnitude = next;
      h_prev = h_next;
      sign = -sign;
    }
    return vd * (head.sum + tail.sum);
  }

  KahanSum acc;
  double k = static_cast<double>(k0_);
  for (std::int64_t iter = 0; iter < 50'000'000; ++iter, k += 1.0) {
    const double p = c_ * kernel(k);
    acc.add(p * std::exp(vd * std::log1p(-p)));
    if (c_ * kernel_tail_bound(k) < tol_zeta) return vd * acc.sum;
  }
  throw NonConvergentError("tail index sum did not reach the requested tolerance");
}

void TonicDistribution::build_cdf_table() {
  constexpr double kTargetMass = 1.0 - 1e-10;
  constexpr std::size_t kMaxEntries = 1'000'000;
  KahanSum mass;
  cdf_.clear();
  double k = static_cast<double>(k0_);
  while (true) {
    mass.add(c_ * kernel(k));
    cdf_.push_back(mass.sum);
    if (mass.sum >= kTargetMass || cdf_.size() >= kMaxEntries) break;
    k += 1.0;
  }
}

std::vector<std::int64_t> TonicDistribution::sample(std::int64_t n, std::uint64_t seed) const {
  if (n < 1) throw InvalidArgumentError("sample size must be positive");
  Xoshiro256pp rng(seed);
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n));
  const double table_mass = cdf_.back();
  const std::int64_t last = k0_ + static_cast<std::int64_t>(cdf_.size()) - 1;
  for (std::int64_t i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    if (u < table_mass) {
      const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
      out.push_back(k0_ + static_cast<std::int64_t>(it - cdf_.begin()));
    } else if (kind_ == Kind::Power) {
      // invert the analytic tail mass c k^(1-lambda)/(lambda-1)
      const double x =
          std::pow(c_ / ((lambda_ - 1.0) * (1.0 - u)), 1.0 / (lambda_ - 1.0));
      const double clamped = std::min(x, 4e18);
      out.push_back(std::max<std::int64_t>(last + 1, std::llround(clamped)));
    } else {
      out.push_back(last + 1);  // residual mass below 1e-10
    }
  }
  return out;
}

double TonicDistribution::asymptotic_rate(double v) const {
  if (!(v > 0.0)) throw InvalidArgumentError("rate requires v > 0");
  switch (kind_) {
    case Kind::Power:
      return std::pow(c_, 1.0 / lambda_) / lambda_ * std::pow(v, 1.0 / lambda_);
    case Kind::SubExponential: {
      const double lncv = std::log(c_) + std::log(v);
      if (!(lncv > 0.0))
        throw InvalidArgumentError("rate requires ln(c v) > 0");
      return std::pow(lambda_, -1.0 / alpha_) / alpha_ *
             std::pow(lncv, 1.0 / alpha_ - 1.0);
    }
    case Kind::NearExponential: {
      const double x = ne_root(beta_, std::pow(c_ * v, 1.0 / lambda_));
      const double lx = std::log(x);
      return std::pow(lx, beta_ + 1.0) / (lx - beta_);
    }
    case Kind::Exponential:
      throw UnsupportedError("no divergence rate: exponential profiles stay bounded");
  }
  throw UnsupportedError("unknown kind");
}

TonicDistribution TonicDistribution::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw InvalidArgumentError("distribution spec must look like family:key=value[,...]");
  const std::string name(spec.substr(0, colon));
  std::string rest(spec.substr(colon + 1));

  double lambda = 0.0, alpha = 0.0, beta = 0.0;
  bool saw_lambda = false, saw_alpha = false, saw_beta = false;
  std::size_t pos = 0;
  while (pos < rest.size()) {
    auto comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    const std::string item = rest.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw InvalidArgumentError("expected key=value in distribution spec: " + item);
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "lambda") {
      lambda = parse_positive_real(value, key);
      saw_lambda = true;
    } else if (key == "alpha") {
      alpha = parse_positive_real(value, key);
      saw_alpha = true;
    } else if (key == "beta") {
      beta = parse_positive_real(value, key);
      saw_beta = true;
    } else {
      throw InvalidArgumentError("unknown distribution parameter: " + key);
    }
    pos = comma + 1;
  }
  if (!saw_lambda) throw InvalidArgumentError("distribution spec needs lambda");

  if (name == "power") {
    if (saw_alpha || saw_beta) throw InvalidArgumentError("power takes only lambda");
    return power(lambda);
  }
  if (name == "subexp") {
    if (!saw_alpha || saw_beta) throw InvalidArgumentError("subexp takes lambda and alpha");
    return sub_exponential(lambda, alpha);
  }
  if (name == "nearexp") {
    if (!saw_beta || saw_alpha) throw InvalidArgumentError("nearexp takes lambda and beta");
    return near_exponential(lambda, beta);
  }
  if (name == "exp") {
    if (saw_alpha || saw_beta) throw InvalidArgumentError("exp takes only lambda");
    return exponential(lambda);
  }
  throw InvalidArgumentError("unknown distribution family: " + name);
}

std::string TonicDistribution::spec_string() const {
  switch (kind_) {
    case Kind::Power:
      return "power:lambda=" + format_real(lambda_);
    case Kind::SubExponential:
      return "subexp:lambda=" + format_real(lambda_) + ",alpha=" + format_real(alpha_);
    case Kind::NearExponential:
      return "nearexp:lambda=" + format_real(lambda_) + ",beta=" + format_real(beta_);
    case Kind::Exponential:
      return "exp:lambda=" + format_real(lambda_);
  }
  return "?";
}

}  // namespace tailscope
