#include "hiring/constants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hiring/error.hpp"

namespace hiring {
namespace {

constexpr double kStopRatio = 1e-18;

void check_k(int k) {
  if (k < 1) throw InvalidInput("k must be at least 1, got " + std::to_string(k));
}

void check_tau(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidInput("tau must lie in (0,1)");
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidInput("Poisson mean must be finite and nonnegative");
  }
}

// Sum of pmf(j) for j < k, accumulated downward from the largest term.
double lower_sum(double lambda, int k) {
  double sum = 0.0;
  for (int j = k - 1; j >= 0; --j) {
    const double term = poisson_pmf(lambda, j);
    sum += term;
    if (static_cast<double>(j) < lambda && term < kStopRatio * sum) break;
  }
  return sum;
}

// Sum of pmf(j) for j >= k.
double upper_sum(double lambda, int k) {
  double sum = 0.0;
  for (int j = k;; ++j) {
    const double term = poisson_pmf(lambda, j);
    sum += term;
    if (static_cast<double>(j) > lambda && term <= kStopRatio * sum) break;
    if (term == 0.0 && static_cast<double>(j) > lambda) break;
  }
  return sum;
}

}  // namespace

double poisson_pmf(double lambda, int j) {
  check_lambda(lambda);
  if (j < 0) return 0.0;
  if (lambda == 0.0) return j == 0 ? 1.0 : 0.0;
  return std::exp(-lambda + j * std::log(lambda) - std::lgamma(j + 1.0));
}

double poisson_upper_tail(double lambda, int k) {
  check_lambda(lambda);
  if (k <= 0) return 1.0;
  if (lambda == 0.0) return 0.0;
  // Sum whichever side is the smaller tail and complement.
  if (static_cast<double>(k) > lambda) return upper_sum(lambda, k);
  return 1.0 - lower_sum(lambda, k);
}

double poisson_truncated_mean(double lambda, int k) {
  check_lambda(lambda);
  check_k(k);
  double head = 0.0;
  for (int j = 1; j < k; ++j) head += j * poisson_pmf(lambda, j);
  return head + k * poisson_upper_tail(lambda, k);
}

double guarantee_ptk(int k) {
  check_k(k);
  return 1.0 - std::exp(-k + k * std::log(static_cast<double>(k)) - std::lgamma(k + 1.0));
}

double tightness_threshold(int k) {
  check_k(k);
  return poisson_upper_tail(k, k);
}

double truncation_objective(int k, double tau, double s) {
  check_k(k);
  check_tau(tau);
  if (!(s >= 0.0)) throw InvalidInput("truncation parameter must be nonnegative");
  return s - s / tau + poisson_truncated_mean(s * k, k) / (tau * k);
}

double foc_root(int k, double tau) {
  check_k(k);
  check_tau(tau);
  auto residual = [&](double s) { return poisson_upper_tail(s * k, k) - tau; };
  double lo = 1e-12;
  double hi = 1.0;
  if (residual(lo) >= 0.0) return lo;
  while (residual(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw SolverError("FOC bracket did not close");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ConstantValue beta(int k, double tau) {
  const double s = foc_root(k, tau);
  return {truncation_objective(k, tau, s), s};
}

ConstantValue alpha(int k, double tau) {
  const double s = std::min(foc_root(k, tau), 1.0);
  return {truncation_objective(k, tau, s), s};
}

GuaranteeConstants guarantee_constants(int k, double tau) {
  GuaranteeConstants g;
  g.k = k;
  g.tau = tau;
  const auto b = beta(k, tau);
  g.s_beta = b.s;
  g.beta = b.value;
  g.s_alpha = std::min(b.s, 1.0);
  g.alpha = truncation_objective(k, tau, g.s_alpha);
  g.threshold = tightness_threshold(k);
  return g;
}

std::vector<GuaranteeConstants> alpha_beta_table(std::span<const int> ks, double step) {
  if (!(step > 0.0 && step < 1.0)) throw InvalidInput("tau step must lie in (0,1)");
  std::vector<GuaranteeConstants> rows;
  const int count = static_cast<int>(std::ceil(1.0 / step - 1e-9)) - 1;
  for (int k : ks) {
    for (int t = 1; t <= count; ++t) rows.push_back(guarantee_constants(k, t * step));
  }
  return rows;
}

}  // namespace hiring
