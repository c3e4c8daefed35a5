#pragma once

// Guarantee constants: truncated Poisson means, the ProbeTop-k factor and the
// simultaneous-offering constants alpha and beta.

#include <span>
#include <vector>

namespace hiring {

struct GuaranteeConstants {
  int k = 1;
  double tau = 0.0;
  double s_alpha = 0.0;
  double s_beta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double threshold = 0.0;
};

/// P(Pois(lambda) = j).
double poisson_pmf(double lambda, int j);
/// P(Pois(lambda) >= k).
double poisson_upper_tail(double lambda, int k);
/// E[min(Pois(lambda), k)].
double poisson_truncated_mean(double lambda, int k);

/// 1 - e^{-k} k^k / k!.
double guarantee_ptk(int k);

/// P(Pois(k) >= k): largest tau for which the truncation parameter stays <= 1.
double tightness_threshold(int k);

/// s - s/tau + E[min(Pois(sk), k)] / (tau k).
double truncation_objective(int k, double tau, double s);

/// Root in s of P(Pois(sk) >= k) = tau, found by bracketing and bisection.
double foc_root(int k, double tau);

struct ConstantValue {
  double value;
  double s;
};

ConstantValue alpha(int k, double tau);
ConstantValue beta(int k, double tau);

GuaranteeConstants guarantee_constants(int k, double tau);

/// One row per (k, tau) with tau = step, 2 step, ... below 1.
std::vector<GuaranteeConstants> alpha_beta_table(std::span<const int> ks, double step);

}  // namespace hiring
