#pragma once

// Executable policy representations shared by the policy builders and the
// evaluators.

#include <vector>

namespace hiring {

/// Non-adaptive committed policy: interview (or offer to) `order` one at a
/// time, and on observing support point j of candidate i hire with
/// probability accept_prob[i][j]. Stops after T steps or k hires.
struct CommittedOrderPolicy {
  std::vector<int> order;
  std::vector<std::vector<double>> accept_prob;  ///< aligned with each candidate's support
  int k = 1;
  int T = 1;
};

/// One sequential offering list per position, run in parallel. Lists are
/// pairwise disjoint and each holds at most T candidates.
struct OfferLists {
  std::vector<std::vector<int>> lists;
};

/// Independent offer probabilities for simultaneous offering.
struct OfferProbabilities {
  std::vector<double> y_prime;
  double kappa = 0.0;  ///< scaled target mass, sum_i y'_i p_i
  double s = 1.0;      ///< truncation parameter that produced y'
};

}  // namespace hiring
