#pragma once

// Exhaustive optimal values for small instances. Each oracle enforces a size
// cap and throws SizeCapExceeded beyond it.

#include <vector>

#include "hiring/instances.hpp"
#include "hiring/policy_types.hpp"

namespace hiring {

struct PtkOracleCaps {
  static constexpr int max_n = 8;
  static constexpr int max_support = 4;
  static constexpr int max_k = 3;
};
inline constexpr int kSeqOracleMaxN = 15;
inline constexpr int kSimOracleMaxN = 20;
struct ParOracleCaps {
  static constexpr int max_n = 8;
  static constexpr int max_k = 2;
  static constexpr int max_T = 3;
};

/// Optimal adaptive, non-committed ProbeTop-k value.
double opt_ptk_bruteforce(const ProbeTopKInstance& instance);

/// Optimal adaptive sequential-offering value.
double opt_seq_bruteforce(const SeqInstance& instance);

struct SimOptimum {
  double value = 0.0;
  std::vector<int> subset;
};
/// Best deterministic offer set.
SimOptimum opt_sim_bruteforce(const SimInstance& instance);

struct ParOptimum {
  double value = 0.0;
  OfferLists lists;
};
/// Best disjoint ordered lists (non-adaptive).
ParOptimum opt_par_nonadaptive_bruteforce(const ParInstance& instance);

}  // namespace hiring
