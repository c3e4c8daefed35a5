#pragma once

// Independent reference computations used as oracles by the unit tests.
// They favour plain enumeration over anything the library does internally.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "hiring/instances.hpp"
#include "hiring/policy_types.hpp"

namespace support {

using namespace hiring;

/// Expected reward of a committed order by enumerating every realization of
/// values and acceptance coins along the order.
inline double enumerate_committed(const ProbeTopKInstance& inst, const CommittedOrderPolicy& pol) {
  const std::size_t steps = std::min<std::size_t>(pol.order.size(), inst.T());
  std::function<double(std::size_t, int)> go = [&](std::size_t t, int hires) -> double {
    if (t == steps || hires == inst.k()) return 0.0;
    const int i = pol.order[t];
    const auto& d = inst.distribution(i);
    double total = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      const double q = d.probs()[j];
      const double a = pol.accept_prob[i][j];
      if (a > 0.0) total += q * a * (d.support()[j] + go(t + 1, hires + 1));
      if (a < 1.0) total += q * (1.0 - a) * go(t + 1, hires);
    }
    return total;
  };
  return go(0, 0);
}

/// Count distribution of independent Bernoulli trials by enumerating 2^n outcomes.
inline std::vector<double> enumerate_counts(const std::vector<double>& probs) {
  const std::size_t n = probs.size();
  std::vector<double> dist(n + 1, 0.0);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double pr = 1.0;
    for (std::size_t i = 0; i < n; ++i) pr *= (mask >> i) & 1u ? probs[i] : 1.0 - probs[i];
    dist[__builtin_popcount(mask)] += pr;
  }
  return dist;
}

/// Sequential LP optimum through its two-variable dual: the dual objective
/// T a + k b + sum_i max(0, v_i p_i - a - p_i b) is convex piecewise linear on
/// a, b >= 0, so its minimum sits at an intersection of two breakpoint lines.
inline double seq_lp_by_dual(const SeqInstance& inst) {
  struct Line {
    double ca, cb, rhs;  // ca a + cb b = rhs
  };
  std::vector<Line> lines{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
  for (int i = 0; i < inst.n(); ++i) {
    lines.push_back({1.0, inst.p()[i], inst.v()[i] * inst.p()[i]});
  }
  const auto dual = [&](double a, double b) {
    double out = inst.T() * a + inst.k() * b;
    for (int i = 0; i < inst.n(); ++i) {
      out += std::max(0.0, inst.v()[i] * inst.p()[i] - a - inst.p()[i] * b);
    }
    return out;
  };
  double best = dual(0.0, 0.0);
  for (std::size_t x = 0; x < lines.size(); ++x) {
    for (std::size_t y = x + 1; y < lines.size(); ++y) {
      const auto& l1 = lines[x];
      const auto& l2 = lines[y];
      const double det = l1.ca * l2.cb - l1.cb * l2.ca;
      if (std::abs(det) < 1e-14) continue;
      const double a = (l1.rhs * l2.cb - l1.cb * l2.rhs) / det;
      const double b = (l1.ca * l2.rhs - l1.rhs * l2.ca) / det;
      if (a < -1e-12 || b < -1e-12) continue;
      best = std::min(best, dual(std::max(a, 0.0), std::max(b, 0.0)));
    }
  }
  return best;
}

/// Best adaptive value when offers must follow `order`, by plain recursion
/// without memoization.
inline double adaptive_in_order(const SeqInstance& inst, const std::vector<int>& order) {
  std::function<double(std::size_t, int, int)> go = [&](std::size_t pos, int l, int t) -> double {
    if (pos == order.size() || l == 0 || t == 0) return 0.0;
    const int i = order[pos];
    const double p = inst.p()[i];
    const double offer = p * (inst.v()[i] + go(pos + 1, l - 1, t - 1)) + (1.0 - p) * go(pos + 1, l, t - 1);
    return std::max(offer, go(pos + 1, l, t));
  };
  return go(0, inst.k(), inst.T());
}

/// Exact simultaneous-offering value of a subset by enumerating acceptances.
inline double enumerate_sim_subset(const SimInstance& inst, const std::vector<int>& offers) {
  double total = 0.0;
  const std::size_t m = offers.size();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    double pr = 1.0, reward = 0.0;
    int hired = 0;
    for (std::size_t t = 0; t < m; ++t) {
      const int i = offers[t];
      if ((mask >> t) & 1u) {
        pr *= inst.p()[i];
        reward += inst.v()[i];
        ++hired;
      } else {
        pr *= 1.0 - inst.p()[i];
      }
    }
    total += pr * (reward - std::max(hired - inst.k(), 0));
  }
  return total;
}

}  // namespace support
