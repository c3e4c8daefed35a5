#include "hiring/policies.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

#include "hiring/constants.hpp"
#include "hiring/error.hpp"
#include "hiring/eval.hpp"

namespace hiring {
namespace {

// Stable sort of `ids` by key descending.
void sort_by_key_desc(std::vector<int>& ids, const std::vector<double>& key) {
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) { return key[a] > key[b]; });
}

std::vector<int> selected(const BinaryVector& bits) {
  std::vector<int> out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<double> seq_derived_values(const SeqInstance& instance) {
  std::vector<double> key(instance.n());
  for (int i = 0; i < instance.n(); ++i) key[i] = instance.p()[i] > 0.0 ? instance.v()[i] : 0.0;
  return key;
}

// Adds unused candidates in value order until `list` holds `length` entries,
// then sorts the whole list by value.
std::vector<int> pad_by_value(std::vector<int> list, std::span<const double> v, int length) {
  std::vector<char> used(v.size(), 0);
  for (int i : list) used[i] = 1;
  for (int i : value_descending_order(v)) {
    if (static_cast<int>(list.size()) >= length) break;
    if (!used[i]) list.push_back(i);
  }
  std::vector<double> key(v.begin(), v.end());
  sort_by_key_desc(list, key);
  return list;
}

std::vector<int> seq_list(const SeqInstance& instance, const BinaryVector& chosen) {
  auto order = selected(chosen);
  sort_by_key_desc(order, seq_derived_values(instance));
  return order;
}

SimChoice best_prefix(const SimInstance& instance, const std::vector<int>& order) {
  TruncatedCount count(instance.k());
  double gain = 0.0;
  double best = 0.0;
  std::size_t best_m = 0;
  for (std::size_t m = 0; m < order.size(); ++m) {
    const int i = order[m];
    gain += instance.v()[i] * instance.p()[i];
    count.add(instance.p()[i]);
    const double value = gain - count.penalty();
    if (value > best) {
      best = value;
      best_m = m + 1;
    }
  }
  SimChoice out;
  out.offers.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_m));
  out.value = eval_sim_exact(instance, out.offers).mean;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ProbeTop-k

CommittedOrderPolicy ptk_policy_from_rounding(const ProbeTopKInstance& instance,
                                              const PtkLpSolution& lp, const BinaryVector& chosen) {
  const int n = instance.n();
  if (chosen.size() != static_cast<std::size_t>(n) || lp.y.size() != chosen.size()) {
    throw InvalidInput("rounding does not match the instance size");
  }
  CommittedOrderPolicy policy;
  policy.k = instance.k();
  policy.T = instance.T();
  policy.accept_prob.resize(n);
  std::vector<double> derived(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto& dist = instance.distribution(i);
    const auto support = dist.support();
    const auto probs = dist.probs();
    auto& row = policy.accept_prob[i];
    row.assign(dist.size(), 0.0);
    double mass = 0.0, weighted = 0.0;
    for (std::size_t j = 0; j < dist.size(); ++j) {
      const double x = lp.x[i][j];
      mass += x;
      weighted += support[j] * x;
      const double denom = lp.y[i] * probs[j];
      if (denom > 0.0) row[j] = std::clamp(x / denom, 0.0, 1.0);
    }
    derived[i] = mass > 0.0 ? weighted / mass : 0.0;
  }
  policy.order = selected(chosen);
  sort_by_key_desc(policy.order, derived);
  if (static_cast<int>(policy.order.size()) > instance.T()) {
    throw SolverError("rounded selection exceeds the interview budget");
  }
  return policy;
}

CommittedOrderPolicy alg_ptk(const ProbeTopKInstance& instance, Rng& rng) {
  const auto lp = solve_lp_ptk(instance);
  return ptk_policy_from_rounding(instance, lp, simple_dr(lp.y, rng));
}

CommittedOrderPolicy alg_ptk_derandomized(const ProbeTopKInstance& instance) {
  const auto lp = solve_lp_ptk(instance);
  std::optional<CommittedOrderPolicy> best;
  double best_value = 0.0;
  for (const auto& outcome : dr_outcomes(lp.y)) {
    auto policy = ptk_policy_from_rounding(instance, lp, outcome.bits);
    const double value = eval_committed_order_exact(instance, policy).mean;
    if (!best || value > best_value) {
      best = std::move(policy);
      best_value = value;
    }
  }
  return std::move(*best);
}

// ---------------------------------------------------------------------------
// Sequential offering

CommittedOrderPolicy seq_order_policy(const SeqInstance& instance, std::vector<int> order) {
  CommittedOrderPolicy policy;
  policy.k = instance.k();
  policy.T = instance.T();
  policy.accept_prob.resize(instance.n());
  for (int i = 0; i < instance.n(); ++i) {
    const auto dist = FiniteDistribution::bernoulli(instance.v()[i], instance.p()[i]);
    auto& row = policy.accept_prob[i];
    row.assign(dist.size(), 0.0);
    for (std::size_t j = 0; j < dist.size(); ++j) row[j] = dist.support()[j] > 0.0 ? 1.0 : 0.0;
  }
  policy.order = std::move(order);
  return policy;
}

CommittedOrderPolicy alg_seq(const SeqInstance& instance, Rng& rng) {
  const auto lp = solve_lp_seq(instance);
  return seq_order_policy(instance, seq_list(instance, simple_dr(lp.y, rng)));
}

CommittedOrderPolicy alg_seq_derandomized(const SeqInstance& instance) {
  const auto lp = solve_lp_seq(instance);
  std::vector<int> best;
  double best_value = -1.0;
  for (const auto& outcome : dr_outcomes(lp.y)) {
    auto list = seq_list(instance, outcome.bits);
    const double value = eval_seq_order_exact(instance, list);
    if (value > best_value) {
      best = std::move(list);
      best_value = value;
    }
  }
  return seq_order_policy(instance, std::move(best));
}

CommittedOrderPolicy alg_seq_prime(const SeqInstance& instance) {
  const auto lp = solve_lp_seq(instance);
  std::vector<int> best;
  double best_value = -1.0;
  for (const auto& outcome : dr_outcomes(lp.y)) {
    auto list = pad_by_value(selected(outcome.bits), instance.v(), instance.T());
    const double value = eval_seq_order_exact(instance, list);
    if (value > best_value) {
      best = std::move(list);
      best_value = value;
    }
  }
  return seq_order_policy(instance, std::move(best));
}

CommittedOrderPolicy value_ordered_seq(const SeqInstance& instance) {
  auto order = value_descending_order(instance.v());
  order.resize(static_cast<std::size_t>(instance.T()));
  return seq_order_policy(instance, std::move(order));
}

CommittedOrderPolicy ev_ordered_seq(const SeqInstance& instance) {
  std::vector<double> ev(instance.n());
  for (int i = 0; i < instance.n(); ++i) ev[i] = instance.v()[i] * instance.p()[i];
  auto order = value_descending_order(ev);
  order.resize(static_cast<std::size_t>(instance.T()));
  return seq_order_policy(instance, std::move(order));
}

AdaptiveSeqDp::AdaptiveSeqDp(const SeqInstance& instance)
    : n_(instance.n()),
      k_(instance.k()),
      T_(instance.T()),
      order_(value_descending_order(instance.v())),
      table_(static_cast<std::size_t>(n_ + 1) * (k_ + 1) * (n_ + 1), 0.0) {
  const auto idx = [&](int i, int l, int t) {
    return (static_cast<std::size_t>(i) * (k_ + 1) + l) * (n_ + 1) + t;
  };
  for (int i = n_ - 1; i >= 0; --i) {
    const double p = instance.p()[order_[i]];
    const double v = instance.v()[order_[i]];
    for (int l = 1; l <= k_; ++l) {
      for (int t = 1; t <= n_; ++t) {
        const double offer = p * (v + table_[idx(i + 1, l - 1, t - 1)]) +
                             (1.0 - p) * table_[idx(i + 1, l, t - 1)];
        table_[idx(i, l, t)] = std::max(offer, table_[idx(i + 1, l, t)]);
      }
    }
  }
}

double AdaptiveSeqDp::at(int i, int l, int t) const {
  return table_[(static_cast<std::size_t>(i) * (k_ + 1) + l) * (n_ + 1) + t];
}

double AdaptiveSeqDp::value(int hires_left, int offers_left) const {
  if (hires_left < 0 || hires_left > k_ || offers_left < 0) {
    throw InvalidInput("adaptive table queried outside its range");
  }
  return at(0, hires_left, std::min(offers_left, n_));
}

bool AdaptiveSeqDp::offer(int position, int hires_left, int offers_left) const {
  if (position < 0 || position >= n_) throw InvalidInput("position out of range");
  if (hires_left <= 0 || offers_left <= 0) return false;
  if (hires_left > k_) throw InvalidInput("hires_left exceeds k");
  offers_left = std::min(offers_left, n_);
  return at(position, hires_left, offers_left) > at(position + 1, hires_left, offers_left);
}

// ---------------------------------------------------------------------------
// Parallel offering

OfferLists par_lists_from_rounding(const ParInstance& instance, const BinaryMatrix& assignment) {
  if (assignment.rows() != static_cast<std::size_t>(instance.n()) ||
      assignment.cols() != static_cast<std::size_t>(instance.k())) {
    throw InvalidInput("assignment shape does not match the instance");
  }
  OfferLists out;
  out.lists.resize(instance.k());
  for (int j = 0; j < instance.k(); ++j) {
    std::vector<double> key(instance.n());
    for (int i = 0; i < instance.n(); ++i) {
      key[i] = instance.v(i, j);
      if (assignment(i, j)) out.lists[j].push_back(i);
    }
    sort_by_key_desc(out.lists[j], key);
  }
  return out;
}

OfferLists alg_par(const ParInstance& instance, Rng& rng) {
  const auto lp = solve_lp_par(instance);
  return par_lists_from_rounding(instance, gkps_round(lp.y, rng));
}

OfferLists alg_par_derandomized(const ParInstance& instance, int samples, Rng& rng) {
  if (samples < 1) throw InvalidInput("need at least one rounding sample");
  const auto lp = solve_lp_par(instance);
  OfferLists best;
  double best_value = -1.0;
  for (int s = 0; s < samples; ++s) {
    auto lists = par_lists_from_rounding(instance, gkps_round(lp.y, rng));
    const double value = eval_par_exact(instance, lists).mean;
    if (value > best_value) {
      best = std::move(lists);
      best_value = value;
    }
  }
  return best;
}

OfferLists alg_par_prime(const ParInstance& instance) {
  if (!instance.identical_positions()) {
    throw InvalidInput("alg_par_prime requires identical positions");
  }
  const SeqInstance batched = batched_seq_instance(instance);
  const auto lp = solve_lp_seq(batched);
  const int k = instance.k();
  OfferLists best;
  double best_value = -1.0;
  for (const auto& outcome : dr_outcomes(lp.y)) {
    const auto pool = pad_by_value(selected(outcome.bits), batched.v(), batched.T());
    OfferLists lists;
    lists.lists.resize(k);
    std::vector<double> mass(k, 0.0);
    for (int i : pool) {
      int target = -1;
      for (int j = 0; j < k; ++j) {
        if (static_cast<int>(lists.lists[j].size()) >= instance.T()) continue;
        if (target < 0 || mass[j] < mass[target]) target = j;
      }
      if (target < 0) break;
      lists.lists[target].push_back(i);
      mass[target] += batched.p()[i];
    }
    const double value = eval_par_exact(instance, lists).mean;
    if (value > best_value) {
      best = std::move(lists);
      best_value = value;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Simultaneous offering

OfferProbabilities alg_sim(const SimInstance& instance, const SimLpSolution& lp, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidInput("truncation parameter must lie in [0,1]");
  if (lp.y.size() != static_cast<std::size_t>(instance.n())) {
    throw InvalidInput("LP solution does not match the instance size");
  }
  const auto p = instance.p();
  const double available = std::accumulate(p.begin(), p.end(), 0.0);
  double remaining = std::min(s * lp.total_mass, available);

  OfferProbabilities out;
  out.s = s;
  out.y_prime.assign(instance.n(), 0.0);
  if (s == 1.0 && lp.total_mass <= available) {
    out.y_prime = lp.y;  // no truncation; avoid re-accumulating the mass
    remaining = 0.0;
  }
  for (int i : lp.order) {
    if (remaining <= 0.0 || s == 0.0) break;
    const double y = lp.y[i];
    if (y <= 0.0) continue;
    if (p[i] == 0.0) {
      out.y_prime[i] = y;
      continue;
    }
    const double mass = y * p[i];
    if (mass <= remaining) {
      out.y_prime[i] = y;
      remaining -= mass;
    } else {
      out.y_prime[i] = remaining / p[i];
      remaining = 0.0;
    }
  }
  for (int i = 0; i < instance.n(); ++i) out.kappa += out.y_prime[i] * p[i];
  return out;
}

OfferProbabilities alg_sim(const SimInstance& instance, double s) {
  return alg_sim(instance, solve_lp_sim(instance), s);
}

double optimal_s(int k, double tau) { return std::min(foc_root(k, tau), 1.0); }

OfferProbabilities alg_sim_auto(const SimInstance& instance, double tau) {
  const auto lp = solve_lp_sim(instance);
  const double s = lp.high_value_overflow ? 1.0 : optimal_s(instance.k(), tau);
  return alg_sim(instance, lp, s);
}

SimChoice value_ordered_sim(const SimInstance& instance) {
  return best_prefix(instance, value_descending_order(instance.v()));
}

SimChoice ev_ordered_sim(const SimInstance& instance) {
  std::vector<double> ev(instance.n());
  for (int i = 0; i < instance.n(); ++i) ev[i] = instance.v()[i] * instance.p()[i];
  return best_prefix(instance, value_descending_order(ev));
}

SimChoice greedy_sim(const SimInstance& instance) {
  const int n = instance.n();
  TruncatedCount count(instance.k());
  std::vector<char> used(n, 0);
  SimChoice out;
  for (;;) {
    int best = -1;
    double best_gain = 0.0;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      // Marginal reward: v p minus the added expected overflow p P(N >= k).
      const double p = instance.p()[i];
      const double gain = instance.v()[i] * p - p * count.saturated();
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best < 0) break;
    used[best] = 1;
    count.add(instance.p()[best]);
    out.offers.push_back(best);
  }
  out.value = eval_sim_exact(instance, out.offers).mean;
  return out;
}

OfferProbabilities offer_set(const SimInstance& instance, const std::vector<int>& offers) {
  OfferProbabilities out;
  out.y_prime.assign(instance.n(), 0.0);
  for (int i : offers) {
    if (i < 0 || i >= instance.n()) throw InvalidInput("candidate index out of range");
    out.y_prime[i] = 1.0;
    out.kappa += instance.p()[i];
  }
  return out;
}

}  // namespace hiring
