#include "hiring/eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hiring/error.hpp"
#include "hiring/random.hpp"

namespace hiring {
namespace {

// Welford accumulator for the MC twins.
class RunningMean {
 public:
  void add(double x) {
    ++count_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(count_);
    m2_ += d * (x - mean_);
  }

  [[nodiscard]] EvalResult result(std::uint64_t seed) const {
    EvalResult r;
    r.mean = mean_;
    r.replications = count_;
    r.seed = seed;
    if (count_ > 1) {
      const double var = m2_ / static_cast<double>(count_ - 1);
      r.std_error = std::sqrt(var / static_cast<double>(count_));
      r.half_width = 1.96 * r.std_error;
    }
    return r;
  }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

void check_reps(std::int64_t reps) {
  if (reps <= 0) throw InvalidInput("replication count must be positive");
}

void check_order(std::span<const int> order, int n) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int i : order) {
    if (i < 0 || i >= n) throw InvalidInput("candidate index out of range: " + std::to_string(i));
    if (seen[i]) throw InvalidInput("candidate listed twice: " + std::to_string(i));
    seen[i] = 1;
  }
}

// Probability and conditional contribution of candidate i making the cut.
struct CutStats {
  double prob = 0.0;
  double value = 0.0;  ///< E[value * 1{hired}] for the candidate alone
};

CutStats cut_stats(const FiniteDistribution& dist, std::span<const double> accept) {
  CutStats s;
  const auto support = dist.support();
  const auto probs = dist.probs();
  for (std::size_t j = 0; j < support.size(); ++j) {
    s.prob += probs[j] * accept[j];
    s.value += probs[j] * accept[j] * support[j];
  }
  return s;
}

// Expected value of running a sequence of (make-the-cut probability,
// contribution) pairs with at most k hires.
double committed_value(std::span<const CutStats> steps, int k) {
  std::vector<double> hires(static_cast<std::size_t>(k) + 1, 0.0);
  hires[0] = 1.0;
  double total = 0.0;
  for (const CutStats& s : steps) {
    double open = 0.0;
    for (int h = 0; h < k; ++h) open += hires[h];
    if (open <= 0.0) break;
    total += s.value * open;
    hires[k] += hires[k - 1] * s.prob;
    for (int h = k - 1; h >= 1; --h) hires[h] = hires[h] * (1.0 - s.prob) + hires[h - 1] * s.prob;
    hires[0] *= 1.0 - s.prob;
  }
  return total;
}

}  // namespace

EvalResult exact_result(double value) {
  EvalResult r;
  r.mean = value;
  return r;
}

void validate_policy(const ProbeTopKInstance& instance, const CommittedOrderPolicy& policy) {
  check_order(policy.order, instance.n());
  if (policy.accept_prob.size() != static_cast<std::size_t>(instance.n())) {
    throw InvalidInput("accept table must have one row per candidate");
  }
  for (int i = 0; i < instance.n(); ++i) {
    const auto& row = policy.accept_prob[i];
    if (row.size() != instance.distribution(i).size()) {
      throw InvalidInput("accept table row " + std::to_string(i) + " does not match the support");
    }
    for (double a : row) {
      if (!(a >= 0.0 && a <= 1.0)) throw InvalidInput("accept probability outside [0,1]");
    }
  }
}

void validate_lists(const ParInstance& instance, const OfferLists& lists) {
  if (lists.lists.size() > static_cast<std::size_t>(instance.k())) {
    throw InvalidInput("more offer lists than positions");
  }
  std::vector<int> all;
  for (const auto& list : lists.lists) all.insert(all.end(), list.begin(), list.end());
  check_order(all, instance.n());
}

EvalResult eval_committed_order_exact(const ProbeTopKInstance& instance,
                                      const CommittedOrderPolicy& policy) {
  validate_policy(instance, policy);
  const std::size_t steps = std::min(policy.order.size(), static_cast<std::size_t>(instance.T()));
  std::vector<CutStats> stats;
  stats.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    const int i = policy.order[t];
    stats.push_back(cut_stats(instance.distribution(i), policy.accept_prob[i]));
  }
  return exact_result(committed_value(stats, instance.k()));
}

double eval_seq_order_exact(const SeqInstance& instance, std::span<const int> order) {
  check_order(order, instance.n());
  const std::size_t steps = std::min(order.size(), static_cast<std::size_t>(instance.T()));
  std::vector<CutStats> stats;
  stats.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    const int i = order[t];
    stats.push_back({instance.p()[i], instance.p()[i] * instance.v()[i]});
  }
  return committed_value(stats, instance.k());
}

EvalResult simulate_ptk(const ProbeTopKInstance& instance, const CommittedOrderPolicy& policy,
                        std::int64_t reps, std::uint64_t seed) {
  validate_policy(instance, policy);
  check_reps(reps);
  const int n = instance.n();
  const std::size_t steps = std::min(policy.order.size(), static_cast<std::size_t>(instance.T()));
  std::vector<double> draw_value(n), draw_accept(n);
  RunningMean acc;
  for (std::int64_t r = 0; r < reps; ++r) {
    // Candidate-indexed draws keep outcomes common across policies sharing a seed.
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    for (int i = 0; i < n; ++i) {
      draw_value[i] = uniform01(rng);
      draw_accept[i] = uniform01(rng);
    }
    double reward = 0.0;
    int hires = 0;
    for (std::size_t t = 0; t < steps && hires < instance.k(); ++t) {
      const int i = policy.order[t];
      const auto& dist = instance.distribution(i);
      const auto probs = dist.probs();
      std::size_t j = 0;
      double cum = probs[0];
      while (draw_value[i] >= cum && j + 1 < probs.size()) cum += probs[++j];
      if (draw_accept[i] < policy.accept_prob[i][j]) {
        reward += dist.support()[j];
        ++hires;
      }
    }
    acc.add(reward);
  }
  return acc.result(seed);
}

EvalResult eval_par_exact(const ParInstance& instance, const OfferLists& lists) {
  validate_lists(instance, lists);
  double total = 0.0;
  for (std::size_t j = 0; j < lists.lists.size(); ++j) {
    const auto& list = lists.lists[j];
    const std::size_t steps = std::min(list.size(), static_cast<std::size_t>(instance.T()));
    double survive = 1.0;
    for (std::size_t t = 0; t < steps; ++t) {
      const int i = list[t];
      const double p = instance.p(i, static_cast<int>(j));
      total += survive * p * instance.v(i, static_cast<int>(j));
      survive *= 1.0 - p;
    }
  }
  return exact_result(total);
}

EvalResult simulate_par(const ParInstance& instance, const OfferLists& lists, std::int64_t reps,
                        std::uint64_t seed) {
  validate_lists(instance, lists);
  check_reps(reps);
  const int n = instance.n();
  std::vector<double> draw(n);
  RunningMean acc;
  for (std::int64_t r = 0; r < reps; ++r) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    for (int i = 0; i < n; ++i) draw[i] = uniform01(rng);
    double reward = 0.0;
    for (std::size_t j = 0; j < lists.lists.size(); ++j) {
      const auto& list = lists.lists[j];
      const std::size_t steps = std::min(list.size(), static_cast<std::size_t>(instance.T()));
      for (std::size_t t = 0; t < steps; ++t) {
        const int i = list[t];
        if (draw[i] < instance.p(i, static_cast<int>(j))) {
          reward += instance.v(i, static_cast<int>(j));
          break;
        }
      }
    }
    acc.add(reward);
  }
  return acc.result(seed);
}

EvalResult eval_sim_exact(const SimInstance& instance, std::span<const int> offers) {
  check_order(offers, instance.n());
  std::vector<double> q;
  q.reserve(offers.size());
  double value = 0.0;
  for (int i : offers) {
    q.push_back(instance.p()[i]);
    value += instance.v()[i] * instance.p()[i];
  }
  return exact_result(value - penalty_expectation(q, instance.k()));
}

EvalResult eval_sim_exact(const SimInstance& instance, const OfferProbabilities& offers) {
  if (offers.y_prime.size() != static_cast<std::size_t>(instance.n())) {
    throw InvalidInput("offer probabilities must have one entry per candidate");
  }
  std::vector<double> q(offers.y_prime.size());
  double value = 0.0;
  for (int i = 0; i < instance.n(); ++i) {
    const double y = offers.y_prime[i];
    if (!(y >= 0.0 && y <= 1.0)) throw InvalidInput("offer probability outside [0,1]");
    q[i] = y * instance.p()[i];
    value += instance.v()[i] * q[i];
  }
  return exact_result(value - penalty_expectation(q, instance.k()));
}

EvalResult simulate_sim(const SimInstance& instance, const OfferProbabilities& offers,
                        std::int64_t reps, std::uint64_t seed) {
  if (offers.y_prime.size() != static_cast<std::size_t>(instance.n())) {
    throw InvalidInput("offer probabilities must have one entry per candidate");
  }
  check_reps(reps);
  const int n = instance.n();
  RunningMean acc;
  for (std::int64_t r = 0; r < reps; ++r) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    double reward = 0.0;
    int hired = 0;
    for (int i = 0; i < n; ++i) {
      const double u_offer = uniform01(rng);
      const double u_accept = uniform01(rng);
      if (u_offer < offers.y_prime[i] && u_accept < instance.p()[i]) {
        reward += instance.v()[i];
        ++hired;
      }
    }
    reward -= std::max(hired - instance.k(), 0);
    acc.add(reward);
  }
  return acc.result(seed);
}

std::vector<double> poisson_binomial(std::span<const double> probs) {
  std::vector<double> dist(probs.size() + 1, 0.0);
  dist[0] = 1.0;
  std::size_t used = 0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("probability outside [0,1]");
    ++used;
    for (std::size_t c = used; c >= 1; --c) dist[c] = dist[c] * (1.0 - p) + dist[c - 1] * p;
    dist[0] *= 1.0 - p;
  }
  return dist;
}

double penalty_expectation(std::span<const double> probs, int k) {
  if (k < 0) throw InvalidInput("capacity must be nonnegative");
  const auto dist = poisson_binomial(probs);
  double out = 0.0;
  for (std::size_t c = static_cast<std::size_t>(k) + 1; c < dist.size(); ++c) {
    out += static_cast<double>(c - static_cast<std::size_t>(k)) * dist[c];
  }
  return out;
}

double expected_truncated_count(std::span<const double> probs, int k) {
  if (k < 0) throw InvalidInput("capacity must be nonnegative");
  const auto dist = poisson_binomial(probs);
  double out = 0.0;
  for (std::size_t c = 0; c < dist.size(); ++c) {
    out += static_cast<double>(std::min<std::size_t>(c, static_cast<std::size_t>(k))) * dist[c];
  }
  return out;
}

TruncatedCount::TruncatedCount(int k) : k_(k), dist_(static_cast<std::size_t>(k) + 1, 0.0) {
  if (k < 1) throw InvalidInput("capacity must be at least 1");
  dist_[0] = 1.0;
}

void TruncatedCount::add(double p) {
  mass_ += p;
  dist_[k_] += dist_[k_ - 1] * p;
  for (int c = k_ - 1; c >= 1; --c) dist_[c] = dist_[c] * (1.0 - p) + dist_[c - 1] * p;
  dist_[0] *= 1.0 - p;
}

double TruncatedCount::penalty() const noexcept {
  double truncated = 0.0;
  for (int c = 1; c <= k_; ++c) truncated += c * dist_[c];
  return std::max(mass_ - truncated, 0.0);
}

double TruncatedCount::penalty_with(double p) const noexcept {
  // Adding a trial raises E[min(N, k)] by p * P(N < k).
  return penalty() + p * dist_[k_];
}

}  // namespace hiring
