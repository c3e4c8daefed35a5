#include "hiring/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hiring/error.hpp"

namespace hiring {
namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidInput(message);
}

void check_probability(double p, const char* what) {
  require(std::isfinite(p) && p >= 0.0 && p <= 1.0,
          std::string(what) + " must lie in [0,1], got " + std::to_string(p));
}

void check_value(double v, const char* what) {
  require(std::isfinite(v) && v >= 0.0,
          std::string(what) + " must be finite and nonnegative, got " + std::to_string(v));
}

void check_limits(int k, int T, int n) {
  require(k >= 1, "k must be at least 1");
  require(k <= T, "k must not exceed T");
  require(T <= n, "T must not exceed n");
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteDistribution

FiniteDistribution::FiniteDistribution(std::vector<double> support, std::vector<double> probs) {
  require(support.size() == probs.size(), "support and probs must have equal length");
  require(!support.empty(), "distribution needs at least one support point");
  double total = 0.0;
  for (std::size_t j = 0; j < support.size(); ++j) {
    check_value(support[j], "support value");
    check_probability(probs[j], "probability");
    total += probs[j];
  }
  require(std::abs(total - 1.0) <= kProbabilitySumTolerance,
          "probabilities must sum to 1, got " + std::to_string(total));

  std::vector<std::size_t> idx(support.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
  for (std::size_t j : idx) {
    if (probs[j] == 0.0) continue;
    if (!support_.empty() && support_.back() == support[j]) {
      probs_.back() += probs[j];
    } else {
      support_.push_back(support[j]);
      probs_.push_back(probs[j]);
    }
  }
}

FiniteDistribution FiniteDistribution::point(double value) { return {{value}, {1.0}}; }

FiniteDistribution FiniteDistribution::bernoulli(double value, double p) {
  check_probability(p, "success probability");
  return {{0.0, value}, {1.0 - p, p}};
}

double FiniteDistribution::mean() const noexcept {
  double m = 0.0;
  for (std::size_t j = 0; j < support_.size(); ++j) m += support_[j] * probs_[j];
  return m;
}

// ---------------------------------------------------------------------------
// Instances

ProbeTopKInstance::ProbeTopKInstance(int k, int T, std::vector<FiniteDistribution> distributions)
    : k_(k), T_(T), distributions_(std::move(distributions)) {
  check_limits(k_, T_, n());
}

SeqInstance::SeqInstance(int k, int T, std::vector<double> p, std::vector<double> v)
    : k_(k), T_(T), p_(std::move(p)), v_(std::move(v)) {
  require(p_.size() == v_.size(), "p and v must have equal length");
  check_limits(k_, T_, n());
  for (double x : p_) check_probability(x, "acceptance probability");
  for (double x : v_) check_value(x, "value");
}

SeqInstance SeqInstance::with_limits(int k, int T) const { return {k, T, p_, v_}; }

ParInstance::ParInstance(int k, int T, Matrix<double> p, Matrix<double> v)
    : k_(k), T_(T), p_(std::move(p)), v_(std::move(v)) {
  require(p_.rows() == v_.rows() && p_.cols() == v_.cols(), "p and v must have the same shape");
  require(static_cast<int>(p_.cols()) == k_ || p_.rows() == 0,
          "p and v must have k columns (one per position)");
  check_limits(k_, T_, n());
  for (double x : p_.data()) check_probability(x, "acceptance probability");
  for (double x : v_.data()) check_value(x, "value");
}

bool ParInstance::identical_positions() const noexcept {
  for (int i = 0; i < n(); ++i) {
    for (int j = 1; j < k_; ++j) {
      if (p_(i, j) != p_(i, 0) || v_(i, j) != v_(i, 0)) return false;
    }
  }
  return true;
}

SimInstance::SimInstance(int k, std::vector<double> p, std::vector<double> v)
    : k_(k), p_(std::move(p)), raw_v_(v), v_(std::move(v)) {
  require(p_.size() == v_.size(), "p and v must have equal length");
  require(k_ >= 1, "k must be at least 1");
  require(k_ <= n(), "k must not exceed n");
  for (double x : p_) check_probability(x, "acceptance probability");
  for (double x : v_) check_value(x, "value");
}

SimInstance SimInstance::from_raw(int k, std::vector<double> p, std::vector<double> raw_v,
                                  double cost) {
  require(std::isfinite(cost) && cost > 0.0, "penalty cost must be positive");
  std::vector<double> scaled(raw_v.size());
  std::transform(raw_v.begin(), raw_v.end(), scaled.begin(), [cost](double x) { return x / cost; });
  SimInstance out(k, std::move(p), std::move(scaled));
  out.raw_v_ = std::move(raw_v);
  out.cost_ = cost;
  return out;
}

// ---------------------------------------------------------------------------
// Generators

double sample_beta(Rng& rng, double a, double b) {
  if (b <= 0.0) return 1.0;
  if (a <= 0.0) return 0.0;
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  if (x + y == 0.0) return a / (a + b);
  return x / (x + y);
}

std::vector<Candidate> sample_candidate_pool(int n, PoolMode mode, std::uint64_t seed) {
  require(n >= 1, "candidate pool needs n >= 1");
  Rng rng(seed);
  std::vector<Candidate> pool;
  pool.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double v = uniform01(rng);
    const double p = mode == PoolMode::negative_correlation
                         ? sample_beta(rng, 10.0 * (1.0 - v), 10.0 * v)
                         : uniform01(rng);
    pool.push_back({v, p});
  }
  return pool;
}

ProbeTopKInstance tightness_probetopk(int n, int k) {
  require(k >= 1 && k <= n, "tightness instance needs 1 <= k <= n");
  const double q = static_cast<double>(k) / n;
  std::vector<FiniteDistribution> dists(n, FiniteDistribution::bernoulli(1.0, q));
  return {k, n, std::move(dists)};
}

ParInstance tightness_parallel(int k, int T) {
  require(k >= 1 && T >= 1, "tightness instance needs k, T >= 1");
  const int n = k * T;
  return {k, T, Matrix<double>(n, k, 1.0 / T), Matrix<double>(n, k, 1.0)};
}

SimInstance counterexample_value_ordered(double eps) {
  require(eps > 0.0 && eps < 0.5, "eps must lie in (0, 1/2)");
  return {1, {eps, 1.0}, {eps, eps * (1.0 - eps)}};
}

SimInstance counterexample_ev_ordered(int n) {
  require(n >= 2, "counterexample needs n >= 2");
  std::vector<double> p{1.0};
  std::vector<double> v{1.0 / n};
  for (int i = 0; i < n; ++i) {
    p.push_back(1.0 / n);
    v.push_back(1.0 - 1.0 / n);
  }
  return {1, std::move(p), std::move(v)};
}

ProbeTopKInstance seq_to_ptk(const SeqInstance& instance) {
  std::vector<FiniteDistribution> dists;
  dists.reserve(instance.n());
  for (int i = 0; i < instance.n(); ++i) {
    dists.push_back(FiniteDistribution::bernoulli(instance.v()[i], instance.p()[i]));
  }
  return {instance.k(), instance.T(), std::move(dists)};
}

SeqInstance batched_seq_instance(const ParInstance& instance) {
  require(instance.identical_positions(), "batched instance requires identical positions");
  std::vector<double> p(instance.n()), v(instance.n());
  for (int i = 0; i < instance.n(); ++i) {
    p[i] = instance.p(i, 0);
    v[i] = instance.v(i, 0);
  }
  const int budget = std::min(instance.k() * instance.T(), instance.n());
  return {instance.k(), budget, std::move(p), std::move(v)};
}

ParInstance identical_positions_instance(int k, int T, std::span<const double> p,
                                         std::span<const double> v) {
  require(p.size() == v.size(), "p and v must have equal length");
  const std::size_t n = p.size();
  Matrix<double> pm(n, k), vm(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      pm(i, j) = p[i];
      vm(i, j) = v[i];
    }
  }
  return {k, T, std::move(pm), std::move(vm)};
}

namespace {

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

ProbeTopKInstance random_ptk_instance(Rng& rng, const RandomPtkSpec& spec) {
  const int n = uniform_int(rng, 1, spec.max_n);
  const int k = uniform_int(rng, 1, std::min(spec.max_k, n));
  const int T = uniform_int(rng, k, n);
  std::vector<FiniteDistribution> dists;
  for (int i = 0; i < n; ++i) {
    const int J = uniform_int(rng, 1, spec.max_support);
    std::vector<double> support(J), probs(J);
    double total = 0.0;
    for (int j = 0; j < J; ++j) {
      // level 0 is value 0 so rejections are common
      support[j] = uniform_int(rng, 0, spec.value_levels);
      probs[j] = uniform01(rng) + 0.05;
      total += probs[j];
    }
    for (double& q : probs) q /= total;
    // absorb float residue so the sum is 1 within tolerance
    probs.back() = std::max(0.0, 1.0 - std::accumulate(probs.begin(), probs.end() - 1, 0.0));
    dists.emplace_back(std::move(support), std::move(probs));
  }
  return {k, T, std::move(dists)};
}

SeqInstance random_seq_instance(Rng& rng, const RandomSeqSpec& spec) {
  const int n = uniform_int(rng, spec.min_n, spec.max_n);
  const int k = uniform_int(rng, 1, std::min(spec.max_k, n));
  const int T = uniform_int(rng, k, n);
  std::vector<double> p(n), v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = uniform01(rng);
    p[i] = uniform01(rng);
  }
  return {k, T, std::move(p), std::move(v)};
}

ParInstance random_par_instance(Rng& rng, const RandomParSpec& spec) {
  const int k = uniform_int(rng, 1, spec.max_k);
  const int n = uniform_int(rng, k, std::max(k, spec.max_n));
  const int T_cap = spec.max_T > 0 ? std::min(spec.max_T, n) : n;
  const int T = uniform_int(rng, k, std::max(k, T_cap));
  Matrix<double> p(n, k), v(n, k);
  for (int i = 0; i < n; ++i) {
    const double p0 = uniform01(rng);
    const double v0 = uniform01(rng);
    for (int j = 0; j < k; ++j) {
      p(i, j) = spec.identical ? p0 : uniform01(rng);
      v(i, j) = spec.identical ? v0 : uniform01(rng);
    }
  }
  return {k, std::min(T, n), std::move(p), std::move(v)};
}

SimInstance random_sim_instance(Rng& rng, const RandomSimSpec& spec) {
  const int n = uniform_int(rng, 1, spec.max_n);
  const int k = uniform_int(rng, 1, std::min(spec.max_k, n));
  std::vector<double> p(n), v(n);
  for (int i = 0; i < n; ++i) {
    p[i] = uniform01(rng);
    v[i] = spec.min_value + (spec.max_value - spec.min_value) * uniform01(rng);
  }
  return {k, std::move(p), std::move(v)};
}

}  // namespace hiring
