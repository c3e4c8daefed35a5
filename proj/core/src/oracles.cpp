#include "hiring/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>

#include "hiring/error.hpp"
#include "hiring/eval.hpp"

namespace hiring {
namespace {

void cap(bool ok, const std::string& what) {
  if (!ok) throw SizeCapExceeded("instance exceeds oracle cap: " + what);
}

// Memoized search over (interviewed set, kept top-k values). The number of
// interviews left is T minus the size of the interviewed set.
class PtkSearch {
 public:
  explicit PtkSearch(const ProbeTopKInstance& instance) : instance_(instance) {
    for (const auto& dist : instance.distributions()) {
      values_.insert(values_.end(), dist.support().begin(), dist.support().end());
    }
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    for (const auto& dist : instance.distributions()) {
      std::vector<int> codes;
      for (double r : dist.support()) {
        codes.push_back(static_cast<int>(
            std::lower_bound(values_.begin(), values_.end(), r) - values_.begin()) + 1);
      }
      codes_.push_back(std::move(codes));
    }
  }

  double solve() { return value(0, std::vector<int>(instance_.k(), 0)); }

 private:
  // `kept` holds value codes in descending order; 0 marks an empty slot.
  double value(std::uint32_t mask, const std::vector<int>& kept) {
    const std::uint64_t key = encode(mask, kept);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    double best = 0.0;
    for (int c : kept) {
      if (c > 0) best += values_[c - 1];
    }
    const int used = __builtin_popcount(mask);
    if (used < instance_.T()) {
      for (int i = 0; i < instance_.n(); ++i) {
        if (mask & (1u << i)) continue;
        const auto probs = instance_.distribution(i).probs();
        double expected = 0.0;
        for (std::size_t j = 0; j < probs.size(); ++j) {
          expected += probs[j] * value(mask | (1u << i), insert(kept, codes_[i][j]));
        }
        best = std::max(best, expected);
      }
    }
    memo_.emplace(key, best);
    return best;
  }

  static std::vector<int> insert(std::vector<int> kept, int code) {
    if (code <= kept.back()) return kept;
    kept.back() = code;
    for (std::size_t t = kept.size() - 1; t > 0 && kept[t] > kept[t - 1]; --t) {
      std::swap(kept[t], kept[t - 1]);
    }
    return kept;
  }

  static std::uint64_t encode(std::uint32_t mask, const std::vector<int>& kept) {
    std::uint64_t key = mask;
    for (int c : kept) key = (key << 6) | static_cast<std::uint64_t>(c);
    return key;
  }

  const ProbeTopKInstance& instance_;
  std::vector<double> values_;
  std::vector<std::vector<int>> codes_;
  std::unordered_map<std::uint64_t, double> memo_;
};

}  // namespace

double opt_ptk_bruteforce(const ProbeTopKInstance& instance) {
  cap(instance.n() <= PtkOracleCaps::max_n, "n > " + std::to_string(PtkOracleCaps::max_n));
  cap(instance.k() <= PtkOracleCaps::max_k, "k > " + std::to_string(PtkOracleCaps::max_k));
  for (const auto& dist : instance.distributions()) {
    cap(static_cast<int>(dist.size()) <= PtkOracleCaps::max_support,
        "support size > " + std::to_string(PtkOracleCaps::max_support));
  }
  return PtkSearch(instance).solve();
}

double opt_seq_bruteforce(const SeqInstance& instance) {
  const int n = instance.n();
  const int k = instance.k();
  cap(n <= kSeqOracleMaxN, "n > " + std::to_string(kSeqOracleMaxN));
  const std::uint32_t full = (1u << n) - 1;
  // V[S][l] for remaining set S; offers left = T - (n - |S|).
  std::vector<double> table(static_cast<std::size_t>(full + 1) * (k + 1), 0.0);
  const auto at = [&](std::uint32_t s, int l) -> double& {
    return table[static_cast<std::size_t>(s) * (k + 1) + l];
  };
  for (std::uint32_t s = 1; s <= full; ++s) {
    const int offers_left = instance.T() - (n - __builtin_popcount(s));
    if (offers_left <= 0) continue;
    for (int l = 1; l <= k; ++l) {
      double best = 0.0;
      for (int i = 0; i < n; ++i) {
        if (!(s & (1u << i))) continue;
        const std::uint32_t rest = s & ~(1u << i);
        const double p = instance.p()[i];
        best = std::max(best, p * (instance.v()[i] + at(rest, l - 1)) + (1.0 - p) * at(rest, l));
      }
      at(s, l) = best;
    }
  }
  return at(full, k);
}

SimOptimum opt_sim_bruteforce(const SimInstance& instance) {
  const int n = instance.n();
  const int k = instance.k();
  cap(n <= kSimOracleMaxN, "n > " + std::to_string(kSimOracleMaxN));

  // dist[d] is the truncated count distribution after deciding the first d
  // candidates; index k holds P(N >= k).
  std::vector<std::vector<double>> dist(n + 1, std::vector<double>(k + 1, 0.0));
  dist[0][0] = 1.0;
  std::vector<int> chosen;
  SimOptimum best;
  double best_value = 0.0;

  std::function<void(int, double, double)> search = [&](int d, double gain, double mass) {
    if (d == n) {
      double truncated = 0.0;
      for (int c = 1; c <= k; ++c) truncated += c * dist[d][c];
      const double value = gain - std::max(mass - truncated, 0.0);
      if (value > best_value) {
        best_value = value;
        best.subset = chosen;
      }
      return;
    }
    dist[d + 1] = dist[d];
    search(d + 1, gain, mass);

    const double p = instance.p()[d];
    auto& next = dist[d + 1];
    const auto& cur = dist[d];
    next[k] = cur[k] + cur[k - 1] * p;
    for (int c = k - 1; c >= 1; --c) next[c] = cur[c] * (1.0 - p) + cur[c - 1] * p;
    next[0] = cur[0] * (1.0 - p);
    chosen.push_back(d);
    search(d + 1, gain + instance.v()[d] * p, mass + p);
    chosen.pop_back();
  };
  search(0, 0.0, 0.0);

  best.value = eval_sim_exact(instance, best.subset).mean;
  return best;
}

ParOptimum opt_par_nonadaptive_bruteforce(const ParInstance& instance) {
  const int n = instance.n();
  const int k = instance.k();
  const int T = instance.T();
  cap(n <= ParOracleCaps::max_n, "n > " + std::to_string(ParOracleCaps::max_n));
  cap(k <= ParOracleCaps::max_k, "k > " + std::to_string(ParOracleCaps::max_k));
  cap(T <= ParOracleCaps::max_T, "T > " + std::to_string(ParOracleCaps::max_T));

  ParOptimum best;
  best.lists.lists.assign(k, {});
  OfferLists current;
  current.lists.assign(k, {});
  std::vector<char> used(n, 0);

  // Positions are filled one after another; each list is an ordered
  // selection of unused candidates of length at most T.
  std::function<void(int, double)> search = [&](int j, double value) {
    if (j == k) {
      if (value > best.value) {
        best.value = value;
        best.lists = current;
      }
      return;
    }
    std::function<void(double, double)> extend = [&](double list_value, double survive) {
      search(j + 1, value + list_value);
      if (static_cast<int>(current.lists[j].size()) >= T) return;
      for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        used[i] = 1;
        current.lists[j].push_back(i);
        const double p = instance.p(i, j);
        extend(list_value + survive * p * instance.v(i, j), survive * (1.0 - p));
        current.lists[j].pop_back();
        used[i] = 0;
      }
    };
    extend(0.0, 1.0);
  };
  search(0, 0.0);

  best.value = eval_par_exact(instance, best.lists).mean;
  return best;
}

}  // namespace hiring
