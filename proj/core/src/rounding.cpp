#include "hiring/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hiring/error.hpp"

namespace hiring {
namespace {

bool is_integral(double x) { return x <= kSnapTolerance || x >= 1.0 - kSnapTolerance; }

double snap(double x) {
  if (x <= kSnapTolerance) return 0.0;
  if (x >= 1.0 - kSnapTolerance) return 1.0;
  return x;
}

std::vector<std::size_t> fractional_entries(std::span<const double> y) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] >= 0.0 && y[i] <= 1.0)) {
      throw InvalidInput("rounding input must lie in [0,1], got " + std::to_string(y[i]));
    }
    if (!is_integral(y[i])) out.push_back(i);
  }
  if (out.size() > 2) {
    throw InvalidInput("simple dependent rounding needs at most 2 fractional entries, got " +
                       std::to_string(out.size()));
  }
  if (out.size() == 2 && std::abs(y[out[0]] + y[out[1]] - 1.0) > 1e-9) {
    throw InvalidInput("the two fractional entries must sum to 1");
  }
  return out;
}

BinaryVector integral_part(std::span<const double> y) {
  BinaryVector bits(y.size(), 0);
  for (std::size_t i = 0; i < y.size(); ++i) bits[i] = snap(y[i]) == 1.0 ? 1 : 0;
  return bits;
}

}  // namespace

std::vector<RoundingOutcome> dr_outcomes(std::span<const double> y) {
  const auto frac = fractional_entries(y);
  BinaryVector base = integral_part(y);
  std::vector<RoundingOutcome> out;
  if (frac.empty()) {
    out.push_back({std::move(base), 1.0});
    return out;
  }
  const double first = y[frac[0]];
  RoundingOutcome take_first{base, first};
  take_first.bits[frac[0]] = 1;
  RoundingOutcome take_second{std::move(base), 1.0 - first};
  if (frac.size() == 2) take_second.bits[frac[1]] = 1;
  out.push_back(std::move(take_first));
  out.push_back(std::move(take_second));
  return out;
}

BinaryVector simple_dr(std::span<const double> y, Rng& rng) {
  auto outcomes = dr_outcomes(y);
  if (outcomes.size() == 1) return std::move(outcomes.front().bits);
  return uniform01(rng) < outcomes.front().probability ? std::move(outcomes[0].bits)
                                                        : std::move(outcomes[1].bits);
}

namespace {

// Fractional subgraph of the bipartite weight matrix. Vertices 0..R-1 are
// rows, R..R+C-1 are columns.
class FractionalGraph {
 public:
  explicit FractionalGraph(Matrix<double>& w) : w_(w), R_(w.rows()), adj_(w.rows() + w.cols()) {
    for (std::size_t i = 0; i < R_; ++i) {
      for (std::size_t j = 0; j < w.cols(); ++j) {
        w(i, j) = snap(w(i, j));
        if (!is_integral(w(i, j))) {
          adj_[i].push_back(R_ + j);
          adj_[R_ + j].push_back(i);
        }
      }
    }
  }

  [[nodiscard]] bool empty() const {
    return std::all_of(adj_.begin(), adj_.end(), [](const auto& a) { return a.empty(); });
  }

  double& weight(std::size_t a, std::size_t b) {
    return a < R_ ? w_(a, b - R_) : w_(b, a - R_);
  }

  // Vertex sequence of a cycle (first vertex repeated at the end) or of a
  // maximal path whose endpoints have fractional degree one.
  std::vector<std::size_t> find_cycle_or_maximal_path() {
    std::size_t start = 0;
    while (adj_[start].empty()) ++start;
    std::vector<long> position(adj_.size(), -1);
    std::vector<std::size_t> path;
    bool restarted = false;
    auto reset = [&](std::size_t from) {
      for (std::size_t v : path) position[v] = -1;
      path.assign(1, from);
      position[from] = 0;
    };
    reset(start);
    for (;;) {
      const std::size_t u = path.back();
      const std::size_t prev = path.size() >= 2 ? path[path.size() - 2] : adj_.size();
      std::size_t next = adj_.size();
      for (std::size_t w : adj_[u]) {
        if (w != prev) {
          next = w;
          break;
        }
      }
      if (next == adj_.size()) {
        if (restarted) return path;
        restarted = true;
        reset(u);
        continue;
      }
      if (position[next] >= 0) {
        std::vector<std::size_t> cycle(path.begin() + position[next], path.end());
        cycle.push_back(next);
        return cycle;
      }
      position[next] = static_cast<long>(path.size());
      path.push_back(next);
    }
  }

  void drop_integral_edges(const std::vector<std::size_t>& walk) {
    for (std::size_t t = 0; t + 1 < walk.size(); ++t) {
      const std::size_t a = walk[t], b = walk[t + 1];
      double& x = weight(a, b);
      x = snap(x);
      if (is_integral(x)) {
        erase(a, b);
        erase(b, a);
      }
    }
  }

 private:
  void erase(std::size_t a, std::size_t b) {
    auto& list = adj_[a];
    auto it = std::find(list.begin(), list.end(), b);
    if (it != list.end()) list.erase(it);
  }

  Matrix<double>& w_;
  std::size_t R_;
  std::vector<std::vector<std::size_t>> adj_;
};

}  // namespace

BinaryMatrix gkps_round(const Matrix<double>& weights, Rng& rng) {
  for (double x : weights.data()) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw InvalidInput("GKPS weights must lie in [0,1], got " + std::to_string(x));
    }
  }
  Matrix<double> w = weights;
  FractionalGraph graph(w);

  while (!graph.empty()) {
    const auto walk = graph.find_cycle_or_maximal_path();
    // Edges alternate +, -, +, ... along the walk. Cycles in a bipartite
    // graph are even, so the alternation closes up consistently.
    double up = 1.0, down = 1.0;  // max step along (+1, -1) and (-1, +1)
    for (std::size_t t = 0; t + 1 < walk.size(); ++t) {
      const double x = graph.weight(walk[t], walk[t + 1]);
      if (t % 2 == 0) {
        up = std::min(up, 1.0 - x);
        down = std::min(down, x);
      } else {
        up = std::min(up, x);
        down = std::min(down, 1.0 - x);
      }
    }
    const bool go_up = uniform01(rng) < down / (up + down);
    const double step = go_up ? up : -down;
    for (std::size_t t = 0; t + 1 < walk.size(); ++t) {
      double& x = graph.weight(walk[t], walk[t + 1]);
      x += t % 2 == 0 ? step : -step;
      x = std::clamp(x, 0.0, 1.0);
    }
    graph.drop_integral_edges(walk);
  }

  BinaryMatrix out(w.rows(), w.cols(), 0);
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) out(i, j) = w(i, j) >= 0.5 ? 1 : 0;
  }
  return out;
}

}  // namespace hiring
