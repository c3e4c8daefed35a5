#include <doctest.h>

#include <cmath>
#include <vector>

#include "hiring/constants.hpp"
#include "hiring/error.hpp"

using namespace hiring;

namespace {

double pmf_direct(double lambda, int j) {
  double term = std::exp(-lambda);
  for (int i = 1; i <= j; ++i) term *= lambda / i;
  return term;
}

// Maximum of the truncation objective on [lo, hi] by a coarse grid followed
// by golden-section refinement around the best grid point.
double grid_max(int k, double tau, double lo, double hi) {
  constexpr int kGrid = 2000;
  int best = 0;
  double best_val = -1e300;
  for (int i = 0; i <= kGrid; ++i) {
    const double v = truncation_objective(k, tau, lo + (hi - lo) * i / kGrid);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / kGrid;
  double b = lo + (hi - lo) * std::min(best + 1, kGrid) / kGrid;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 100; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (truncation_objective(k, tau, c) < truncation_objective(k, tau, d)) {
      a = c;
    } else {
      b = d;
    }
  }
  return std::max(best_val, truncation_objective(k, tau, 0.5 * (a + b)));
}

}  // namespace

TEST_CASE("Poisson helpers against direct sums") {
  for (double lambda : {0.0, 0.3, 1.0, 4.5, 12.0}) {
    double cdf = 0.0;
    for (int j = 0; j <= 30; ++j) {
      CHECK(poisson_pmf(lambda, j) == doctest::Approx(pmf_direct(lambda, j)).epsilon(1e-12));
    }
    for (int k = 1; k <= 15; ++k) {
      cdf += pmf_direct(lambda, k - 1);
      CHECK(poisson_upper_tail(lambda, k) == doctest::Approx(1.0 - cdf).epsilon(1e-10));
      double mean = 0.0;
      for (int j = 0; j <= 80; ++j) mean += std::min(j, k) * pmf_direct(lambda, j);
      CHECK(poisson_truncated_mean(lambda, k) == doctest::Approx(mean).epsilon(1e-12));
    }
  }
  CHECK(poisson_upper_tail(2.0, 0) == 1.0);
  CHECK(poisson_pmf(2.0, -1) == 0.0);
  CHECK_THROWS_AS(poisson_pmf(-1.0, 0), InvalidInput);
}

TEST_CASE("ProbeTop-k guarantee") {
  CHECK(guarantee_ptk(1) == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(guarantee_ptk(2) == doctest::Approx(1 - 2 * std::exp(-2.0)).epsilon(1e-12));
  double prev = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double g = guarantee_ptk(k);
    CHECK(g == doctest::Approx(poisson_truncated_mean(k, k) / k).epsilon(1e-10));
    CHECK(g > prev);
    CHECK(g < 1.0);
    prev = g;
  }
  CHECK(1 - guarantee_ptk(10000) == doctest::Approx(1 / std::sqrt(2 * M_PI * 10000)).epsilon(1e-3));
  CHECK_THROWS_AS(guarantee_ptk(0), InvalidInput);
}

TEST_CASE("tightness threshold stays above one half") {
  CHECK(tightness_threshold(1) == doctest::Approx(1 - std::exp(-1.0)));
  for (int k = 1; k <= 100; ++k) {
    CHECK(tightness_threshold(k) >= 0.5);
    CHECK(foc_root(k, tightness_threshold(k)) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("truncation objective is concave with its maximum at the FOC root") {
  for (int k : {1, 3, 10}) {
    for (double tau : {0.1, 0.3, 0.5, 0.8}) {
      const double h = 1e-3;
      for (double s = h; s < 2.0; s += 0.05) {
        const double second = truncation_objective(k, tau, s + h) - 2 * truncation_objective(k, tau, s) +
                              truncation_objective(k, tau, s - h);
        CHECK(second <= 1e-12);
      }
      const double root = foc_root(k, tau);
      CHECK(poisson_upper_tail(root * k, k) == doctest::Approx(tau).epsilon(1e-9));
      CHECK(beta(k, tau).value == doctest::Approx(grid_max(k, tau, 0.0, 3.0)).epsilon(1e-9));
      CHECK(alpha(k, tau).value == doctest::Approx(grid_max(k, tau, 0.0, 1.0)).epsilon(1e-9));
    }
  }
  CHECK(truncation_objective(2, 0.5, 0.0) == 0.0);
}

TEST_CASE("alpha at k = 1") {
  for (double tau : {0.1, 0.25, 0.5}) {
    const auto a = alpha(1, tau);
    CHECK(a.s == doctest::Approx(-std::log(1 - tau)).epsilon(1e-10));
    // s - s/tau + (1 - e^{-s})/tau at the root
    CHECK(a.value == doctest::Approx(a.s - a.s / tau + 1.0).epsilon(1e-10));
  }
  CHECK(alpha(1, 0.5).value == doctest::Approx(1 - std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("alpha and beta agree below one half and split above the threshold") {
  for (int k = 1; k <= 50; k += 7) {
    for (double tau = 0.05; tau <= 0.5 + 1e-12; tau += 0.05) {
      CHECK(alpha(k, tau).value == doctest::Approx(beta(k, tau).value).epsilon(1e-12));
    }
    const double above = 0.5 * (tightness_threshold(k) + 1.0);
    CHECK(alpha(k, above).s == 1.0);
    CHECK(beta(k, above).s > 1.0);
    CHECK(alpha(k, above).value < beta(k, above).value);
  }
}

TEST_CASE("alpha increases with tau") {
  for (int k : {1, 4, 20}) {
    double prev = 0.0;
    for (double tau = 0.05; tau < 0.99; tau += 0.05) {
      const double a = alpha(k, tau).value;
      CHECK(a >= prev - 1e-12);
      CHECK(a <= 1.0);
      prev = a;
    }
  }
}

TEST_CASE("constants table") {
  const std::vector<int> ks{1, 5};
  const auto rows = alpha_beta_table(ks, 0.25);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].k == 1);
  CHECK(rows[1].tau == doctest::Approx(0.5));
  CHECK(rows[1].alpha == doctest::Approx(1 - std::log(2.0)));
  CHECK(rows[5].k == 5);
  CHECK(rows[5].threshold == doctest::Approx(tightness_threshold(5)));
  const auto g = guarantee_constants(3, 0.4);
  CHECK(g.s_alpha == doctest::Approx(std::min(g.s_beta, 1.0)));
  CHECK_THROWS_AS(alpha_beta_table(ks, 0.0), InvalidInput);
  CHECK_THROWS_AS(alpha(1, 1.0), InvalidInput);
}
