#include <doctest.h>

#include <array>
#include <cmath>

#include "hiring/error.hpp"
#include "hiring/lp.hpp"
#include "support.hpp"

using namespace hiring;

TEST_CASE("simplex solves a textbook packing LP") {
  LinearProgram lp(2, 2);
  lp.objective = {3.0, 2.0};
  lp.upper = {3.0, kInfinity};
  lp.constraints(0, 0) = 1;
  lp.constraints(0, 1) = 1;
  lp.constraints(1, 0) = 1;
  lp.constraints(1, 1) = 3;
  lp.rhs = {4.0, 6.0};
  for (auto rule : {PivotRule::bland, PivotRule::dantzig}) {
    const auto r = solve_simplex(lp, {.rule = rule});
    CHECK(r.objective == doctest::Approx(11.0));
    CHECK(r.x[0] == doctest::Approx(3.0));
    CHECK(r.x[1] == doctest::Approx(1.0));
  }
}

TEST_CASE("simplex reports unbounded and malformed programs") {
  LinearProgram lp(1, 1);
  lp.objective = {1.0};
  lp.constraints(0, 0) = -1.0;
  lp.rhs = {1.0};
  CHECK_THROWS_AS(solve_simplex(lp), SolverError);

  LinearProgram neg(1, 1);
  neg.objective = {1.0};
  neg.constraints(0, 0) = 1.0;
  neg.rhs = {-1.0};
  CHECK_THROWS_AS(solve_simplex(neg), InvalidInput);

  LinearProgram empty(0, 0);
  CHECK(solve_simplex(empty).objective == 0.0);
}

TEST_CASE("two-variable LPs match vertex enumeration") {
  Rng rng(17);
  for (int it = 0; it < 200; ++it) {
    const int rows = 1 + static_cast<int>(rng() % 4);
    LinearProgram lp(2, rows);
    lp.objective = {uniform01(rng) * 2 - 0.5, uniform01(rng) * 2 - 0.5};
    lp.upper = {uniform01(rng) * 3, kInfinity};
    for (int r = 0; r < rows; ++r) {
      lp.constraints(r, 0) = uniform01(rng);
      lp.constraints(r, 1) = uniform01(rng) + 0.05;
      lp.rhs[r] = uniform01(rng) * 2;
    }
    // Constraint lines plus bounds, as (a0, a1, b) with a . x = b.
    std::vector<std::array<double, 3>> lines{{1, 0, 0}, {0, 1, 0}, {1, 0, lp.upper[0]}};
    for (int r = 0; r < rows; ++r) lines.push_back({lp.constraints(r, 0), lp.constraints(r, 1), lp.rhs[r]});
    const auto feasible = [&](double x, double y) {
      if (x < -1e-9 || y < -1e-9 || x > lp.upper[0] + 1e-9) return false;
      for (int r = 0; r < rows; ++r) {
        if (lp.constraints(r, 0) * x + lp.constraints(r, 1) * y > lp.rhs[r] + 1e-9) return false;
      }
      return true;
    };
    double best = 0.0;
    for (std::size_t a = 0; a < lines.size(); ++a) {
      for (std::size_t b = a + 1; b < lines.size(); ++b) {
        const double det = lines[a][0] * lines[b][1] - lines[a][1] * lines[b][0];
        if (std::abs(det) < 1e-12) continue;
        const double x = (lines[a][2] * lines[b][1] - lines[a][1] * lines[b][2]) / det;
        const double y = (lines[a][0] * lines[b][2] - lines[a][2] * lines[b][0]) / det;
        if (feasible(x, y)) best = std::max(best, lp.objective[0] * x + lp.objective[1] * y);
      }
    }
    CHECK(solve_simplex(lp).objective == doctest::Approx(best).epsilon(1e-9));
    CHECK(solve_simplex(lp, {.rule = PivotRule::bland}).objective ==
          doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("sequential LP equals its dual optimum") {
  Rng rng(23);
  for (int it = 0; it < 200; ++it) {
    const auto inst = random_seq_instance(rng, {.min_n = 1, .max_n = 12, .max_k = 4});
    const auto sol = solve_lp_seq(inst);
    CHECK(sol.objective == doctest::Approx(support::seq_lp_by_dual(inst)).epsilon(1e-9));
    CHECK(is_feasible(inst, sol));
    CHECK(verify_bfs_structure(sol.y).ok());
  }
}

TEST_CASE("ProbeTop-k LP vertices have at most two fractional interviews") {
  Rng rng(29);
  for (int it = 0; it < 300; ++it) {
    const auto inst = random_ptk_instance(rng);
    const auto sol = solve_lp_ptk(inst);
    CHECK(is_feasible(inst, sol));
    const auto report = verify_bfs_structure(sol.y);
    CHECK(report.ok());
    const auto bland = solve_lp_ptk(inst, {.simplex = {.rule = PivotRule::bland}});
    CHECK(bland.objective == doctest::Approx(sol.objective).epsilon(1e-9));
  }
}

TEST_CASE("Bernoulli reduction agrees with the full ProbeTop-k LP") {
  Rng rng(31);
  for (int it = 0; it < 100; ++it) {
    const auto seq = random_seq_instance(rng);
    const auto ptk = seq_to_ptk(seq);
    const auto reduced = solve_lp_ptk(ptk);
    const auto full = solve_lp_ptk(ptk, {.bernoulli_reduction = false});
    CHECK(reduced.objective == doctest::Approx(full.objective).epsilon(1e-9));
    CHECK(reduced.objective == doctest::Approx(solve_lp_seq(seq).objective).epsilon(1e-9));
    CHECK(is_feasible(ptk, reduced));
  }
}

TEST_CASE("tightness instances have the expected LP value") {
  CHECK(solve_lp_ptk(tightness_probetopk(50, 1)).objective == doctest::Approx(1.0));
  CHECK(solve_lp_ptk(tightness_probetopk(40, 3)).objective == doctest::Approx(3.0));
  CHECK(solve_lp_par(tightness_parallel(1, 2)).objective == doctest::Approx(1.0));
  CHECK(solve_lp_par(tightness_parallel(3, 5)).objective == doctest::Approx(3.0));
}

TEST_CASE("parallel LP solutions are feasible and match the batched LP") {
  Rng rng(37);
  for (int it = 0; it < 100; ++it) {
    const auto inst = random_par_instance(rng);
    const auto sol = solve_lp_par(inst);
    CHECK(is_feasible(inst, sol));

    const auto ident = random_par_instance(rng, {.identical = true});
    CHECK(solve_lp_par(ident).objective ==
          doctest::Approx(solve_lp_seq(batched_seq_instance(ident)).objective).epsilon(1e-9));
  }
}

TEST_CASE("closed-form simultaneous LP matches the simplex") {
  Rng rng(41);
  for (int it = 0; it < 200; ++it) {
    const auto inst = random_sim_instance(rng, {.max_n = 12, .max_k = 4, .max_value = 3.0});
    const auto closed = solve_lp_sim(inst);
    const auto generic = solve_lp_sim_generic(inst);
    CHECK(closed.objective == doctest::Approx(generic.objective).epsilon(1e-9));
    CHECK(closed.z <= 0.0);
    int fractional = 0;
    for (double y : closed.y) fractional += y > 1e-12 && y < 1 - 1e-12;
    CHECK(fractional <= 1);
  }
}

TEST_CASE("simultaneous LP flags high-value overflow") {
  const SimInstance inst(1, {0.9, 0.8, 0.5}, {3.0, 2.0, 0.5});
  const auto sol = solve_lp_sim(inst);
  CHECK(sol.high_value_overflow);
  CHECK(sol.y[0] == 1.0);
  CHECK(sol.y[1] == 1.0);
  CHECK(sol.y[2] == 0.0);
  CHECK(sol.z == doctest::Approx(1.0 - 1.7));
  CHECK(sol.objective == doctest::Approx(2.7 + 1.6 - 0.7));
}

TEST_CASE("value order is stable and structure checks flag bad vectors") {
  const std::vector<double> v{1.0, 3.0, 1.0, 3.0};
  CHECK(value_descending_order(v) == std::vector<int>{1, 3, 0, 2});
  CHECK_FALSE(verify_bfs_structure(std::vector<double>{0.5, 0.2, 0.3}).ok());
  CHECK_FALSE(verify_bfs_structure(std::vector<double>{0.5, 0.2}).ok());
  CHECK(verify_bfs_structure(std::vector<double>{0.4, 1.0, 0.6, 0.0}).ok());
}
