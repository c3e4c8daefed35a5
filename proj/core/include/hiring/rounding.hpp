#pragma once

// Dependent rounding schemes: the two-fractional scheme used on vertex
// solutions of the sequential LPs, and bipartite (GKPS) rounding for the
// parallel LP.

#include <cstdint>
#include <span>
#include <vector>

#include "hiring/matrix.hpp"
#include "hiring/random.hpp"

namespace hiring {

using BinaryVector = std::vector<std::uint8_t>;
using BinaryMatrix = Matrix<std::uint8_t>;

inline constexpr double kSnapTolerance = 1e-12;

struct RoundingOutcome {
  BinaryVector bits;
  double probability = 1.0;
};

/// Rounds a vector with at most two fractional entries (summing to one when
/// there are two). Marginals are preserved and the pair, if any, is perfectly
/// negatively correlated. Throws InvalidInput otherwise.
BinaryVector simple_dr(std::span<const double> y, Rng& rng);

/// All outcomes of `simple_dr` with their probabilities (one or two records).
std::vector<RoundingOutcome> dr_outcomes(std::span<const double> y);

/// Bipartite dependent rounding of a rows x cols weight matrix in [0,1]:
/// marginals are preserved, every row and column sum lands on the floor or
/// ceiling of its fractional degree, and same-vertex edges are negatively
/// correlated.
BinaryMatrix gkps_round(const Matrix<double>& weights, Rng& rng);

}  // namespace hiring
