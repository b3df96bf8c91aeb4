#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "alphaleak/leakage.hpp"
#include "alphaleak/measures.hpp"

namespace alphaleak {

// Rational grid on the probability simplex: masses k_i / steps with
// sum k_i = steps. `budget` caps the number of grid points.
struct GridSpec {
  std::size_t dimension = 0;
  std::size_t steps = 0;  // resolution 1/steps
  std::uint64_t budget = 10'000'000;
};

struct GridMin {
  ProbVec argmin;
  MeasureValue min;
};

// Number of grid points C(dimension + steps - 1, dimension - 1), saturating
// at uint64 max.
std::uint64_t grid_point_count(std::size_t dimension, std::size_t steps);

// Minimum of cross_entropy(p, q, a) over the entire rational grid. The
// cross-entropy branches are all separable per coordinate, so the exhaustive
// minimum is computed exactly by dynamic programming over per-coordinate
// allocations instead of visiting points one by one; unit tests pin the
// equivalence against literal enumeration. Errors: BudgetExceeded,
// DimensionMismatch.
GridMin simplex_grid_min(const ProbVec& p, const Order& a,
                         const GridSpec& grid);

// First-order minimization of cross_entropy(p, ., a) on the simplex from the
// uniform start, finite orders only. Uses multiplicative (mirror) updates
// with backtracking; stops when the fixed-point residual drops below tol.
// Errors: UnsupportedOrder, NonConvergence.
GridMin projected_gradient_min(const ProbVec& p, const Order& a, double tol);

struct LimitProbe {
  double limit_estimate;
  double spread;  // max pairwise spread across probe evaluations
};

// Evaluates `measure` at each finite probe order; returns the last value and
// the maximum pairwise spread. The caller asserts agreement with the
// closed-form extended branch.
LimitProbe limit_probe(const std::function<double(const Order&)>& measure,
                       const std::vector<double>& probe_alphas);

// Attribute kernel P_{U|X} (row x is a distribution over U) composed with a
// fixed prior and channel: the induced P_U and channel U -> Y, restricted to
// attribute values with positive mass.
struct AttributeModel {
  ProbVec attribute_marginal;
  Channel attribute_channel;
};

AttributeModel compose_attribute(const ProbVec& prior, const Channel& ch,
                                 const std::vector<ProbVec>& kernel_rows);

struct SupLeakageResult {
  std::vector<ProbVec> best_kernel;  // row x: P_{U|X=x}
  MeasureValue best_value;
};

// Randomized + local search for sup over P_{U|X} of alpha_leakage(U -> Y).
// Seeded and deterministic; the identity kernel U = X is always tried when
// u_size admits it. The Sibson upper bound is asserted on every candidate.
SupLeakageResult sup_leakage_search(const ProbVec& prior, const Channel& ch,
                                    const Order& a, std::size_t u_size,
                                    std::size_t budget,
                                    std::uint64_t seed = 20250825);

}  // namespace alphaleak
