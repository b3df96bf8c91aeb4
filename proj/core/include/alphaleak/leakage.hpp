#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "alphaleak/measures.hpp"

namespace alphaleak {

struct LeakageReport {
  Order order;
  MeasureValue prior_uncertainty;
  MeasureValue posterior_uncertainty;
  MeasureValue leakage;
  // (y, D_a(P_{X|Y=y} || P_X)) for outputs with positive marginal mass.
  std::vector<std::pair<std::size_t, MeasureValue>> per_outcome;
};

// alpha-leakage = H_a(prior) - Arimoto conditional entropy. Also evaluated
// through the f~-mean of per-outcome minimized cross entropies; the two
// routes are checked against each other at 1e-10.
LeakageReport alpha_leakage(const ProbVec& prior, const Channel& ch,
                            const Order& a);

// Sibson mutual information. Infinity coincides with maximal leakage; Zero
// is a numerical limit probe (NonConvergence if the probes disagree).
MeasureValue sibson_mi(const ProbVec& prior, const Channel& ch,
                       const Order& a);

// Y-elementary leakage D_a(P_{X|Y=y} || P_X). For finite orders the raw
// (1/(a-1)) log sum P_X (P_{X|Y}/P_X)^a form is checked at 1e-12.
// Errors: ZeroOutputMass(y).
MeasureValue elementary_leakage(const ProbVec& prior, const Channel& ch,
                                std::size_t y, const Order& a);

// Pointwise maximal leakage: elementary leakage at Infinity; the channel
// form log max_x P(y|x)/P_Y(y) is checked at 1e-12.
MeasureValue pml(const ProbVec& prior, const Channel& ch, std::size_t y);

// log sum_y max_{x in supp(prior)} P(y|x); checked at 1e-10 against the
// f~-mean of PML over the output marginal.
MeasureValue maximal_leakage(const ProbVec& prior, const Channel& ch);

// Multiplicative per-outcome leakage (sum_x P_X (P_{X|Y}/P_X)^a)^{1/a};
// exp(pml) at Infinity. Errors: ZeroOutputMass, UnsupportedOrder (Zero, One).
MeasureValue alpha_lift(const ProbVec& prior, const Channel& ch, std::size_t y,
                        const Order& a);

struct CapacityOptions {
  int restarts = 8;
  int max_iters = 20000;
  double tol = 1e-10;
  std::uint64_t seed = 20250825;
};

struct CapacityResult {
  ProbVec best_prior;
  MeasureValue value;
};

// Channel capacity of order alpha: sup over input distributions of Sibson
// mutual information, by projected gradient ascent with deterministic
// restarts (uniform is always one of them). Errors: UnsupportedOrder(Zero),
// NonConvergence.
CapacityResult renyi_capacity(const Channel& ch, const Order& a,
                              const CapacityOptions& opts = {});

// Ratio-of-maximized-expected-gains leakage, defined for One, Infinity and
// Finite(a > 1); equals alpha_leakage on that range.
MeasureValue liao_leakage(const ProbVec& prior, const Channel& ch,
                          const Order& a);

// Optimal decision P_{X^|Y}: row y is the tilt of the posterior at y
// (MAP at Infinity, uniform-on-support at Zero). Rows for outputs with zero
// marginal mass are uniform placeholders.
Channel optimal_estimator(const JointView& jv, const Order& a);

}  // namespace alphaleak
