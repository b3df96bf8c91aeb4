#pragma once

#include <span>

#include "alphaleak/prob.hpp"

namespace alphaleak {

// Extended real in nats: finite (>= 0 up to roundoff) or +infinity.
using MeasureValue = double;

// Kolmogorov-Nagumo mean variant: f(t) = exp((1-a)t) or
// f~(t) = exp(((1-a)/a)t).
enum class KNVariant { F, FTilde };

// f^{-1}(sum_i w_i f(v_i)) in log domain. Degenerates to the arithmetic mean
// at order One. Errors: DimensionMismatch, UnsupportedOrder (Zero, Infinity).
MeasureValue kn_mean(std::span<const double> values, const ProbVec& weights,
                     const Order& a, KNVariant variant);

// Renyi entropy. Zero: log|supp|. One: Shannon. Infinity: -log max.
MeasureValue renyi_entropy(const ProbVec& p, const Order& a);

// Uncertainty of a generalized (sub-)distribution. Variant F weighs
// elementary uncertainties of P itself, FTilde those of the tilted
// distribution of the full pmf. Finite orders only.
MeasureValue subset_uncertainty(const SubDist& s, const ProbVec& full,
                                const Order& a, KNVariant variant);

// alpha-cross entropy, all four branches. +infinity exactly when the
// defining expression diverges. Errors: DimensionMismatch.
MeasureValue cross_entropy(const ProbVec& p, const ProbVec& q, const Order& a);

struct MinCrossEntropy {
  ProbVec minimizer;
  MeasureValue minimum;
};

// Closed-form minimization over the decision distribution: the minimizer is
// the tilted distribution and the minimum is the Renyi entropy.
MinCrossEntropy min_cross_entropy(const ProbVec& p, const Order& a);

// Renyi divergence D_a(p||q). Errors: DimensionMismatch.
MeasureValue renyi_divergence(const ProbVec& p, const ProbVec& q,
                              const Order& a);

// Multiplicative alpha-loss, exp(cross_entropy) at every order.
MeasureValue alpha_loss(const ProbVec& p, const ProbVec& q, const Order& a);

// Expected elementary loss (a/(a-1))(1 - q^{(a-1)/a}); log-loss at One,
// expected 0-1 loss at Infinity. Errors: UnsupportedOrder for Zero and
// Finite(a < 1).
MeasureValue liao_loss(const ProbVec& p, const ProbVec& q, const Order& a);

// Renyi probability exp(-H_a(p)), in (0, 1].
MeasureValue renyi_probability(const ProbVec& p, const Order& a);

// Arimoto conditional entropy, the f~-mean over outputs of per-posterior
// Renyi entropies. Zero uses the analytical limit max_y log|supp|.
MeasureValue arimoto_conditional_entropy(const JointView& jv, const Order& a);

// Conditional Renyi probability: the (a-1)/a-order power mean over outputs
// of per-posterior Renyi probabilities. -log of this equals the Arimoto
// conditional entropy.
MeasureValue conditional_renyi_probability(const JointView& jv,
                                           const Order& a);

// The (1/(1-a)) log sum p q^{a-1} cross-entropy variant, kept for
// comparison; its minimum over q is not the Renyi entropy. Finite orders
// only. Errors: UnsupportedOrder.
MeasureValue alternate_cross_entropy_vv(const ProbVec& p, const ProbVec& q,
                                        const Order& a);

}  // namespace alphaleak
