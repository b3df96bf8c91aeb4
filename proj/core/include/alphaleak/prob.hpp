#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "alphaleak/order.hpp"

namespace alphaleak {

// Normalization tolerance on input pmfs and channel rows.
inline constexpr double kSumTolerance = 1e-9;

// Finite probability mass function over an indexed alphabet. Masses are kept
// exactly as validated; they are never renormalized.
class ProbVec {
 public:
  // validate_pmf: accepts nonnegative masses summing to 1 within 1e-9.
  // Errors: NegativeMass(index), SumOutOfTolerance(actual_sum), EmptyVector.
  static ProbVec validate(std::vector<double> masses,
                          std::vector<std::string> labels = {});

  static ProbVec uniform(std::size_t n);

  std::size_t size() const { return masses_.size(); }
  double operator[](std::size_t i) const { return masses_[i]; }
  const std::vector<double>& masses() const { return masses_; }
  const std::vector<std::string>& labels() const { return labels_; }

  // Indices with strictly positive mass.
  std::vector<std::size_t> support() const;
  std::size_t support_size() const;

  double max_mass() const;

 private:
  explicit ProbVec(std::vector<double> masses, std::vector<std::string> labels)
      : masses_(std::move(masses)), labels_(std::move(labels)) {}

  std::vector<double> masses_;
  std::vector<std::string> labels_;
};

// Unnormalized restriction of a pmf to a subset, together with its total
// mass and the originating alphabet positions.
struct SubDist {
  std::vector<double> masses;
  std::vector<std::size_t> indices;
  double total = 0.0;
};

// Row-stochastic transition matrix, entry (x, y) = P(y|x).
class Channel {
 public:
  // Errors: EmptyVector, NegativeMass, SumOutOfTolerance (per row),
  // DimensionMismatch on ragged rows.
  static Channel validate(std::vector<std::vector<double>> rows);
  static Channel from_rows(std::vector<ProbVec> rows);

  std::size_t input_size() const { return rows_.size(); }
  std::size_t output_size() const { return rows_.front().size(); }
  double at(std::size_t x, std::size_t y) const { return rows_[x][y]; }
  const ProbVec& row(std::size_t x) const { return rows_[x]; }

 private:
  explicit Channel(std::vector<ProbVec> rows) : rows_(std::move(rows)) {}

  std::vector<ProbVec> rows_;
};

// Prior + channel with the induced output marginal and posterior family.
// Posteriors for outputs with zero marginal mass are absent.
class JointView {
 public:
  JointView(ProbVec prior, Channel channel);

  const ProbVec& prior() const { return prior_; }
  const Channel& channel() const { return channel_; }
  const ProbVec& output_marginal() const { return output_marginal_; }

  bool has_posterior(std::size_t y) const { return posteriors_[y].has_value(); }
  // Errors: ZeroOutputMass(y).
  const ProbVec& posterior(std::size_t y) const;

 private:
  ProbVec prior_;
  Channel channel_;
  ProbVec output_marginal_;
  std::vector<std::optional<ProbVec>> posteriors_;
};

// The scaled distribution normalizing P^alpha, computed in log domain.
// Zero: uniform on supp(p). One: identity. Infinity: uniform on the argmax
// set of p, with ties admitted at relative tolerance 1e-12.
ProbVec tilt(const ProbVec& p, const Order& a);

// Bayes inversion. Errors: DimensionMismatch.
JointView induce(const ProbVec& prior, const Channel& channel);

// Errors: EmptySubset, ZeroTotal, DimensionMismatch on out-of-range indices.
SubDist restrict_to(const ProbVec& p, const std::vector<std::size_t>& subset);

// Binomial(n, p) pmf from exact integer binomial coefficients, then
// normalized in floating point.
ProbVec binomial_pmf(int n, double p);

}  // namespace alphaleak
