#include "alphaleak/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "alphaleak/errors.hpp"
#include "logutil.hpp"

namespace alphaleak {

using detail::kInf;
using detail::log_sum_exp;
using detail::safe_log;

ProbVec ProbVec::validate(std::vector<double> masses,
                          std::vector<std::string> labels) {
  if (masses.empty()) {
    throw InvalidInput("EmptyVector", "a pmf needs at least one mass");
  }
  if (!labels.empty() && labels.size() != masses.size()) {
    throw InvalidInput("DimensionMismatch", "labels length != masses length");
  }
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!(masses[i] >= 0.0)) {
      throw InvalidInput("NegativeMass", "mass at index " + std::to_string(i));
    }
  }
  double sum = std::accumulate(masses.begin(), masses.end(), 0.0);
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw InvalidInput("SumOutOfTolerance",
                       "masses sum to " + std::to_string(sum));
  }
  return ProbVec(std::move(masses), std::move(labels));
}

ProbVec ProbVec::uniform(std::size_t n) {
  if (n == 0) throw InvalidInput("EmptyVector", "uniform(0)");
  return ProbVec(std::vector<double>(n, 1.0 / static_cast<double>(n)), {});
}

std::vector<std::size_t> ProbVec::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (masses_[i] > 0.0) out.push_back(i);
  }
  return out;
}

std::size_t ProbVec::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(masses_.begin(), masses_.end(),
                    [](double m) { return m > 0.0; }));
}

double ProbVec::max_mass() const {
  return *std::max_element(masses_.begin(), masses_.end());
}

Channel Channel::validate(std::vector<std::vector<double>> rows) {
  if (rows.empty()) {
    throw InvalidInput("EmptyVector", "a channel needs at least one row");
  }
  std::vector<ProbVec> validated;
  validated.reserve(rows.size());
  const std::size_t width = rows.front().size();
  for (auto& row : rows) {
    if (row.size() != width) {
      throw InvalidInput("DimensionMismatch", "ragged channel rows");
    }
    validated.push_back(ProbVec::validate(std::move(row)));
  }
  return Channel(std::move(validated));
}

Channel Channel::from_rows(std::vector<ProbVec> rows) {
  if (rows.empty()) {
    throw InvalidInput("EmptyVector", "a channel needs at least one row");
  }
  const std::size_t width = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != width) {
      throw InvalidInput("DimensionMismatch", "ragged channel rows");
    }
  }
  return Channel(std::move(rows));
}

JointView::JointView(ProbVec prior, Channel channel)
    : prior_(std::move(prior)),
      channel_(std::move(channel)),
      output_marginal_(ProbVec::uniform(1)) {
  if (prior_.size() != channel_.input_size()) {
    throw InvalidInput("DimensionMismatch",
                       "prior length != channel input size");
  }
  const std::size_t ny = channel_.output_size();
  const std::size_t nx = channel_.input_size();
  std::vector<double> marginal(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      marginal[y] += prior_[x] * channel_.at(x, y);
    }
  }
  posteriors_.resize(ny);
  for (std::size_t y = 0; y < ny; ++y) {
    if (marginal[y] > 0.0) {
      std::vector<double> post(nx);
      for (std::size_t x = 0; x < nx; ++x) {
        post[x] = prior_[x] * channel_.at(x, y) / marginal[y];
      }
      posteriors_[y] = ProbVec::validate(std::move(post));
    }
  }
  output_marginal_ = ProbVec::validate(std::move(marginal));
}

const ProbVec& JointView::posterior(std::size_t y) const {
  if (y >= posteriors_.size() || !posteriors_[y]) {
    throw InvalidInput("ZeroOutputMass",
                       "no posterior at y = " + std::to_string(y));
  }
  return *posteriors_[y];
}

ProbVec tilt(const ProbVec& p, const Order& a) {
  const std::size_t n = p.size();
  switch (a.tag()) {
    case Order::Tag::One:
      return p;
    case Order::Tag::Zero: {
      const double share = 1.0 / static_cast<double>(p.support_size());
      std::vector<double> out(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (p[i] > 0.0) out[i] = share;
      }
      return ProbVec::validate(std::move(out), p.labels());
    }
    case Order::Tag::Infinity: {
      // Ties at relative tolerance 1e-12; exact float equality is brittle
      // after upstream arithmetic.
      const double cutoff = (1.0 - 1e-12) * p.max_mass();
      std::size_t count = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (p[i] >= cutoff) ++count;
      }
      std::vector<double> out(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (p[i] >= cutoff) out[i] = 1.0 / static_cast<double>(count);
      }
      return ProbVec::validate(std::move(out), p.labels());
    }
    case Order::Tag::Finite: {
      const double alpha = a.alpha();
      std::vector<double> logs(n);
      for (std::size_t i = 0; i < n; ++i) logs[i] = alpha * safe_log(p[i]);
      const double lse = log_sum_exp(logs);
      std::vector<double> out(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (p[i] > 0.0) out[i] = std::exp(logs[i] - lse);
      }
      return ProbVec::validate(std::move(out), p.labels());
    }
  }
  throw std::logic_error("unreachable order tag");
}

JointView induce(const ProbVec& prior, const Channel& channel) {
  return JointView(prior, channel);
}

SubDist restrict_to(const ProbVec& p, const std::vector<std::size_t>& subset) {
  if (subset.empty()) {
    throw InvalidInput("EmptySubset", "restriction to an empty subset");
  }
  SubDist out;
  for (std::size_t i : subset) {
    if (i >= p.size()) {
      throw InvalidInput("DimensionMismatch",
                         "subset index " + std::to_string(i) + " out of range");
    }
    out.masses.push_back(p[i]);
    out.indices.push_back(i);
    out.total += p[i];
  }
  if (out.total <= 0.0) {
    throw InvalidInput("ZeroTotal", "subset carries no probability mass");
  }
  return out;
}

ProbVec binomial_pmf(int n, double p) {
  if (n < 1) throw InvalidInput("InvalidParameter", "binomial needs n >= 1");
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidInput("InvalidParameter", "binomial needs 0 < p < 1");
  }
  // Integer coefficients via Pascal's recurrence, exact in double up to the
  // 2^53 mantissa limit (n <= 56 or so is plenty here).
  std::vector<double> coeff(static_cast<std::size_t>(n) + 1, 0.0);
  coeff[0] = 1.0;
  for (int row = 1; row <= n; ++row) {
    for (int k = row; k >= 1; --k) coeff[k] += coeff[k - 1];
  }
  std::vector<double> pmf(coeff.size());
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    pmf[k] = coeff[k] * std::pow(p, k) * std::pow(1.0 - p, n - k);
    sum += pmf[k];
  }
  for (double& m : pmf) m /= sum;
  return ProbVec::validate(std::move(pmf));
}

}  // namespace alphaleak
