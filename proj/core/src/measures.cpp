#include "alphaleak/measures.hpp"

#include <cmath>

#include "alphaleak/errors.hpp"
#include "logutil.hpp"

namespace alphaleak {

using detail::kInf;
using detail::log_sum_exp;
using detail::safe_log;

namespace {

void require_same_size(const ProbVec& p, const ProbVec& q) {
  if (p.size() != q.size()) {
    throw InvalidInput("DimensionMismatch", "distributions differ in length");
  }
}

double shannon_entropy(const ProbVec& p) {
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
  }
  return h;
}

}  // namespace

MeasureValue kn_mean(std::span<const double> values, const ProbVec& weights,
                     const Order& a, KNVariant variant) {
  if (values.size() != weights.size()) {
    throw InvalidInput("DimensionMismatch", "values length != weights length");
  }
  switch (a.tag()) {
    case Order::Tag::Zero:
    case Order::Tag::Infinity:
      throw InvalidInput("UnsupportedOrder",
                         "kn_mean handles Finite and One orders only");
    case Order::Tag::One: {
      double s = 0.0;
      for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) s += weights[i] * values[i];
      }
      return s;
    }
    case Order::Tag::Finite:
      break;
  }
  const double alpha = a.alpha();
  const double c =
      variant == KNVariant::F ? 1.0 - alpha : (1.0 - alpha) / alpha;
  std::vector<double> terms;
  terms.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) terms.push_back(std::log(weights[i]) + c * values[i]);
  }
  return log_sum_exp(terms) / c;
}

MeasureValue renyi_entropy(const ProbVec& p, const Order& a) {
  switch (a.tag()) {
    case Order::Tag::Zero:
      return std::log(static_cast<double>(p.support_size()));
    case Order::Tag::One:
      return shannon_entropy(p);
    case Order::Tag::Infinity:
      return -std::log(p.max_mass());
    case Order::Tag::Finite: {
      const double alpha = a.alpha();
      std::vector<double> terms;
      terms.reserve(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) terms.push_back(alpha * std::log(p[i]));
      }
      return log_sum_exp(terms) / (1.0 - alpha);
    }
  }
  throw std::logic_error("unreachable order tag");
}

MeasureValue subset_uncertainty(const SubDist& s, const ProbVec& full,
                                const Order& a, KNVariant variant) {
  if (!a.is_finite()) {
    throw InvalidInput("UnsupportedOrder",
                       "subset_uncertainty handles Finite orders only");
  }
  const double alpha = a.alpha();
  const double log_total = std::log(s.total);
  std::vector<double> terms;
  terms.reserve(s.masses.size());
  if (variant == KNVariant::F) {
    for (double m : s.masses) {
      if (m > 0.0) terms.push_back(alpha * std::log(m) - log_total);
    }
    return log_sum_exp(terms) / (1.0 - alpha);
  }
  const ProbVec tilted = tilt(full, a);
  const double e = (alpha - 1.0) / alpha;
  for (std::size_t k = 0; k < s.masses.size(); ++k) {
    const double m = s.masses[k];
    if (m > 0.0) {
      terms.push_back(std::log(m) - log_total +
                      e * std::log(tilted[s.indices[k]]));
    }
  }
  return alpha / (1.0 - alpha) * log_sum_exp(terms);
}

MeasureValue cross_entropy(const ProbVec& p, const ProbVec& q, const Order& a) {
  require_same_size(p, q);
  switch (a.tag()) {
    case Order::Tag::Zero: {
      double min_q = kInf;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) min_q = std::min(min_q, q[i]);
      }
      return -safe_log(min_q);
    }
    case Order::Tag::One: {
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
          if (q[i] <= 0.0) return kInf;
          s -= p[i] * std::log(q[i]);
        }
      }
      return s;
    }
    case Order::Tag::Infinity: {
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * q[i];
      return -safe_log(s);
    }
    case Order::Tag::Finite: {
      const double alpha = a.alpha();
      const double e = (alpha - 1.0) / alpha;
      std::vector<double> terms;
      terms.reserve(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) terms.push_back(std::log(p[i]) + e * safe_log(q[i]));
      }
      // alpha/(1-alpha) * log sum; the sign conventions make a divergent sum
      // come out as +inf on both sides of alpha = 1.
      return alpha / (1.0 - alpha) * log_sum_exp(terms);
    }
  }
  throw std::logic_error("unreachable order tag");
}

MinCrossEntropy min_cross_entropy(const ProbVec& p, const Order& a) {
  return {tilt(p, a), renyi_entropy(p, a)};
}

MeasureValue renyi_divergence(const ProbVec& p, const ProbVec& q,
                              const Order& a) {
  require_same_size(p, q);
  switch (a.tag()) {
    case Order::Tag::Zero: {
      double mass = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) mass += q[i];
      }
      return -safe_log(mass);
    }
    case Order::Tag::One: {
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
          if (q[i] <= 0.0) return kInf;
          s += p[i] * std::log(p[i] / q[i]);
        }
      }
      return s;
    }
    case Order::Tag::Infinity: {
      double max_ratio = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
          if (q[i] <= 0.0) return kInf;
          max_ratio = std::max(max_ratio, p[i] / q[i]);
        }
      }
      return std::log(max_ratio);
    }
    case Order::Tag::Finite: {
      const double alpha = a.alpha();
      std::vector<double> terms;
      terms.reserve(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
          terms.push_back(alpha * std::log(p[i]) +
                          (1.0 - alpha) * safe_log(q[i]));
        }
      }
      return log_sum_exp(terms) / (alpha - 1.0);
    }
  }
  throw std::logic_error("unreachable order tag");
}

MeasureValue alpha_loss(const ProbVec& p, const ProbVec& q, const Order& a) {
  return std::exp(cross_entropy(p, q, a));
}

MeasureValue liao_loss(const ProbVec& p, const ProbVec& q, const Order& a) {
  require_same_size(p, q);
  switch (a.tag()) {
    case Order::Tag::Zero:
      throw InvalidInput("UnsupportedOrder",
                         "elementary alpha-loss is undefined at order 0");
    case Order::Tag::One: {
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
          if (q[i] <= 0.0) return kInf;
          s -= p[i] * std::log(q[i]);
        }
      }
      return s;
    }
    case Order::Tag::Infinity: {
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * q[i];
      return 1.0 - s;
    }
    case Order::Tag::Finite: {
      const double alpha = a.alpha();
      if (alpha < 1.0) {
        throw InvalidInput("UnsupportedOrder",
                           "elementary alpha-loss needs alpha >= 1");
      }
      const double coef = alpha / (alpha - 1.0);
      const double e = (alpha - 1.0) / alpha;
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) s += p[i] * coef * (1.0 - std::pow(q[i], e));
      }
      return s;
    }
  }
  throw std::logic_error("unreachable order tag");
}

MeasureValue renyi_probability(const ProbVec& p, const Order& a) {
  return std::exp(-renyi_entropy(p, a));
}

namespace {

// -log of the conditional Renyi probability, kept in log domain throughout.
double neg_log_cond_renyi_probability(const JointView& jv, const Order& a) {
  const ProbVec& py = jv.output_marginal();
  switch (a.tag()) {
    case Order::Tag::Zero: {
      double min_r = kInf;
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] > 0.0) {
          min_r = std::min(
              min_r, 1.0 / static_cast<double>(jv.posterior(y).support_size()));
        }
      }
      return -std::log(min_r);
    }
    case Order::Tag::One: {
      double s = 0.0;
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] > 0.0) {
          s += py[y] * std::log(renyi_probability(jv.posterior(y), a));
        }
      }
      return -s;
    }
    case Order::Tag::Infinity: {
      double s = 0.0;
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] > 0.0) s += py[y] * jv.posterior(y).max_mass();
      }
      return -std::log(s);
    }
    case Order::Tag::Finite: {
      const double alpha = a.alpha();
      const double e = (alpha - 1.0) / alpha;
      std::vector<double> terms;
      terms.reserve(py.size());
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] > 0.0) {
          terms.push_back(std::log(py[y]) +
                          e * std::log(renyi_probability(jv.posterior(y), a)));
        }
      }
      return -(log_sum_exp(terms) / e);
    }
  }
  throw std::logic_error("unreachable order tag");
}

}  // namespace

MeasureValue arimoto_conditional_entropy(const JointView& jv, const Order& a) {
  const ProbVec& py = jv.output_marginal();
  double value = 0.0;
  switch (a.tag()) {
    case Order::Tag::Zero: {
      // Analytical limit max_y log|supp|; the (1/b) LSE(b h_y) structure
      // converges to a max and is exactly representable.
      double best = 0.0;
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] > 0.0) {
          best = std::max(
              best,
              std::log(static_cast<double>(jv.posterior(y).support_size())));
        }
      }
      value = best;
      break;
    }
    case Order::Tag::One: {
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] > 0.0) {
          value += py[y] * renyi_entropy(jv.posterior(y), Order::one());
        }
      }
      break;
    }
    case Order::Tag::Infinity: {
      double s = 0.0;
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] > 0.0) s += py[y] * jv.posterior(y).max_mass();
      }
      value = -std::log(s);
      break;
    }
    case Order::Tag::Finite: {
      std::vector<double> entropies(py.size(), 0.0);
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] > 0.0) entropies[y] = renyi_entropy(jv.posterior(y), a);
      }
      value = kn_mean(entropies, py, a, KNVariant::FTilde);
      break;
    }
  }
  const double via_renyi_prob = neg_log_cond_renyi_probability(jv, a);
  check_identity(std::abs(value - via_renyi_prob) <= 1e-12,
                 "Arimoto conditional entropy vs conditional Renyi probability");
  return value;
}

MeasureValue conditional_renyi_probability(const JointView& jv,
                                           const Order& a) {
  return std::exp(-neg_log_cond_renyi_probability(jv, a));
}

MeasureValue alternate_cross_entropy_vv(const ProbVec& p, const ProbVec& q,
                                        const Order& a) {
  require_same_size(p, q);
  if (!a.is_finite()) {
    throw InvalidInput("UnsupportedOrder",
                       "alternate cross entropy is defined for finite orders");
  }
  const double alpha = a.alpha();
  std::vector<double> terms;
  terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      terms.push_back(std::log(p[i]) + (alpha - 1.0) * safe_log(q[i]));
    }
  }
  return log_sum_exp(terms) / (1.0 - alpha);
}

}  // namespace alphaleak
