#include "alphaleak/leakage.hpp"

#include <cmath>
#include <random>

#include "alphaleak/errors.hpp"
#include "logutil.hpp"

namespace alphaleak {

using detail::kInf;
using detail::log_sum_exp;
using detail::safe_log;

namespace {

void require_prior_matches(const ProbVec& prior, const Channel& ch) {
  if (prior.size() != ch.input_size()) {
    throw InvalidInput("DimensionMismatch",
                       "prior length != channel input size");
  }
}

double pml_from_jv(const JointView& jv, std::size_t y) {
  const ProbVec& prior = jv.prior();
  const ProbVec& post = jv.posterior(y);
  const double divergence_form =
      renyi_divergence(post, prior, Order::infinity());
  // Channel form log max_{x in supp(prior)} P(y|x)/P_Y(y).
  double max_w = 0.0;
  for (std::size_t x = 0; x < prior.size(); ++x) {
    if (prior[x] > 0.0) max_w = std::max(max_w, jv.channel().at(x, y));
  }
  const double channel_form =
      std::log(max_w) - std::log(jv.output_marginal()[y]);
  check_identity(std::abs(divergence_form - channel_form) <= 1e-12,
                 "PML divergence form vs channel form");
  return divergence_form;
}

double maximal_leakage_from_jv(const JointView& jv) {
  const ProbVec& prior = jv.prior();
  const ProbVec& py = jv.output_marginal();
  double sum_max = 0.0;
  for (std::size_t y = 0; y < py.size(); ++y) {
    double max_w = 0.0;
    for (std::size_t x = 0; x < prior.size(); ++x) {
      if (prior[x] > 0.0) max_w = std::max(max_w, jv.channel().at(x, y));
    }
    sum_max += max_w;
  }
  const double direct = std::log(sum_max);
  double mean_exp_pml = 0.0;
  for (std::size_t y = 0; y < py.size(); ++y) {
    if (py[y] > 0.0) mean_exp_pml += py[y] * std::exp(pml_from_jv(jv, y));
  }
  const double fmean_form = std::log(mean_exp_pml);
  check_identity(std::abs(direct - fmean_form) <= 1e-10,
                 "maximal leakage vs f~-mean of PML");
  return direct;
}

// f~-mean over outputs of per-outcome minimized cross entropies, extended
// tags by their limit forms.
double posterior_uncertainty_via_minima(const JointView& jv, const Order& a) {
  const ProbVec& py = jv.output_marginal();
  std::vector<double> minima(py.size(), 0.0);
  for (std::size_t y = 0; y < py.size(); ++y) {
    if (py[y] > 0.0) {
      const ProbVec& post = jv.posterior(y);
      minima[y] = cross_entropy(post, tilt(post, a), a);
    }
  }
  switch (a.tag()) {
    case Order::Tag::Finite:
      return kn_mean(minima, py, a, KNVariant::FTilde);
    case Order::Tag::One: {
      double s = 0.0;
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] > 0.0) s += py[y] * minima[y];
      }
      return s;
    }
    case Order::Tag::Zero: {
      double best = -kInf;
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] > 0.0) best = std::max(best, minima[y]);
      }
      return best;
    }
    case Order::Tag::Infinity: {
      double s = 0.0;
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] > 0.0) s += py[y] * std::exp(-minima[y]);
      }
      return -std::log(s);
    }
  }
  throw std::logic_error("unreachable order tag");
}

double sibson_finite(const ProbVec& prior, const Channel& ch, double alpha) {
  std::vector<double> outer;
  outer.reserve(ch.output_size());
  for (std::size_t y = 0; y < ch.output_size(); ++y) {
    std::vector<double> inner;
    inner.reserve(prior.size());
    for (std::size_t x = 0; x < prior.size(); ++x) {
      const double w = ch.at(x, y);
      if (prior[x] > 0.0 && w > 0.0) {
        inner.push_back(std::log(prior[x]) + alpha * std::log(w));
      }
    }
    const double t = log_sum_exp(inner);
    if (t != -kInf) outer.push_back(t / alpha);
  }
  return alpha / (alpha - 1.0) * log_sum_exp(outer);
}

double shannon_mi(const ProbVec& prior, const Channel& ch) {
  const JointView jv(prior, ch);
  const ProbVec& py = jv.output_marginal();
  double s = 0.0;
  for (std::size_t x = 0; x < prior.size(); ++x) {
    if (prior[x] <= 0.0) continue;
    for (std::size_t y = 0; y < ch.output_size(); ++y) {
      const double w = ch.at(x, y);
      if (w > 0.0) s += prior[x] * w * std::log(w / py[y]);
    }
  }
  return s;
}

}  // namespace

LeakageReport alpha_leakage(const ProbVec& prior, const Channel& ch,
                            const Order& a) {
  require_prior_matches(prior, ch);
  const JointView jv(prior, ch);
  const double prior_uncertainty = renyi_entropy(prior, a);
  const double posterior_uncertainty = arimoto_conditional_entropy(jv, a);
  const double leakage = prior_uncertainty - posterior_uncertainty;

  const double via_minima =
      cross_entropy(prior, tilt(prior, a), a) -
      posterior_uncertainty_via_minima(jv, a);
  check_identity(std::abs(leakage - via_minima) <= 1e-10,
                 "alpha-leakage: entropy-difference vs f~-mean route");

  LeakageReport report{a, prior_uncertainty, posterior_uncertainty, leakage, {}};
  const ProbVec& py = jv.output_marginal();
  for (std::size_t y = 0; y < py.size(); ++y) {
    if (py[y] > 0.0) {
      report.per_outcome.emplace_back(
          y, renyi_divergence(jv.posterior(y), prior, a));
    }
  }
  return report;
}

MeasureValue sibson_mi(const ProbVec& prior, const Channel& ch,
                       const Order& a) {
  require_prior_matches(prior, ch);
  switch (a.tag()) {
    case Order::Tag::Finite:
      return sibson_finite(prior, ch, a.alpha());
    case Order::Tag::One:
      return shannon_mi(prior, ch);
    case Order::Tag::Infinity:
      return maximal_leakage(prior, ch);
    case Order::Tag::Zero: {
      // No closed form at exactly 0; numerical limit with an agreement check
      // across three probe orders.
      const double probes[] = {1e-3, 1e-4, 1e-5};
      double values[3];
      for (int i = 0; i < 3; ++i) {
        values[i] = sibson_finite(prior, ch, probes[i]);
      }
      double spread = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          spread = std::max(spread, std::abs(values[i] - values[j]));
        }
      }
      if (spread >= 1e-3) {
        throw ComputeFailure("NonConvergence",
                             "Sibson limit probes at alpha -> 0 spread " +
                                 std::to_string(spread));
      }
      return values[2];
    }
  }
  throw std::logic_error("unreachable order tag");
}

MeasureValue elementary_leakage(const ProbVec& prior, const Channel& ch,
                                std::size_t y, const Order& a) {
  require_prior_matches(prior, ch);
  const JointView jv(prior, ch);
  const ProbVec& post = jv.posterior(y);
  const double divergence_form = renyi_divergence(post, prior, a);
  if (a.is_finite()) {
    const double alpha = a.alpha();
    std::vector<double> terms;
    terms.reserve(prior.size());
    for (std::size_t x = 0; x < prior.size(); ++x) {
      if (prior[x] > 0.0 && post[x] > 0.0) {
        terms.push_back(std::log(prior[x]) +
                        alpha * (std::log(post[x]) - std::log(prior[x])));
      }
    }
    const double raw_form = log_sum_exp(terms) / (alpha - 1.0);
    check_identity(
        divergence_form == raw_form ||
            std::abs(divergence_form - raw_form) <= 1e-12,
        "elementary leakage: raw form vs Renyi divergence");
  }
  return divergence_form;
}

MeasureValue pml(const ProbVec& prior, const Channel& ch, std::size_t y) {
  require_prior_matches(prior, ch);
  const JointView jv(prior, ch);
  return pml_from_jv(jv, y);
}

MeasureValue maximal_leakage(const ProbVec& prior, const Channel& ch) {
  require_prior_matches(prior, ch);
  const JointView jv(prior, ch);
  return maximal_leakage_from_jv(jv);
}

MeasureValue alpha_lift(const ProbVec& prior, const Channel& ch, std::size_t y,
                        const Order& a) {
  require_prior_matches(prior, ch);
  const JointView jv(prior, ch);
  switch (a.tag()) {
    case Order::Tag::Zero:
    case Order::Tag::One:
      throw InvalidInput("UnsupportedOrder",
                         "alpha-lift is defined for finite orders and inf");
    case Order::Tag::Infinity:
      return std::exp(pml_from_jv(jv, y));
    case Order::Tag::Finite: {
      const double alpha = a.alpha();
      const ProbVec& post = jv.posterior(y);
      std::vector<double> terms;
      terms.reserve(prior.size());
      for (std::size_t x = 0; x < prior.size(); ++x) {
        if (prior[x] > 0.0 && post[x] > 0.0) {
          terms.push_back(std::log(prior[x]) +
                          alpha * (std::log(post[x]) - std::log(prior[x])));
        }
      }
      return std::exp(log_sum_exp(terms) / alpha);
    }
  }
  throw std::logic_error("unreachable order tag");
}

MeasureValue liao_leakage(const ProbVec& prior, const Channel& ch,
                          const Order& a) {
  require_prior_matches(prior, ch);
  if (a.is_finite() && a.alpha() < 1.0) {
    throw InvalidInput("UnsupportedOrder",
                       "gain-ratio leakage needs alpha >= 1");
  }
  const JointView jv(prior, ch);
  const ProbVec& py = jv.output_marginal();
  switch (a.tag()) {
    case Order::Tag::Zero:
      throw InvalidInput("UnsupportedOrder",
                         "gain-ratio leakage needs alpha >= 1");
    case Order::Tag::One: {
      // Limit of the gain ratio: expected minimized log-loss reduction.
      double posterior = 0.0;
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] > 0.0) {
          const ProbVec& post = jv.posterior(y);
          posterior += py[y] * cross_entropy(post, tilt(post, a), a);
        }
      }
      return cross_entropy(prior, tilt(prior, a), a) - posterior;
    }
    case Order::Tag::Infinity: {
      double s = 0.0;
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] > 0.0) s += py[y] * jv.posterior(y).max_mass();
      }
      return std::log(s) - std::log(prior.max_mass());
    }
    case Order::Tag::Finite: {
      const double alpha = a.alpha();
      // log (sum_x p^alpha)^{1/alpha} for the prior and each posterior.
      auto log_alpha_norm = [alpha](const ProbVec& p) {
        std::vector<double> terms;
        terms.reserve(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
          if (p[i] > 0.0) terms.push_back(alpha * std::log(p[i]));
        }
        return log_sum_exp(terms) / alpha;
      };
      std::vector<double> outer;
      outer.reserve(py.size());
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] > 0.0) {
          outer.push_back(std::log(py[y]) + log_alpha_norm(jv.posterior(y)));
        }
      }
      return alpha / (alpha - 1.0) *
             (log_sum_exp(outer) - log_alpha_norm(prior));
    }
  }
  throw std::logic_error("unreachable order tag");
}

Channel optimal_estimator(const JointView& jv, const Order& a) {
  std::vector<ProbVec> rows;
  rows.reserve(jv.channel().output_size());
  for (std::size_t y = 0; y < jv.channel().output_size(); ++y) {
    if (jv.has_posterior(y)) {
      rows.push_back(tilt(jv.posterior(y), a));
    } else {
      rows.push_back(ProbVec::uniform(jv.prior().size()));
    }
  }
  return Channel::from_rows(std::move(rows));
}

CapacityResult renyi_capacity(const Channel& ch, const Order& a,
                              const CapacityOptions& opts) {
  if (a.tag() == Order::Tag::Zero) {
    throw InvalidInput("UnsupportedOrder",
                       "capacity at order 0 has no closed objective");
  }
  const std::size_t n = ch.input_size();
  if (a.tag() == Order::Tag::Infinity) {
    // Maximal leakage depends on the prior support only; any full-support
    // prior attains the supremum.
    const ProbVec uniform = ProbVec::uniform(n);
    return {uniform, maximal_leakage(uniform, ch)};
  }

  auto objective = [&](const ProbVec& p) { return sibson_mi(p, ch, a); };

  auto gradient = [&](const ProbVec& p) {
    std::vector<double> g(n, 0.0);
    if (a.tag() == Order::Tag::One) {
      const JointView jv(p, ch);
      const ProbVec& py = jv.output_marginal();
      for (std::size_t x = 0; x < n; ++x) {
        double d = 0.0;
        for (std::size_t y = 0; y < ch.output_size(); ++y) {
          const double w = ch.at(x, y);
          if (w > 0.0) d += w * std::log(w / py[y]);
        }
        g[x] = d - 1.0;
      }
      return g;
    }
    const double alpha = a.alpha();
    // S_y = sum_x p_x W^alpha; dJ/dp_x = (1/(alpha-1)) sum_y S_y^{(1-alpha)/alpha} W^alpha / F.
    std::vector<double> log_s(ch.output_size(), -kInf);
    for (std::size_t y = 0; y < ch.output_size(); ++y) {
      std::vector<double> inner;
      for (std::size_t x = 0; x < n; ++x) {
        const double w = ch.at(x, y);
        if (p[x] > 0.0 && w > 0.0) {
          inner.push_back(std::log(p[x]) + alpha * std::log(w));
        }
      }
      log_s[y] = log_sum_exp(inner);
    }
    std::vector<double> outer;
    for (double ls : log_s) {
      if (ls != -kInf) outer.push_back(ls / alpha);
    }
    const double log_f = log_sum_exp(outer);
    for (std::size_t x = 0; x < n; ++x) {
      double d = 0.0;
      for (std::size_t y = 0; y < ch.output_size(); ++y) {
        const double w = ch.at(x, y);
        if (w > 0.0 && log_s[y] != -kInf) {
          d += std::exp((1.0 - alpha) / alpha * log_s[y] +
                        alpha * std::log(w) - log_f);
        }
      }
      g[x] = d / (alpha - 1.0);
    }
    return g;
  };

  // Euclidean projection onto the simplex (sort-based).
  auto project = [n](std::vector<double> v) {
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumsum = 0.0;
    double theta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cumsum += sorted[i];
      const double t = (cumsum - 1.0) / static_cast<double>(i + 1);
      if (sorted[i] - t > 0.0) theta = t;
    }
    for (double& x : v) x = std::max(0.0, x - theta);
    double s = 0.0;
    for (double x : v) s += x;
    for (double& x : v) x /= s;
    return v;
  };

  std::mt19937_64 rng(opts.seed);
  std::vector<std::vector<double>> starts;
  starts.push_back(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  std::exponential_distribution<double> expo(1.0);
  for (int r = 1; r < opts.restarts; ++r) {
    std::vector<double> v(n);
    double s = 0.0;
    for (double& x : v) {
      x = expo(rng);
      s += x;
    }
    for (double& x : v) x /= s;
    // Bias toward a vertex.
    const std::size_t vertex = rng() % n;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = 0.25 * v[i] + (i == vertex ? 0.75 : 0.0);
    }
    starts.push_back(std::move(v));
  }

  bool any_converged = false;
  ProbVec best_prior = ProbVec::uniform(n);
  double best_value = -kInf;
  double last_residual = kInf;
  for (const auto& start : starts) {
    std::vector<double> p = start;
    double value = objective(ProbVec::validate(p));
    double step = 1.0;
    bool converged = false;
    for (int it = 0; it < opts.max_iters; ++it) {
      const ProbVec pv = ProbVec::validate(p);
      const std::vector<double> g = gradient(pv);
      bool moved = false;
      double move = 0.0;
      while (step > 1e-16) {
        std::vector<double> cand(n);
        for (std::size_t i = 0; i < n; ++i) cand[i] = p[i] + step * g[i];
        cand = project(std::move(cand));
        const double cand_value = objective(ProbVec::validate(cand));
        if (cand_value >= value) {
          move = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            move = std::max(move, std::abs(cand[i] - p[i]));
          }
          p = std::move(cand);
          value = cand_value;
          step *= 1.5;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved || move < opts.tol) {
        converged = true;
        break;
      }
      last_residual = move;
    }
    if (converged) any_converged = true;
    if (value > best_value) {
      best_value = value;
      best_prior = ProbVec::validate(p);
    }
  }
  if (!any_converged) {
    throw ComputeFailure("NonConvergence",
                         "capacity ascent residual " +
                             std::to_string(last_residual) + " after " +
                             std::to_string(opts.max_iters) + " iterations");
  }
  return {best_prior, best_value};
}

}  // namespace alphaleak
