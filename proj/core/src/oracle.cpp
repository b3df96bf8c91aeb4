#include "alphaleak/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "alphaleak/errors.hpp"
#include "logutil.hpp"

namespace alphaleak {

using detail::kInf;
using detail::log_sum_exp;

std::uint64_t grid_point_count(std::size_t dimension, std::size_t steps) {
  // C(steps + dimension - 1, dimension - 1), saturating.
  unsigned __int128 c = 1;
  for (std::size_t i = 1; i < dimension; ++i) {
    c = c * (steps + i) / i;
    if (c > static_cast<unsigned __int128>(UINT64_MAX)) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

enum class Combine { Sum, Min };

// Per-coordinate contribution tables and combination rules that order grid
// points exactly as cross_entropy does for each order branch.
struct GridObjective {
  std::vector<double> table;  // table[k], shared shape across coordinates
  Combine combine = Combine::Sum;
  bool maximize = false;
};

GridObjective make_grid_objective(const Order& a, std::size_t steps) {
  GridObjective obj;
  obj.table.resize(steps + 1);
  switch (a.tag()) {
    case Order::Tag::Zero:
      // value = -log(min_{supp p} k/S): maximize the min allocation.
      for (std::size_t k = 0; k <= steps; ++k) {
        obj.table[k] = static_cast<double>(k);
      }
      obj.combine = Combine::Min;
      obj.maximize = true;
      break;
    case Order::Tag::One:
      // value = sum p (-log k) + log S: minimize the weighted sum.
      for (std::size_t k = 0; k <= steps; ++k) {
        obj.table[k] = k == 0 ? kInf : -std::log(static_cast<double>(k));
      }
      break;
    case Order::Tag::Infinity:
      // value = -log(sum p k / S): maximize the weighted sum.
      for (std::size_t k = 0; k <= steps; ++k) {
        obj.table[k] = static_cast<double>(k);
      }
      obj.maximize = true;
      break;
    case Order::Tag::Finite: {
      const double alpha = a.alpha();
      const double e = (alpha - 1.0) / alpha;
      for (std::size_t k = 0; k <= steps; ++k) {
        obj.table[k] = k == 0 ? (e < 0.0 ? kInf : 0.0)
                              : std::pow(static_cast<double>(k), e);
      }
      // Coefficient alpha/(1-alpha) flips the direction across alpha = 1.
      obj.maximize = alpha > 1.0;
      break;
    }
  }
  return obj;
}

}  // namespace

GridMin simplex_grid_min(const ProbVec& p, const Order& a,
                         const GridSpec& grid) {
  const std::size_t n = p.size();
  if (grid.dimension != n) {
    throw InvalidInput("DimensionMismatch", "grid dimension != pmf length");
  }
  if (grid.steps == 0) {
    throw InvalidInput("InvalidParameter", "grid needs at least one step");
  }
  const std::uint64_t points = grid_point_count(n, grid.steps);
  if (points > grid.budget) {
    throw ComputeFailure("BudgetExceeded",
                         std::to_string(points) + " grid points exceed budget " +
                             std::to_string(grid.budget));
  }
  const std::size_t steps = grid.steps;
  const GridObjective obj = make_grid_objective(a, steps);

  // contribution of allocating k units to coordinate i.
  auto contribution = [&](std::size_t i, std::size_t k) {
    if (obj.combine == Combine::Min) {
      return p[i] > 0.0 ? obj.table[k] : kInf;  // +inf is neutral for min
    }
    return p[i] > 0.0 ? p[i] * obj.table[k] : 0.0;
  };
  auto merge = [&](double a1, double a2) {
    return obj.combine == Combine::Min ? std::min(a1, a2) : a1 + a2;
  };
  auto better = [&](double cand, double best) {
    return obj.maximize ? cand > best : cand < best;
  };

  // The objective is separable per coordinate, so the exhaustive minimum
  // over all C(S+n-1, n-1) allocations reduces to a DP over the remaining
  // budget; every grid point is still accounted for.
  const double worst = obj.maximize ? -kInf : kInf;
  std::vector<std::vector<double>> best(n, std::vector<double>(steps + 1, worst));
  std::vector<std::vector<std::uint32_t>> choice(
      n, std::vector<std::uint32_t>(steps + 1, 0));
  for (std::size_t r = 0; r <= steps; ++r) {
    best[n - 1][r] = contribution(n - 1, r);
    choice[n - 1][r] = static_cast<std::uint32_t>(r);
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    for (std::size_t r = 0; r <= steps; ++r) {
      double b = worst;
      std::uint32_t bk = 0;
      for (std::size_t k = 0; k <= r; ++k) {
        const double cand = merge(contribution(i, k), best[i + 1][r - k]);
        if (b == worst || better(cand, b)) {
          b = cand;
          bk = static_cast<std::uint32_t>(k);
        }
      }
      best[i][r] = b;
      choice[i][r] = bk;
    }
  }

  std::vector<double> q(n, 0.0);
  std::size_t remaining = steps;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::uint32_t k = choice[i][remaining];
    q[i] = static_cast<double>(k) / static_cast<double>(steps);
    remaining -= k;
  }
  q[n - 1] = static_cast<double>(remaining) / static_cast<double>(steps);
  ProbVec argmin = ProbVec::validate(std::move(q));
  const double min_value = cross_entropy(p, argmin, a);
  return {std::move(argmin), min_value};
}

GridMin projected_gradient_min(const ProbVec& p, const Order& a, double tol) {
  if (!a.is_finite()) {
    throw InvalidInput("UnsupportedOrder",
                       "gradient minimization handles finite orders only");
  }
  const double alpha = a.alpha();
  const double e = (alpha - 1.0) / alpha;
  const std::size_t n = p.size();
  const std::vector<std::size_t> supp = p.support();

  // T(q) = sum_{supp p} p q^e; minimizing the cross entropy means maximizing
  // T for alpha > 1 and minimizing it for alpha < 1.
  auto log_t = [&](const std::vector<double>& lq) {
    std::vector<double> terms;
    terms.reserve(supp.size());
    for (std::size_t j = 0; j < supp.size(); ++j) {
      terms.push_back(std::log(p[supp[j]]) + e * lq[j]);
    }
    return log_sum_exp(terms);
  };
  const double direction = alpha > 1.0 ? 1.0 : -1.0;

  // Damped multiplicative first-order iteration on log masses: the update
  // direction log p + (e-1) log q is the log of the objective gradient, and
  // its fixed point is exactly the stationarity condition on the simplex.
  std::vector<double> lq(supp.size(),
                         -std::log(static_cast<double>(supp.size())));
  double eta = alpha / 2.0;
  const double eta0 = eta;
  double value = log_t(lq);
  const int max_iters = 200000;
  bool converged = false;
  for (int it = 0; it < max_iters && !converged; ++it) {
    std::vector<double> prev_q(supp.size());
    for (std::size_t j = 0; j < supp.size(); ++j) prev_q[j] = std::exp(lq[j]);
    bool accepted = false;
    for (int bt = 0; bt < 60 && !accepted; ++bt) {
      std::vector<double> cand(supp.size());
      for (std::size_t j = 0; j < supp.size(); ++j) {
        cand[j] = lq[j] + eta * (std::log(p[supp[j]]) + (e - 1.0) * lq[j]);
      }
      const double norm = log_sum_exp(cand);
      for (double& v : cand) v -= norm;
      const double cand_value = log_t(cand);
      if (direction * (cand_value - value) >= -1e-14) {
        double residual = 0.0;
        for (std::size_t j = 0; j < supp.size(); ++j) {
          residual = std::max(residual,
                              std::abs(std::exp(cand[j]) - prev_q[j]));
        }
        lq = std::move(cand);
        value = cand_value;
        eta = std::min(eta * 1.25, eta0);
        accepted = true;
        if (residual < tol) converged = true;
      } else {
        eta *= 0.5;
      }
    }
    if (!accepted) break;
  }
  if (!converged) {
    throw ComputeFailure("NonConvergence",
                         "first-order minimization stalled before reaching "
                         "the requested tolerance");
  }
  std::vector<double> q(n, 0.0);
  double sum = 0.0;
  for (std::size_t j = 0; j < supp.size(); ++j) {
    q[supp[j]] = std::exp(lq[j]);
    sum += q[supp[j]];
  }
  for (double& v : q) v /= sum;
  ProbVec argmin = ProbVec::validate(std::move(q));
  const double min_value = cross_entropy(p, argmin, a);
  return {std::move(argmin), min_value};
}

LimitProbe limit_probe(const std::function<double(const Order&)>& measure,
                       const std::vector<double>& probe_alphas) {
  std::vector<double> values;
  values.reserve(probe_alphas.size());
  for (double alpha : probe_alphas) {
    values.push_back(measure(Order::finite(alpha)));
  }
  double spread = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      spread = std::max(spread, std::abs(values[i] - values[j]));
    }
  }
  return {values.empty() ? 0.0 : values.back(), spread};
}

AttributeModel compose_attribute(const ProbVec& prior, const Channel& ch,
                                 const std::vector<ProbVec>& kernel_rows) {
  if (kernel_rows.size() != prior.size()) {
    throw InvalidInput("DimensionMismatch",
                       "kernel needs one row per channel input");
  }
  const std::size_t u_size = kernel_rows.front().size();
  const std::size_t ny = ch.output_size();
  std::vector<double> pu(u_size, 0.0);
  for (std::size_t x = 0; x < prior.size(); ++x) {
    if (kernel_rows[x].size() != u_size) {
      throw InvalidInput("DimensionMismatch", "ragged kernel rows");
    }
    for (std::size_t u = 0; u < u_size; ++u) {
      pu[u] += prior[x] * kernel_rows[x][u];
    }
  }
  // Restrict to attribute values with positive mass.
  std::vector<double> marginal;
  std::vector<std::vector<double>> rows;
  for (std::size_t u = 0; u < u_size; ++u) {
    if (pu[u] <= 0.0) continue;
    std::vector<double> row(ny, 0.0);
    for (std::size_t x = 0; x < prior.size(); ++x) {
      const double joint = prior[x] * kernel_rows[x][u];
      if (joint > 0.0) {
        for (std::size_t y = 0; y < ny; ++y) {
          row[y] += joint / pu[u] * ch.at(x, y);
        }
      }
    }
    marginal.push_back(pu[u]);
    rows.push_back(std::move(row));
  }
  return {ProbVec::validate(std::move(marginal)),
          Channel::validate(std::move(rows))};
}

SupLeakageResult sup_leakage_search(const ProbVec& prior, const Channel& ch,
                                    const Order& a, std::size_t u_size,
                                    std::size_t budget, std::uint64_t seed) {
  if (u_size < 1) {
    throw InvalidInput("InvalidParameter", "attribute alphabet must be nonempty");
  }
  const std::size_t nx = prior.size();
  const double sibson_bound = sibson_mi(prior, ch, a);
  // The Sibson value bounds the attribute leakage only from order one
  // upwards; below one the Arimoto form can exceed it (the two mutual
  // informations swap order there), so the assertion is gated.
  const bool bound_applies =
      a.tag() == Order::Tag::One || a.tag() == Order::Tag::Infinity ||
      (a.is_finite() && a.alpha() > 1.0);

  auto evaluate = [&](const std::vector<ProbVec>& kernel) {
    const AttributeModel model = compose_attribute(prior, ch, kernel);
    const double value =
        alpha_leakage(model.attribute_marginal, model.attribute_channel, a)
            .leakage;
    if (bound_applies) {
      check_identity(value <= sibson_bound + 1e-9,
                     "attribute leakage exceeds the Sibson bound");
    }
    return value;
  };

  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  auto random_row = [&]() {
    std::vector<double> row(u_size);
    double s = 0.0;
    for (double& v : row) {
      v = expo(rng);
      s += v;
    }
    for (double& v : row) v /= s;
    return ProbVec::validate(std::move(row));
  };

  std::vector<ProbVec> best_kernel;
  double best_value = -kInf;
  std::size_t evals = 0;
  auto consider = [&](std::vector<ProbVec> kernel) {
    if (evals >= budget) return;
    ++evals;
    const double value = evaluate(kernel);
    if (value > best_value) {
      best_value = value;
      best_kernel = std::move(kernel);
    }
  };

  if (u_size >= nx) {
    // Identity embedding U = X.
    std::vector<ProbVec> identity;
    for (std::size_t x = 0; x < nx; ++x) {
      std::vector<double> row(u_size, 0.0);
      row[x] = 1.0;
      identity.push_back(ProbVec::validate(std::move(row)));
    }
    consider(std::move(identity));
  }

  // Random restarts for the first half of the budget.
  while (evals < std::max<std::size_t>(1, budget / 2)) {
    std::vector<ProbVec> kernel;
    kernel.reserve(nx);
    for (std::size_t x = 0; x < nx; ++x) kernel.push_back(random_row());
    consider(std::move(kernel));
  }

  // Local perturbations of the incumbent with a shrinking radius.
  double sigma = 0.5;
  while (evals < budget && !best_kernel.empty()) {
    std::vector<ProbVec> kernel;
    kernel.reserve(nx);
    for (std::size_t x = 0; x < nx; ++x) {
      std::vector<double> row(u_size);
      double s = 0.0;
      for (std::size_t u = 0; u < u_size; ++u) {
        row[u] = best_kernel[x][u] + sigma * expo(rng);
        s += row[u];
      }
      for (double& v : row) v /= s;
      kernel.push_back(ProbVec::validate(std::move(row)));
    }
    const double before = best_value;
    consider(std::move(kernel));
    if (best_value <= before) sigma = std::max(sigma * 0.97, 1e-3);
  }
  return {std::move(best_kernel), best_value};
}

}  // namespace alphaleak
