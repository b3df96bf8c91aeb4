// Shared deterministic generators for the test suites.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "alphaleak/prob.hpp"

namespace testutil {

using alphaleak::Channel;
using alphaleak::ProbVec;

// Dirichlet(1)-style pmf: exponential draws, normalized. Masses are kept
// away from exact zero so full-support assumptions hold unless a test
// zeroes entries on purpose.
inline std::vector<double> random_masses(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> m(n);
  double total = 0.0;
  for (auto& v : m) {
    v = exp1(rng) + 1e-6;
    total += v;
  }
  for (auto& v : m) v /= total;
  return m;
}

inline ProbVec random_pmf(std::mt19937_64& rng, std::size_t n) {
  return ProbVec::validate(random_masses(rng, n));
}

inline Channel random_channel(std::mt19937_64& rng, std::size_t nx,
                              std::size_t ny) {
  std::vector<std::vector<double>> rows(nx);
  for (auto& row : rows) row = random_masses(rng, ny);
  return Channel::validate(rows);
}

}  // namespace testutil
