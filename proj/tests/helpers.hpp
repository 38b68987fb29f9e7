#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "agecode/pmf.hpp"

namespace testutil {

// Deterministic generator for property tests; seeds are fixed per test so
// failures replay.
inline std::mt19937 make_gen(unsigned seed) { return std::mt19937(seed); }

inline agecode::SourcePmf random_pmf(std::mt19937& gen, std::size_t max_n) {
  std::uniform_int_distribution<std::size_t> size_dist(1, max_n);
  std::uniform_real_distribution<double> weight_dist(0.05, 1.0);
  const std::size_t n = size_dist(gen);
  std::vector<double> w(n);
  for (double& v : w) v = weight_dist(gen);
  return agecode::SourcePmf::normalized(std::move(w));
}

inline double random_lambda(std::mt19937& gen, double lo = 0.1, double hi = 10.0) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(gen));
}

}  // namespace testutil
