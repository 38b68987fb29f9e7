#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "agecode/optimizer.hpp"
#include "agecode/pmf.hpp"

namespace agecode {

struct SweepPoint {
  std::size_t k = 0;
  double alpha = 0.0;
  double optimal_age = 0.0;  // NaN when the solver did not converge
  CodeDesign design;
  bool converged = false;
  std::string error;  // empty when converged
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::size_t argmin_k = 0;
  double argmin_alpha = 0.0;
  double min_age = 0.0;
};

// One design per k in 1..n at fixed alpha. Solver failures flag their point
// and the sweep continues; the argmin is over converged points, ties going to
// the smaller k. threads = 0 picks the hardware concurrency.
SweepResult sweep_k(const SourcePmf& pmf, const SystemParams& params, double alpha = 0.0,
                    unsigned threads = 0, const SolverOptions& opts = {});

// One design per alpha at fixed k; points come back sorted by alpha, ties in
// the argmin going to the smaller alpha.
SweepResult sweep_alpha(const SourcePmf& pmf, const SystemParams& params, std::size_t k,
                        std::span<const double> alphas, unsigned threads = 0,
                        const SolverOptions& opts = {});

// 0, 0.05, ..., 1.
std::vector<double> default_alpha_grid();

}  // namespace agecode
