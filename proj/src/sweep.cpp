#include "agecode/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

namespace agecode {
namespace {

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  unsigned t = threads ? threads : std::thread::hardware_concurrency();
  t = std::max(1u, std::min<unsigned>(t, static_cast<unsigned>(count)));
  if (t == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (unsigned w = 0; w < t; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

SweepPoint solve_point(const SourcePmf& pmf, const SystemParams& params, std::size_t k,
                       double alpha, const SolverOptions& opts) {
  SweepPoint pt;
  pt.k = k;
  pt.alpha = alpha;
  try {
    const ConditionalPmf cond = conditional_pmf(pmf, EncodingPolicy{k, alpha}, params);
    pt.design = solve(cond, opts);
    pt.optimal_age = pt.design.optimal_age;
    pt.converged = true;
  } catch (const std::exception& e) {
    pt.optimal_age = std::numeric_limits<double>::quiet_NaN();
    pt.converged = false;
    pt.error = e.what();
  }
  return pt;
}

// Points are already in output order, so the first strict improvement wins
// and ties stay with the earlier (smaller k, then smaller alpha) point.
void fill_argmin(SweepResult& result) {
  result.min_age = std::numeric_limits<double>::quiet_NaN();
  bool found = false;
  for (const SweepPoint& pt : result.points) {
    if (!pt.converged) continue;
    if (!found || pt.optimal_age < result.min_age) {
      found = true;
      result.min_age = pt.optimal_age;
      result.argmin_k = pt.k;
      result.argmin_alpha = pt.alpha;
    }
  }
  if (!found) throw std::runtime_error("sweep: no point converged");
}

}  // namespace

SweepResult sweep_k(const SourcePmf& pmf, const SystemParams& params, double alpha,
                    unsigned threads, const SolverOptions& opts) {
  params.validate();
  EncodingPolicy{1, alpha}.validate(pmf.size());
  const std::size_t n = pmf.size();
  SweepResult result;
  result.points.resize(n);
  parallel_for(n, threads, [&](std::size_t i) {
    result.points[i] = solve_point(pmf, params, i + 1, alpha, opts);
  });
  fill_argmin(result);
  return result;
}

SweepResult sweep_alpha(const SourcePmf& pmf, const SystemParams& params, std::size_t k,
                        std::span<const double> alphas, unsigned threads,
                        const SolverOptions& opts) {
  params.validate();
  EncodingPolicy{k, 0.0}.validate(pmf.size());
  if (alphas.empty()) throw std::invalid_argument("sweep_alpha: empty alpha grid");
  for (double alpha : alphas)
    if (!(alpha >= 0.0 && alpha <= 1.0))
      throw std::invalid_argument("sweep_alpha: alpha must be in [0, 1]");

  std::vector<double> grid(alphas.begin(), alphas.end());
  std::sort(grid.begin(), grid.end());

  SweepResult result;
  result.points.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    result.points[i] = solve_point(pmf, params, k, grid[i], opts);
  });
  fill_argmin(result);
  return result;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid(21);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i) / 20.0;
  return grid;
}

}  // namespace agecode
