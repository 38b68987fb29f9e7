#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "agecode/pmf.hpp"

namespace agecode {

struct SolverOptions {
  double tol = 1e-9;      // certificate bound on |Kraft sum - 1| and |p(theta*)|
  int max_outer = 10000;  // theta bisection steps
  int max_inner = 200;    // beta bisection steps per theta
};

// Snapshot of the nested iteration, carried by SolveError for diagnosis.
struct SolverState {
  double theta = 0.0;
  double beta = 0.0;
  std::vector<double> lengths;
  double kraft_sum = 0.0;
  double p_value = 0.0;
};

struct CodeDesign {
  std::vector<double> lengths;
  double optimal_age = 0.0;  // theta*, the minimized average age
  double beta_star = 0.0;    // Kraft multiplier at the optimum; NaN for a 1-point support
  double kraft_sum = 0.0;
  double mean_len = 0.0;
  std::optional<std::vector<int>> rounded_lengths;
  std::optional<double> rounded_age;
};

class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, SolverState state);
  const SolverState& last_state() const { return state_; }

 private:
  SolverState state_;
};

// Stationary lengths at fixed (theta, beta):
//   l_i = -log2( P_i / (beta ln2^2) * W0(y_i) ),
//   y_i = beta ln2^2 / P_i * 2^{(-theta + 2 beta ln2 + 2a)/3}.
// Evaluated in log space so extreme multipliers cannot overflow.
std::vector<double> lengths_for(double theta, double beta, const ConditionalPmf& cond);

// Parametric objective at a candidate point:
//   1/2 E[L^2] + E[L]^2 + (2a - theta) E[L] + a^2 - theta a.
// Identity: equals (average_age(lengths) - theta) * (E[L] + a), so its sign
// places theta below or above the age achievable at these lengths.
double p_theta(double theta, std::span<const double> lengths, const ConditionalPmf& cond);

// Minimum of the parametric objective over lengths satisfying the Kraft
// constraint; strictly decreasing in theta, with root theta* = optimal age.
double p_theta_min(double theta, const ConditionalPmf& cond, const SolverOptions& opts = {});

// Stationary branch with the Kraft multiplier at zero: uniform lengths
// (theta - 2a)/3 and objective -theta^2/6 - theta a/3 + a^2/3. Its root
// theta = (sqrt(3) - 1) a forces negative lengths, so optimal designs always
// meet the Kraft sum with equality; kept public as the proof-by-contradiction
// branch and the solver's closed form when the equality multiplier vanishes.
double slack_branch_p(double theta, double a);
double slack_branch_length(double theta, double a);

// Age-minimal real codeword lengths for the conditional pmf: bisection on
// theta, each step solving the Kraft-equality multiplier beta by bracketed
// bisection on a geometric scan. Throws SolveError when brackets or the
// final certificates fail.
CodeDesign solve(const ConditionalPmf& cond, const SolverOptions& opts = {});

// Ceils each length to an integer codeword length; Kraft feasibility is
// preserved and both rounded fields get filled in the copy returned.
CodeDesign round_lengths(const CodeDesign& design, const ConditionalPmf& cond);

}  // namespace agecode
