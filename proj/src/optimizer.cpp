#include "agecode/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "agecode/age.hpp"
#include "agecode/lambert.hpp"

namespace agecode {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kBetaScanLo = 0x1p-40;
constexpr double kBetaScanHi = 0x1p+40;

double kraft_sum_of(std::span<const double> lengths) {
  double s = 0.0;
  for (double l : lengths) s += std::exp2(-l);
  return s;
}

std::vector<double> stationary_lengths(double theta, double beta, std::span<const double> probs,
                                       double a) {
  const double log_beta = std::log(beta);
  const double log_ln2_sq = 2.0 * std::log(kLn2);
  const double shift = kLn2 * (-theta + 2.0 * beta * kLn2 + 2.0 * a) / 3.0;
  std::vector<double> lengths(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double log_p = std::log(probs[i]);
    const double w = lambert_w0_from_log(log_beta + log_ln2_sq - log_p + shift);
    lengths[i] = -(log_p + std::log(w) - log_beta - log_ln2_sq) / kLn2;
  }
  return lengths;
}

double p_value_of(double theta, std::span<const double> lengths, std::span<const double> probs,
                  double a) {
  double el = 0.0;
  double el2 = 0.0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    el += probs[i] * lengths[i];
    el2 += probs[i] * lengths[i] * lengths[i];
  }
  return 0.5 * el2 + el * el + (2.0 * a - theta) * el + a * a - theta * a;
}

enum class InnerOutcome { kEquality, kSlack, kUnbracketed };

struct InnerResult {
  InnerOutcome outcome = InnerOutcome::kUnbracketed;
  double beta = 0.0;
  std::vector<double> lengths;
  double kraft = 0.0;
};

// Solves the Kraft-equality multiplier at fixed theta. g(beta) = Kraft sum at
// the stationary lengths minus one; g -> k 2^{-(theta-2a)/3} - 1 as beta -> 0
// and g -> -1/3 as beta -> inf, so a positive g at the scan floor guarantees
// a sign change inside the scan range for any admissible theta.
class KraftEqualitySolver {
 public:
  KraftEqualitySolver(std::span<const double> probs, double a, const SolverOptions& opts)
      : probs_(probs), a_(a), opts_(opts) {}

  InnerResult solve(double theta) {
    if (!scan_checked_) {
      scan_checked_ = true;
      fine_scan_ = sign_changes(theta) > 1;
    }
    const double factor = fine_scan_ ? std::pow(2.0, 0.125) : 2.0;

    double lo = kBetaScanLo;
    double glo = g(theta, lo);
    if (glo <= 0.0) return {InnerOutcome::kSlack, 0.0, {}, 0.0};

    bool bracketed = false;
    double hi = lo;
    for (double b = lo * factor; b <= kBetaScanHi * (1.0 + 1e-9); b *= factor) {
      hi = b;
      if (g(theta, hi) <= 0.0) {
        bracketed = true;
        break;
      }
      lo = hi;
    }
    if (!bracketed) return {InnerOutcome::kUnbracketed, 0.0, {}, 0.0};

    for (int i = 0; i < opts_.max_inner; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (g(theta, mid) > 0.0)
        lo = mid;
      else
        hi = mid;
      if (hi - lo <= 8.0 * std::numeric_limits<double>::epsilon() * hi) break;
    }
    InnerResult res;
    res.outcome = InnerOutcome::kEquality;
    res.beta = 0.5 * (lo + hi);
    res.lengths = stationary_lengths(theta, res.beta, probs_, a_);
    res.kraft = kraft_sum_of(res.lengths);
    return res;
  }

 private:
  double g(double theta, double beta) const {
    return kraft_sum_of(stationary_lengths(theta, beta, probs_, a_)) - 1.0;
  }

  // One full coarse pass; more than one sign change switches every later
  // scan to a fine grid that keeps the first crossing.
  int sign_changes(double theta) const {
    int changes = 0;
    bool prev = g(theta, kBetaScanLo) > 0.0;
    for (double b = kBetaScanLo * 2.0; b <= kBetaScanHi * (1.0 + 1e-9); b *= 2.0) {
      const bool cur = g(theta, b) > 0.0;
      if (cur != prev) ++changes;
      prev = cur;
    }
    return changes;
  }

  std::span<const double> probs_;
  double a_;
  const SolverOptions& opts_;
  bool scan_checked_ = false;
  bool fine_scan_ = false;
};

void validate_options(const SolverOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("SolverOptions: tol must be positive");
  if (opts.max_outer < 1 || opts.max_inner < 1)
    throw std::invalid_argument("SolverOptions: iteration caps must be positive");
}

void validate_support(const ConditionalPmf& cond) {
  for (std::size_t i = 0; i < cond.size(); ++i)
    if (cond[i] <= 0.0)
      throw std::invalid_argument("zero-probability symbol in support");
}

}  // namespace

SolveError::SolveError(const std::string& what, SolverState state)
    : std::runtime_error(what), state_(std::move(state)) {}

std::vector<double> lengths_for(double theta, double beta, const ConditionalPmf& cond) {
  validate_support(cond);
  if (!std::isfinite(theta)) throw std::invalid_argument("lengths_for: theta must be finite");
  if (!std::isfinite(beta) || beta <= 0.0)
    throw std::invalid_argument("lengths_for: beta must be positive");
  return stationary_lengths(theta, beta, cond.probs(), cond.a());
}

double p_theta(double theta, std::span<const double> lengths, const ConditionalPmf& cond) {
  if (lengths.size() != cond.size())
    throw std::invalid_argument("p_theta: lengths do not match the support");
  return p_value_of(theta, lengths, cond.probs(), cond.a());
}

double slack_branch_p(double theta, double a) {
  return -theta * theta / 6.0 - theta * a / 3.0 + a * a / 3.0;
}

double slack_branch_length(double theta, double a) { return (theta - 2.0 * a) / 3.0; }

double p_theta_min(double theta, const ConditionalPmf& cond, const SolverOptions& opts) {
  validate_options(opts);
  validate_support(cond);
  const double a = cond.a();
  if (cond.size() == 1) return a * a - theta * a;  // single codeword pinned at length zero
  KraftEqualitySolver inner(cond.probs(), a, opts);
  const InnerResult res = inner.solve(theta);
  switch (res.outcome) {
    case InnerOutcome::kEquality:
      return p_value_of(theta, res.lengths, cond.probs(), a);
    case InnerOutcome::kSlack:
      return slack_branch_p(theta, a);
    default:
      throw SolveError("p_theta_min: no Kraft-equality bracket in the multiplier scan",
                       SolverState{theta, 0.0, {}, 0.0, 0.0});
  }
}

CodeDesign solve(const ConditionalPmf& cond, const SolverOptions& opts) {
  validate_options(opts);
  validate_support(cond);
  const double a = cond.a();
  const auto& probs = cond.probs();
  const std::size_t k = cond.size();

  if (k == 1) {
    // Kraft equality with one codeword forces length zero; the age is then a.
    CodeDesign d;
    d.lengths = {0.0};
    d.optimal_age = a;
    d.beta_star = std::numeric_limits<double>::quiet_NaN();
    d.kraft_sum = 1.0;
    d.mean_len = 0.0;
    return d;
  }

  KraftEqualitySolver inner(probs, a, opts);
  SolverState last;

  const auto eval = [&](double theta) -> double {
    const InnerResult res = inner.solve(theta);
    switch (res.outcome) {
      case InnerOutcome::kEquality: {
        const double p = p_value_of(theta, res.lengths, probs, a);
        last = SolverState{theta, res.beta, res.lengths, res.kraft, p};
        return p;
      }
      case InnerOutcome::kSlack:
        return slack_branch_p(theta, a);
      default:
        throw SolveError("solve: no Kraft-equality bracket in the multiplier scan", last);
    }
  };

  // Entropy of the conditional pmf lower-bounds E[L], hence the optimal age;
  // p is positive there. The upper end expands until p turns negative.
  double entropy = 0.0;
  for (double p : probs) entropy -= p * std::log2(p);
  double lo = entropy;
  double hi = a + static_cast<double>(k);
  if (eval(lo) <= 0.0) {
    lo = 0.0;
    if (eval(lo) <= 0.0) throw SolveError("solve: no positive lower bracket for theta", last);
  }
  int expand = 0;
  while (eval(hi) > 0.0) {
    hi = lo + 2.0 * (hi - lo);
    if (++expand > 200) throw SolveError("solve: no negative upper bracket for theta", last);
  }

  for (int i = 0; i < opts.max_outer; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi)) break;
  }

  const double theta_star = 0.5 * (lo + hi);
  const double p_star = eval(theta_star);
  if (last.theta != theta_star)
    throw SolveError("solve: optimum fell in the slack branch", last);
  if (std::abs(p_star) > opts.tol || std::abs(last.kraft_sum - 1.0) > opts.tol)
    throw SolveError("solve: certificates exceed tolerance", last);

  CodeDesign d;
  d.lengths = last.lengths;
  d.optimal_age = theta_star;
  d.beta_star = last.beta;
  d.kraft_sum = last.kraft_sum;
  d.mean_len = code_moments(cond, d.lengths).mean_len;
  return d;
}

CodeDesign round_lengths(const CodeDesign& design, const ConditionalPmf& cond) {
  if (design.lengths.size() != cond.size())
    throw std::invalid_argument("round_lengths: design does not match the support");
  CodeDesign out = design;
  std::vector<int> rounded(design.lengths.size());
  std::vector<double> as_double(design.lengths.size());
  for (std::size_t i = 0; i < design.lengths.size(); ++i) {
    const double l = design.lengths[i];
    if (!(l >= 0.0)) throw std::invalid_argument("round_lengths: lengths must be nonnegative");
    rounded[i] = static_cast<int>(std::ceil(l));
    as_double[i] = static_cast<double>(rounded[i]);
  }
  out.rounded_lengths = std::move(rounded);
  out.rounded_age = average_age(cond, as_double).delta;
  return out;
}

}  // namespace agecode
