#include "agecode/age.hpp"

#include <cmath>
#include <stdexcept>

namespace agecode {

std::pair<double, double> moments_of_m(double q) {
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("moments_of_m: q must be in (0, 1]");
  return {1.0 / q, (2.0 - q) / (q * q)};
}

CodeMoments code_moments(const ConditionalPmf& cond, std::span<const double> lengths) {
  if (lengths.size() != cond.size())
    throw std::invalid_argument("code_moments: lengths do not match the support");
  CodeMoments m;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const double l = lengths[i];
    if (!std::isfinite(l)) throw std::invalid_argument("code_moments: lengths must be finite");
    m.mean_len += cond[i] * l;
    m.second_moment += cond[i] * l * l;
  }
  return m;
}

CycleMoments cycle_moments(const CodeMoments& code, double q, double lambda) {
  if (!std::isfinite(lambda) || lambda <= 0.0)
    throw std::invalid_argument("cycle_moments: lambda must be positive");
  const auto [em, em2] = moments_of_m(q);
  const double ez = 1.0 / lambda;
  const double ez2 = 2.0 / (lambda * lambda);
  CycleMoments c;
  c.mean_cycle = code.mean_len + em * ez;
  c.second_moment_cycle =
      code.second_moment + 2.0 * em * ez * code.mean_len + em * ez2 + (em2 - em) * ez * ez;
  return c;
}

double age_from_moments(const CodeMoments& code, double a) {
  if (!std::isfinite(a) || a <= 0.0)
    throw std::invalid_argument("age_from_moments: a must be positive");
  const double el = code.mean_len;
  const double el2 = code.second_moment;
  return (el2 + 2.0 * a * el + 2.0 * a * a) / (2.0 * (el + a)) + el;
}

AgeReport average_age(const ConditionalPmf& cond, std::span<const double> lengths) {
  for (double l : lengths)
    if (!(l >= 0.0))
      throw std::invalid_argument("average_age: lengths must be nonnegative");
  AgeReport report;
  report.code_moments = code_moments(cond, lengths);
  report.q = cond.q();
  report.a = cond.a();
  report.delta = age_from_moments(report.code_moments, cond.a());
  return report;
}

double average_age_via_cycles(const CycleMoments& cycle, const CodeMoments& code) {
  if (!(cycle.mean_cycle > 0.0))
    throw std::invalid_argument("average_age_via_cycles: mean cycle must be positive");
  return cycle.second_moment_cycle / (2.0 * cycle.mean_cycle) + code.mean_len;
}

}  // namespace agecode
