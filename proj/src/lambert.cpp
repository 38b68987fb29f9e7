#include "agecode/lambert.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace agecode {
namespace {

// Above this threshold the equation is solved in log form; below it the
// direct residual w e^w - y is well scaled.
constexpr double kLogFormCutoff = 1e10;

// Newton iteration on h(w) = w + log w - log_y. For large arguments this is
// numerically benign where the direct form overflows.
double solve_log_form(double log_y) {
  double w = log_y - std::log(log_y);
  for (int i = 0; i < 50; ++i) {
    const double h = w + std::log(w) - log_y;
    const double step = h * w / (w + 1.0);
    w -= step;
    if (std::abs(step) <= 1e-16 * w) break;
  }
  return w;
}

}  // namespace

double lambert_w0(double y) {
  if (!(y >= 0.0) || !std::isfinite(y))
    throw std::domain_error("lambert_w0: argument must be finite and nonnegative");
  if (y == 0.0) return 0.0;
  if (y > kLogFormCutoff) return solve_log_form(std::log(y));

  // Halley iteration from w = log(1 + y); the start is exact at both ends of
  // the range and keeps every iterate positive.
  double w = std::log1p(y);
  for (int i = 0; i < 50; ++i) {
    const double e = std::exp(w);
    const double f = w * e - y;
    if (std::abs(f) <= 1e-14 * std::max(1.0, y)) break;
    const double denom = e * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    w -= f / denom;
  }
  return w;
}

double lambert_w0_from_log(double log_y) {
  if (std::isnan(log_y)) throw std::domain_error("lambert_w0_from_log: NaN argument");
  if (log_y == std::numeric_limits<double>::infinity())
    throw std::domain_error("lambert_w0_from_log: argument must be finite");
  if (log_y <= std::log(kLogFormCutoff)) return lambert_w0(std::exp(log_y));
  return solve_log_form(log_y);
}

}  // namespace agecode
