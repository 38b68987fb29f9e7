#include "agecode/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace agecode {
namespace {

// Compensated summation; pmf validation tolerances are tighter than what
// naive accumulation guarantees for large n.
double kahan_sum(const std::vector<double>& xs, std::size_t count) {
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double y = xs[i] - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

SourcePmf::SourcePmf(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("SourcePmf: empty pmf");
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!std::isfinite(p) || p <= 0.0)
      throw std::invalid_argument("SourcePmf: probabilities must be finite and positive");
    if (i > 0 && probs_[i - 1] < p)
      throw std::invalid_argument("SourcePmf: probabilities must be non-increasing");
  }
  const double sum = kahan_sum(probs_, probs_.size());
  if (std::abs(sum - 1.0) > kSumTol)
    throw std::invalid_argument("SourcePmf: probabilities must sum to one");
}

SourcePmf SourcePmf::zipf(std::size_t n, double s) {
  if (n == 0) throw std::invalid_argument("zipf: n must be positive");
  if (!std::isfinite(s) || s < 0.0)
    throw std::invalid_argument("zipf: exponent must be finite and nonnegative");
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::pow(static_cast<double>(i + 1), -s);
  const double total = kahan_sum(w, n);
  for (double& v : w) v /= total;
  return SourcePmf(std::move(w));
}

SourcePmf SourcePmf::normalized(std::vector<double> weights) {
  if (weights.empty()) throw std::invalid_argument("normalized: empty weights");
  for (double v : weights)
    if (!std::isfinite(v) || v <= 0.0)
      throw std::invalid_argument("normalized: weights must be finite and positive");
  std::sort(weights.begin(), weights.end(), std::greater<double>());
  const double total = kahan_sum(weights, weights.size());
  for (double& v : weights) v /= total;
  return SourcePmf(std::move(weights));
}

SourcePmf SourcePmf::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("SourcePmf: cannot open " + path);
  return parse(in);
}

SourcePmf SourcePmf::parse(std::istream& in) {
  std::vector<double> probs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t consumed = 0;
    double value = 0.0;
    try {
      value = std::stod(line, &consumed);
    } catch (const std::exception&) {
      throw std::invalid_argument("SourcePmf: malformed number at line " + std::to_string(lineno));
    }
    if (consumed != line.size())
      throw std::invalid_argument("SourcePmf: trailing characters at line " + std::to_string(lineno));
    probs.push_back(value);
  }
  return SourcePmf(std::move(probs));
}

double SourcePmf::head_mass(std::size_t k) const {
  if (k > probs_.size()) throw std::invalid_argument("head_mass: k exceeds support size");
  return kahan_sum(probs_, k);
}

void EncodingPolicy::validate(std::size_t n) const {
  if (k < 1 || k > n) throw std::invalid_argument("EncodingPolicy: k must be in [1, n]");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("EncodingPolicy: alpha must be in [0, 1]");
}

void SystemParams::validate() const {
  if (!std::isfinite(lambda) || lambda <= 0.0)
    throw std::invalid_argument("SystemParams: lambda must be finite and positive");
}

ConditionalPmf::ConditionalPmf(std::vector<double> probs, double q, double a)
    : probs_(std::move(probs)), q_(q), a_(a) {
  if (probs_.empty()) throw std::invalid_argument("ConditionalPmf: empty pmf");
  for (double p : probs_)
    if (!std::isfinite(p) || p < 0.0)
      throw std::invalid_argument("ConditionalPmf: probabilities must be finite and nonnegative");
  const double sum = kahan_sum(probs_, probs_.size());
  if (std::abs(sum - 1.0) > SourcePmf::kSumTol)
    throw std::invalid_argument("ConditionalPmf: probabilities must sum to one");
  if (!(q_ > 0.0) || q_ > 1.0 + SourcePmf::kSumTol)
    throw std::invalid_argument("ConditionalPmf: q must be in (0, 1]");
  if (!std::isfinite(a_) || a_ <= 0.0)
    throw std::invalid_argument("ConditionalPmf: a must be positive");
}

ConditionalPmf conditional_pmf(const SourcePmf& pmf, const EncodingPolicy& policy,
                               const SystemParams& params) {
  policy.validate(pmf.size());
  params.validate();
  const auto& p = pmf.probs();
  const std::size_t k = policy.k;
  const std::size_t n = pmf.size();

  if (policy.alpha == 0.0) {
    const double q = pmf.head_mass(k);
    std::vector<double> probs(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k));
    for (double& v : probs) v /= q;
    return ConditionalPmf(std::move(probs), q, 1.0 / (params.lambda * q));
  }

  const double head = pmf.head_mass(k);
  const double tail = kahan_sum(p, n) - head;
  const double q = head + policy.alpha * tail;
  std::vector<double> probs(p);
  for (std::size_t i = k; i < n; ++i) probs[i] *= policy.alpha;
  for (double& v : probs) v /= q;
  return ConditionalPmf(std::move(probs), q, 1.0 / (params.lambda * q));
}

}  // namespace agecode
