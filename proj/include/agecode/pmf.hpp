#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace agecode {

// Distribution of the observed values, sorted so probs[0] is the most likely.
// Immutable after construction.
class SourcePmf {
 public:
  // Tolerance on |sum - 1| when validating.
  static constexpr double kSumTol = 1e-12;

  // Requires strictly positive, non-increasing entries summing to one.
  // Sorting is the caller's job: silently reordering would desynchronize
  // value indices from their codewords.
  explicit SourcePmf(std::vector<double> probs);

  // Power-law pmf with p_i proportional to rank^{-s}, rank = 1..n.
  static SourcePmf zipf(std::size_t n, double s);

  // Sorts descending and rescales to sum one. For inputs that are weights
  // rather than a ready pmf.
  static SourcePmf normalized(std::vector<double> weights);

  // Plain text, one probability per line; '#' starts a comment.
  static SourcePmf load(const std::string& path);
  static SourcePmf parse(std::istream& in);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  // Total probability of the first k values.
  double head_mass(std::size_t k) const;

 private:
  std::vector<double> probs_;
};

// Which values get encoded: the first k always, each of the remaining n-k
// with probability alpha. alpha = 0 is the purely selective scheme.
struct EncodingPolicy {
  std::size_t k = 1;
  double alpha = 0.0;

  void validate(std::size_t n) const;
};

struct SystemParams {
  double lambda = 1.0;  // arrival rate, updates per unit time

  void validate() const;
};

// Distribution over the encodable values together with the selection mass q
// (fraction of arrivals that get encoded) and the mean idle parameter
// a = 1/(lambda q).
class ConditionalPmf {
 public:
  ConditionalPmf(std::vector<double> probs, double q, double a);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }
  double q() const { return q_; }
  double a() const { return a_; }

 private:
  std::vector<double> probs_;
  double q_;
  double a_;
};

// alpha = 0: p_i / q over the first k values, q = head_mass(k).
// alpha > 0: all n values, tail entries weighted by alpha,
//            q = head_mass(k) + alpha * tail mass.
ConditionalPmf conditional_pmf(const SourcePmf& pmf, const EncodingPolicy& policy,
                               const SystemParams& params);

}  // namespace agecode
