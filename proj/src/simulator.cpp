#include "agecode/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "agecode/age.hpp"
#include "agecode/rng.hpp"
#include "agecode/serialize.hpp"

namespace agecode {
namespace {

constexpr std::uint64_t kTraceCap = 100000;

// Fixed stream ids keep the three randomness sources aligned between modes
// that share a seed.
constexpr std::uint64_t kArrivalStream = 1;
constexpr std::uint64_t kSymbolStream = 2;
constexpr std::uint64_t kCoinStream = 3;

std::vector<double> cdf_of(const std::vector<double>& probs) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;  // pmf validation bounds the defect by 1e-12
  return cdf;
}

void check_config(const SimConfig& cfg) {
  cfg.policy.validate(cfg.pmf.size());
  cfg.params.validate();
  const std::size_t expected = cfg.policy.alpha == 0.0 ? cfg.policy.k : cfg.pmf.size();
  if (cfg.lengths.size() != expected)
    throw std::invalid_argument("simulate: lengths do not match the encodable support");
  for (double l : cfg.lengths)
    if (!std::isfinite(l) || l < 0.0)
      throw std::invalid_argument("simulate: lengths must be finite and nonnegative");
  if (cfg.num_cycles == 0) throw std::invalid_argument("simulate: num_cycles must be positive");
}

}  // namespace

SimResult simulate(const SimConfig& cfg, std::ostream* trace) {
  check_config(cfg);
  const ConditionalPmf cond = conditional_pmf(cfg.pmf, cfg.policy, cfg.params);
  const double lambda = cfg.params.lambda;
  const double q = cond.q();
  const double alpha = cfg.policy.alpha;
  const std::size_t k = cfg.policy.k;

  RngStream arrivals(cfg.seed, kArrivalStream);
  RngStream symbols(cfg.seed, kSymbolStream);
  RngStream coins(cfg.seed, kCoinStream);

  const std::vector<double> cond_cdf = cdf_of(cond.probs());
  const std::vector<double> source_cdf = cdf_of(cfg.pmf.probs());

  SimResult res;
  res.num_cycles = cfg.num_cycles;

  // Event-mode state: absolute time of the next pending arrival and of the
  // encoder becoming free.
  double next_arrival = 0.0;
  double t_free = 0.0;
  if (cfg.mode == SimMode::kEvent) next_arrival = arrivals.exponential(lambda);

  const auto draw_cycle = [&](double& w, double& s) {
    if (cfg.mode == SimMode::kCycle) {
      // Wait for a selected arrival is exponential with rate lambda q by
      // thinning; the symbol then follows the conditional pmf.
      w = arrivals.exponential(lambda * q);
      s = cfg.lengths[symbols.discrete(cond_cdf)];
      return;
    }
    while (next_arrival < t_free) {
      ++res.blocked_arrivals;
      next_arrival += arrivals.exponential(lambda);
    }
    for (;;) {
      ++res.idle_arrivals;
      const std::size_t idx = symbols.discrete(source_cdf);
      const bool selected = idx < k ? true : coins.coin(alpha);
      if (selected) {
        w = next_arrival - t_free;
        s = cfg.lengths[idx];
        t_free = next_arrival + s;
        next_arrival += arrivals.exponential(lambda);
        return;
      }
      ++res.discarded_arrivals;
      next_arrival += arrivals.exponential(lambda);
    }
  };

  const std::uint64_t n = cfg.num_cycles;
  const std::uint64_t num_batches = std::min<std::uint64_t>(n, 50);
  std::vector<double> batch_q(num_batches, 0.0);
  std::vector<double> batch_y(num_batches, 0.0);
  double sum_q = 0.0;
  double sum_y = 0.0;
  double sum_s = 0.0;
  double s_prev = 0.0;

  if (trace) *trace << "j,W,S,Y,Q\n";
  for (std::uint64_t j = 0; j <= n; ++j) {
    double w = 0.0;
    double s = 0.0;
    draw_cycle(w, s);
    if (j == 0) {  // warm-up cycle: only the service carries over
      s_prev = s;
      continue;
    }
    const double y = w + s;
    const double area = 0.5 * y * y + y * s_prev;
    const std::uint64_t b = (j - 1) * num_batches / n;
    batch_q[b] += area;
    batch_y[b] += y;
    sum_q += area;
    sum_y += y;
    sum_s += s;
    if (trace && j <= kTraceCap)
      *trace << j << ',' << csv_number(w) << ',' << csv_number(s) << ',' << csv_number(y) << ','
             << csv_number(area) << '\n';
    s_prev = s;
  }

  res.empirical_age = sum_q / sum_y;
  res.mean_cycle = sum_y / static_cast<double>(n);
  res.mean_service = sum_s / static_cast<double>(n);

  if (num_batches >= 2) {
    double mean = 0.0;
    std::vector<double> ratio(num_batches);
    for (std::uint64_t b = 0; b < num_batches; ++b) {
      ratio[b] = batch_q[b] / batch_y[b];
      mean += ratio[b];
    }
    mean /= static_cast<double>(num_batches);
    double var = 0.0;
    for (double r : ratio) var += (r - mean) * (r - mean);
    var /= static_cast<double>(num_batches - 1);
    res.stderr_age = std::sqrt(var / static_cast<double>(num_batches));
  }
  return res;
}

ValidationReport validate(const SimConfig& cfg) {
  check_config(cfg);
  const ConditionalPmf cond = conditional_pmf(cfg.pmf, cfg.policy, cfg.params);

  ValidationReport report;
  report.analytic_age = average_age(cond, cfg.lengths).delta;

  SimConfig cycle_cfg = cfg;
  cycle_cfg.mode = SimMode::kCycle;
  SimConfig event_cfg = cfg;
  event_cfg.mode = SimMode::kEvent;
  report.cycle_mode = simulate(cycle_cfg);
  report.event_mode = simulate(event_cfg);

  report.rel_err_cycle =
      std::abs(report.cycle_mode.empirical_age - report.analytic_age) / report.analytic_age;
  report.rel_err_event =
      std::abs(report.event_mode.empirical_age - report.analytic_age) / report.analytic_age;

  const auto within = [&](const SimResult& r) {
    const double bound = std::max(3.0 * r.stderr_age, 0.005 * report.analytic_age);
    return std::abs(r.empirical_age - report.analytic_age) <= bound;
  };
  report.pass = within(report.cycle_mode) && within(report.event_mode);
  return report;
}

}  // namespace agecode
