#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "agecode/pmf.hpp"

namespace agecode {

// kCycle draws each cycle's idle wait and symbol directly from their derived
// distributions; kEvent replays the raw arrival process (individual arrivals,
// per-arrival selection, arrivals lost while the encoder is busy) and must
// agree with kCycle in distribution.
enum class SimMode { kCycle, kEvent };

struct SimConfig {
  SourcePmf pmf;
  EncodingPolicy policy;
  SystemParams params;
  // One codeword length per encodable value: k entries when alpha = 0,
  // n entries when alpha > 0.
  std::vector<double> lengths;
  std::uint64_t num_cycles = 0;
  std::uint64_t seed = 0;
  SimMode mode = SimMode::kCycle;
};

struct SimResult {
  double empirical_age = 0.0;
  double stderr_age = 0.0;  // batch-means standard error of the age estimate
  std::uint64_t num_cycles = 0;
  double mean_cycle = 0.0;
  double mean_service = 0.0;
  // Arrival accounting, event mode only (zero in cycle mode).
  std::uint64_t idle_arrivals = 0;
  std::uint64_t discarded_arrivals = 0;
  std::uint64_t blocked_arrivals = 0;
};

// Renewal simulation of the update process. Age estimate is the ratio of
// means of the per-cycle area Q_j = Y_j^2 / 2 + Y_j S_{j-1} to the cycle
// length Y_j; the first cycle only seeds S_0 and is discarded as warm-up.
// Optional trace receives "j,W,S,Y,Q" CSV rows, capped at 100000.
SimResult simulate(const SimConfig& config, std::ostream* trace = nullptr);

struct ValidationReport {
  double analytic_age = 0.0;
  SimResult cycle_mode;
  SimResult event_mode;
  double rel_err_cycle = 0.0;
  double rel_err_event = 0.0;
  bool pass = false;
};

// Runs both modes on the same config and compares each estimate with the
// closed-form age; a mode passes within max(3 stderr, 0.5%).
ValidationReport validate(const SimConfig& config);

}  // namespace agecode
