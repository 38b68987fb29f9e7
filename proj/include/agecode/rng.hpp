#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace agecode {

std::uint64_t splitmix64(std::uint64_t& state);

// One named stream of pseudo-random draws, keyed by (seed, stream_id) so the
// simulator's arrival, symbol, and coin randomness stay independent and
// replayable. Transforms are hand-rolled over the raw 64-bit output instead
// of std::*_distribution, whose algorithms vary across standard libraries;
// replays are bit-identical for a given seed on any platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  double uniform();  // open interval (0, 1)
  double exponential(double rate);
  bool coin(double p);

  // Index of the first cdf entry >= u; cdf must be non-decreasing with
  // back() == 1.
  std::size_t discrete(std::span<const double> cdf);

 private:
  std::mt19937_64 engine_;
};

}  // namespace agecode
