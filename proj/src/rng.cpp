#include "agecode/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agecode {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
  std::uint64_t state = seed ^ (0xa0761d6478bd642fULL * (stream_id + 1));
  const std::uint64_t derived = splitmix64(state);
  engine_.seed(derived);
}

double RngStream::uniform() {
  // 53-bit mantissa centered in its cell: never exactly 0 or 1.
  const std::uint64_t x = engine_();
  return (static_cast<double>(x >> 11) + 0.5) * 0x1p-53;
}

double RngStream::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be positive");
  return -std::log(uniform()) / rate;
}

bool RngStream::coin(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("coin: p must be in [0, 1]");
  return uniform() < p;
}

std::size_t RngStream::discrete(std::span<const double> cdf) {
  if (cdf.empty()) throw std::invalid_argument("discrete: empty cdf");
  const double u = uniform();
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  return static_cast<std::size_t>(it == cdf.end() ? cdf.size() - 1 : it - cdf.begin());
}

}  // namespace agecode
