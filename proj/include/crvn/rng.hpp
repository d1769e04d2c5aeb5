#pragma once

#include <cstdint>

namespace crvn {

/// Deterministic splitmix64 stream, independent per (seed, stream) pair.
/// Cheap enough to construct one per Monte Carlo replication, which makes
/// results independent of evaluation order.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double uniform();           // in [0, 1)
  bool bernoulli(double p);
  double exponential(double mean);
  int poisson(double mean);   // inversion, chunked for large means

 private:
  std::uint64_t state_;
};

}  // namespace crvn
