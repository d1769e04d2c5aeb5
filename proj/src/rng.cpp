#include "crvn/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace crvn {

namespace {

// Finalizer from splitmix64; also used to decorrelate the stream index.
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : state_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

std::uint64_t RandomStream::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

double RandomStream::uniform() {
  // top 53 bits -> [0, 1)
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool RandomStream::bernoulli(double p) { return uniform() < p; }

double RandomStream::exponential(double mean) {
  if (!(mean > 0.0)) throw std::invalid_argument("exponential: mean must be positive");
  return -mean * std::log1p(-uniform());
}

int RandomStream::poisson(double mean) {
  if (mean < 0.0) throw std::invalid_argument("poisson: mean must be nonnegative");
  if (mean == 0.0) return 0;

  // Split large means into chunks so the inversion loop stays short and
  // exp(-chunk) stays well away from underflow.
  int total = 0;
  double remaining = mean;
  while (remaining > 0.0) {
    const double chunk = remaining > 30.0 ? 30.0 : remaining;
    remaining -= chunk;

    const double limit = std::exp(-chunk);
    double prod = 1.0;
    int count = -1;
    do {
      prod *= uniform();
      ++count;
    } while (prod > limit && count < 10000);
    total += count;
  }
  return total;
}

}  // namespace crvn
