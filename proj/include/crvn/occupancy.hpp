#pragma once

#include <span>
#include <vector>

namespace crvn {

/// Probability mass over a count 0..n; entries nonnegative, sum 1 (to 1e-12).
struct CountDistribution {
  std::vector<double> pmf;

  std::size_t max_count() const { return pmf.empty() ? 0 : pmf.size() - 1; }
  double mean() const;
};

/// Law of the number of simultaneously busy channels among independent
/// per-channel Bernoulli(rho_i) indicators (the Poisson-binomial
/// distribution), computed by the O(n^2) one-channel-at-a-time convolution.
/// An empty input yields the degenerate pmf {1}; each rho must lie in the
/// stable-channel domain [0, 1).
CountDistribution pu_count_distribution(std::span<const double> rhos);

/// Law of the number of idle channels; the reversal of the busy-count pmf.
CountDistribution idle_count_distribution(std::span<const double> rhos);

/// pmf-weighted mean idle-channel count; equals sum(1 - rho_i) to 1e-10.
double expected_idle_channels(std::span<const double> rhos);

/// Poisson pmf mean^k e^-mean / k!, evaluated in log space.
double su_count_pmf(double mean, int k);

/// Upper Poisson tail P[N > threshold] = 1 - sum_{k<=threshold} pmf(k).
/// threshold = -1 returns 1.
double su_count_exceeds(double mean, int threshold);

}  // namespace crvn
