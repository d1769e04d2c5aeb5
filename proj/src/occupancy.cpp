#include "crvn/occupancy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crvn {

double CountDistribution::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) m += static_cast<double>(k) * pmf[k];
  return m;
}

CountDistribution pu_count_distribution(std::span<const double> rhos) {
  for (double r : rhos) {
    if (!(r >= 0.0 && r < 1.0))
      throw std::invalid_argument("pu_count_distribution: rho must lie in [0,1)");
  }
  // Insert one Bernoulli(rho) at a time into the running pmf; backward scan
  // keeps the update in place.
  std::vector<double> pmf{1.0};
  pmf.reserve(rhos.size() + 1);
  for (double r : rhos) {
    pmf.push_back(0.0);
    for (std::size_t k = pmf.size() - 1; k > 0; --k)
      pmf[k] = pmf[k] * (1.0 - r) + pmf[k - 1] * r;
    pmf[0] *= (1.0 - r);
  }
  return CountDistribution{std::move(pmf)};
}

CountDistribution idle_count_distribution(std::span<const double> rhos) {
  CountDistribution d = pu_count_distribution(rhos);
  std::reverse(d.pmf.begin(), d.pmf.end());  // idle count = n - busy count
  return d;
}

double expected_idle_channels(std::span<const double> rhos) {
  if (rhos.empty()) return 0.0;
  return idle_count_distribution(rhos).mean();
}

double su_count_pmf(double mean, int k) {
  if (mean < 0.0 || k < 0) throw std::invalid_argument("su_count_pmf: negative argument");
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(static_cast<double>(k) * std::log(mean) - mean -
                  std::lgamma(static_cast<double>(k) + 1.0));
}

double su_count_exceeds(double mean, int threshold) {
  if (mean < 0.0) throw std::invalid_argument("su_count_exceeds: negative mean");
  if (threshold < 0) return 1.0;
  double cum = 0.0;
  for (int k = 0; k <= threshold; ++k) cum += su_count_pmf(mean, k);
  return std::clamp(1.0 - cum, 0.0, 1.0);
}

}  // namespace crvn
