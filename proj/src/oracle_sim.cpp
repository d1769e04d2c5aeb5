#include "crvn/oracle_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "crvn/rng.hpp"

namespace crvn {

namespace {

OracleEstimate indicator_estimate(std::uint64_t hits, std::uint64_t samples,
                                  std::uint64_t seed) {
  OracleEstimate e;
  e.samples = samples;
  e.seed = seed;
  if (samples == 0) return e;
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  e.value = p;
  e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return e;
}

}  // namespace

bool OracleEstimate::within_3_sigma(double analytic) const {
  return std::abs(value - analytic) <= 3.0 * std_error + 1e-12;
}

CollisionBlockingEstimate sample_metrics(std::span<const ChannelProfile> set,
                                         double su_mean, double chsu,
                                         std::uint64_t samples, std::uint64_t seed) {
  if (set.empty()) throw std::invalid_argument("sample_metrics: empty channel set");
  if (chsu < 1.0) throw std::invalid_argument("sample_metrics: chsu must be >= 1");
  const std::size_t n = set.size();

  std::uint64_t collision_hits = 0;
  std::uint64_t blocking_hits = 0;
  for (std::uint64_t r = 0; r < samples; ++r) {
    RandomStream rng(seed, r);
    std::size_t busy = 0;
    for (const auto& p : set)
      if (rng.bernoulli(p.rho)) ++busy;
    const int sus = rng.poisson(su_mean);
    const int fit =
        static_cast<int>(std::floor(static_cast<double>(n - busy) / chsu));
    if (sus > fit) {
      ++blocking_hits;
      if (busy > 0) ++collision_hits;
    }
  }

  CollisionBlockingEstimate out;
  out.collision = indicator_estimate(collision_hits, samples, seed);
  out.blocking = indicator_estimate(blocking_hits, samples, seed);
  return out;
}

CountDistribution brute_force_count_distribution(std::span<const double> rhos,
                                                 CountKind kind) {
  const std::size_t n = rhos.size();
  if (n > 20)
    throw std::invalid_argument("brute_force_count_distribution: n must be <= 20");

  CountDistribution d;
  d.pmf.assign(n + 1, 0.0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      p *= (mask >> i) & 1 ? rhos[i] : 1.0 - rhos[i];
    const std::size_t busy = static_cast<std::size_t>(std::popcount(mask));
    d.pmf[kind == CountKind::PuBusy ? busy : n - busy] += p;
  }
  return d;
}

double single_channel_collision_reference(std::span<const double> rhos,
                                          double su_mean) {
  const std::size_t n = rhos.size();
  if (n == 0)
    throw std::invalid_argument("single_channel_collision_reference: empty set");

  const CountDistribution busy =
      brute_force_count_distribution(rhos, CountKind::PuBusy);

  double sum = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    // P[K > n - i] for K ~ Poisson(su_mean), by direct term recurrence.
    double term = std::exp(-su_mean);
    double cdf = term;
    for (std::size_t k = 1; k <= n - i; ++k) {
      term *= su_mean / static_cast<double>(k);
      cdf += term;
    }
    sum += busy.pmf[i] * (1.0 - cdf);
  }
  return std::clamp(sum, 0.0, 1.0);
}

double simulate_channel_occupancy(const Channel& c, double horizon_s,
                                  std::uint64_t seed) {
  if (!(horizon_s > 0.0))
    throw std::invalid_argument("simulate_channel_occupancy: horizon must be positive");
  const double rho = utilization(c);
  if (rho >= 1.0)
    throw std::invalid_argument("simulate_channel_occupancy: utilization must be < 1");
  if (rho <= 0.0) return 0.0;

  const double rate_on = c.pu_service_rate * rho / (1.0 - rho);  // idle -> busy
  const double rate_off = c.pu_service_rate;                     // busy -> idle

  RandomStream rng(seed);
  bool busy = rng.bernoulli(rho);  // start from the stationary law
  double t = 0.0;
  double busy_time = 0.0;
  while (t < horizon_s) {
    const double dwell = rng.exponential(1.0 / (busy ? rate_off : rate_on));
    const double step = std::min(dwell, horizon_s - t);
    if (busy) busy_time += step;
    t += dwell;
    busy = !busy;
  }
  return busy_time / horizon_s;
}

double ctmc_busy_fraction_std_error(double rho, double pu_service_rate,
                                    double horizon_s) {
  if (rho <= 0.0 || rho >= 1.0) return 0.0;
  const double rate_on = pu_service_rate * rho / (1.0 - rho);
  const double rate_off = pu_service_rate;
  // time-average variance of a stationary two-state chain:
  // (2 / T) * Integral Cov(X_0, X_t) dt with Cov = rho(1-rho)e^{-(a+b)t}
  const double var =
      2.0 * rho * (1.0 - rho) / ((rate_on + rate_off) * horizon_s);
  return std::sqrt(var);
}

std::vector<HandoverEstimate> sample_handover_chain(std::span<const SvnContext> all,
                                                    std::uint64_t samples,
                                                    std::uint64_t seed) {
  std::vector<HandoverEstimate> out;
  out.reserve(all.size());
  for (std::size_t l = 0; l < all.size(); ++l) {
    const SvnContext& t = all[l];
    const double admitted = (1.0 - t.blocking) * t.su_mean;

    HandoverEstimate est;
    if (admitted > 0.0) {
      const CollisionBlockingEstimate cb =
          sample_metrics(t.profiles, admitted, t.chsu, samples, seed + l);
      est.attempt = cb.collision;
    } else {
      est.attempt = indicator_estimate(0, samples, seed + l);
    }

    double spare = 0.0;
    double pooled_rate_sum = 0.0;
    std::size_t pooled_count = 0;
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (j == l) continue;
      const SvnContext& o = all[j];
      double busy_j = 0.0;
      for (const auto& p : o.profiles) {
        busy_j += p.rho;
        pooled_rate_sum += p.effective_rate_bps;
        ++pooled_count;
      }
      spare += static_cast<double>(o.profiles.size()) -
               (busy_j + (1.0 - o.blocking) * o.su_mean * o.chsu);
    }
    spare = std::max(0.0, spare);
    const double chsu_star =
        pooled_count == 0 ? 1.0
                          : std::max(1.0, t.mean_demand_bps *
                                              static_cast<double>(pooled_count) /
                                              pooled_rate_sum);

    est.handover = est.attempt;
    if (admitted > 0.0 && est.attempt.value * admitted * chsu_star > spare) {
      // capacity-limited branch; the attempt's std error stays a valid bound
      // because min(x, cap) moves at most as fast as x
      est.handover.value = std::min(spare / chsu_star / admitted, est.attempt.value);
    }
    out.push_back(est);
  }
  return out;
}

}  // namespace crvn
