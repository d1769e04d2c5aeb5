#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "crvn/channel_model.hpp"
#include "crvn/metrics.hpp"
#include "crvn/occupancy.hpp"
#include "crvn/scenario.hpp"

namespace crvn {

/// One Monte Carlo estimate with its standard error; reproducible per seed.
struct OracleEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  /// |value - analytic| <= 3 * std_error (plus a 1e-12 absolute epsilon for
  /// exact degenerate cases).
  bool within_3_sigma(double analytic) const;
};

struct CollisionBlockingEstimate {
  OracleEstimate collision;
  OracleEstimate blocking;
};

/// Direct sampling of the collision and blocking events: per replication,
/// each channel's busy indicator is Bernoulli(rho_i) and the SU count is
/// Poisson(su_mean); the events compare the SU count against
/// floor((n - busy)/chsu), with at least one busy channel required for a
/// collision. Replication r draws from stream (seed, r).
CollisionBlockingEstimate sample_metrics(std::span<const ChannelProfile> set,
                                         double su_mean, double chsu,
                                         std::uint64_t samples, std::uint64_t seed);

enum class CountKind { PuBusy, ChannelIdle };

/// Literal subset enumeration of the channel-count law; 2^n terms, n <= 20.
/// Exists as the equivalence witness for the convolution in occupancy.
CountDistribution brute_force_count_distribution(std::span<const double> rhos,
                                                 CountKind kind);

/// Collision probability when every SU needs exactly one channel, assembled
/// from the brute-force count law and directly summed Poisson tails. Kept
/// independent of collision_probability as its reduction reference.
double single_channel_collision_reference(std::span<const double> rhos,
                                          double su_mean);

/// Time-average busy fraction of a two-state continuous-time Markov chain
/// with ON->OFF rate mu and OFF->ON rate mu*rho/(1-rho), started from
/// stationarity. The stationary busy probability is exactly rho; this is the
/// event-level realization of the channel abstraction (the model itself only
/// fixes the stationary law).
double simulate_channel_occupancy(const Channel& c, double horizon_s,
                                  std::uint64_t seed);

/// Asymptotic standard error of that time average over horizon_s.
double ctmc_busy_fraction_std_error(double rho, double pu_service_rate,
                                    double horizon_s);

struct HandoverEstimate {
  OracleEstimate attempt;
  OracleEstimate handover;
};

/// Re-estimates each SVN's admitted-load collision probability by direct
/// sampling (Poisson at the admitted mean, Bernoulli channel states) and
/// pushes the estimate through the same spare-capacity arithmetic the
/// analytic chain uses. Blocking, admitted load, spare capacity and
/// chsu_star come from the contexts (precomputed analytically).
std::vector<HandoverEstimate> sample_handover_chain(std::span<const SvnContext> all,
                                                    std::uint64_t samples,
                                                    std::uint64_t seed);

}  // namespace crvn
