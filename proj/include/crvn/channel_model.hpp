#pragma once

#include <span>
#include <vector>

#include "crvn/scenario.hpp"

namespace crvn {

/// Derived per-channel quantities under the two-state PU abstraction and
/// exponential SNR-in-dB fading.
struct ChannelProfile {
  std::string channel_id;
  double rho = 0.0;                 // stationary PU-busy probability, in [0,1)
  double p_off = 1.0;               // 1 - rho
  double mean_capacity_bps = 0.0;   // expectation of the Shannon rate
  double effective_rate_bps = 0.0;  // p_off * mean_capacity_bps
};

/// Stationary busy probability lambda/mu of a channel's PU process.
double utilization(const Channel& c);

/// bandwidth_hz * log2(1 + 10^(snr_db/10)). Stable for large |snr_db|.
double shannon_capacity(double bandwidth_hz, double snr_db);

/// E[log2(1 + 10^(X/10))] in bit/s/Hz for X exponential with mean
/// snr_mean_db. Adaptive Gauss-Kronrod over the tail-truncated support
/// (tail mass < 1e-12), relative tolerance 1e-8. Results are memoized per
/// snr_mean_db; concurrent callers always observe fully computed values.
double expected_spectral_efficiency(double snr_mean_db);

/// Mean channel capacity in bps: bandwidth * expected_spectral_efficiency.
double mean_capacity(const Channel& c);

/// Mean rate actually reachable opportunistically: p_off * mean_capacity.
double effective_rate(const Channel& c);

ChannelProfile profile_channel(const Channel& c);
std::vector<ChannelProfile> profile_channels(std::span<const Channel> channels);

}  // namespace crvn
