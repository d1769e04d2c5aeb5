#pragma once

#include <string>
#include <vector>

#include "crvn/scenario.hpp"

namespace crvn {

enum class SweepParam {
  kChannelRho,        // uniform rho across the SVN's channel set
  kChannelCount,      // size of the channel set (integer sweep points)
  kImposedBlocking,   // blocking probability imposed on the chain
};

/// Range sweep of one parameter over a single-SVN channel-set study. The
/// fixed side comes from the scenario: SU parameters from its first SVN
/// request, the channel template (and rho, where not swept) from its first
/// channel, the set size from M (where not swept).
struct SweepSpec {
  SweepParam param = SweepParam::kChannelRho;
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;  // >= 2, endpoints included
};

struct SweepRow {
  double value = 0.0;
  double collision = 0.0;
  double blocking = 0.0;
  double utilization = 0.0;
  double su_utilization = 0.0;  // admitted-SU share of joint utilization
  double handover_attempt = 0.0;
  double handover = 0.0;
  bool skipped = false;       // swept value left its valid domain
  std::string warning;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> header_comments;  // fixed-parameter provenance
};

/// Validates its arguments (steps >= 2, start < stop, domain bounds) and
/// throws std::invalid_argument on violations. Individual out-of-domain
/// points are skipped with a warning instead.
SweepResult run_sweep(const Scenario& scenario, const SweepSpec& spec);

/// Built-in single-SVN scenario behind the figure presets: 4 channels,
/// Bw 1e6 Hz, snr_mean 10 dB, mu_PU 1/s, rho 0.3, lambda_SU 0.5, mu_SU 0.5,
/// demand 5e5 bps.
Scenario preset_scenario();

/// fig2: rho 0.05..0.95; fig3: channel count 2..20; fig4: imposed blocking
/// 0..1. Throws std::invalid_argument for an unknown preset name.
SweepSpec preset_spec(const std::string& name);

std::string sweep_param_name(SweepParam p);

}  // namespace crvn
