#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace crvn {

/// One substrate resource unit. PU activity is a Poisson arrival stream
/// (pu_arrival_rate) with exponential holding times (mean 1/pu_service_rate);
/// the channel's SNR in dB is exponentially distributed with mean snr_mean_db.
struct Channel {
  std::string id;
  double bandwidth_hz = 0.0;
  double pu_arrival_rate = 0.0;  // arrivals per second
  double pu_service_rate = 0.0;  // 1/s
  double snr_mean_db = 0.0;
};

/// Fraction of the substrate handed to one primary virtual network.
struct PvnShare {
  std::string pvn_id;
  double share = 0.0;  // in [0,1]; shares over a scenario sum to 1
};

/// Secondary demand triple for one SVN: Poisson SU arrivals, exponential
/// holding, and the mean per-SU data-rate requirement.
struct SvnRequest {
  std::string svn_id;
  double su_arrival_rate = 0.0;  // users per second
  double su_service_rate = 0.0;  // 1/s
  double mean_demand_bps = 0.0;
};

/// The three-layer environment: substrate channels, the PVN split, and the
/// SVN request list, plus the global collision threshold of the mapping
/// problem. Immutable after validation.
struct Scenario {
  std::vector<Channel> channels;
  std::vector<PvnShare> pvn_shares;
  std::vector<SvnRequest> svn_requests;
  double collision_threshold = 1.0;  // in (0,1]

  const Channel* find_channel(const std::string& id) const;
  const SvnRequest* find_svn(const std::string& id) const;
};

/// Disjoint split of the substrate across PVNs, in PVN input order; the
/// channel lists are contiguous runs of the substrate in input order.
struct PvnAllocation {
  std::vector<std::pair<std::string, std::vector<std::string>>> sets;

  std::size_t total_channels() const;
};

/// Assignment of disjoint channel subsets to SVNs; the decision variable of
/// the mapping problem. Channels absent from every set are unassigned.
struct Mapping {
  std::map<std::string, std::vector<std::string>> assignments;  // svn_id -> channel ids
};

/// Checks every Channel / PvnShare / SvnRequest invariant and the scenario-
/// level ones (unique ids, shares summing to 1, threshold range). Returns one
/// diagnostic per violated invariant; empty means valid.
std::vector<std::string> validate_scenario(const Scenario& s);

/// Returns `s` unchanged if valid, otherwise throws std::invalid_argument
/// whose message lists every violation.
const Scenario& require_valid(const Scenario& s);

/// Splits the substrate across PVNs by the largest-remainder rule: every PVN
/// starts at floor(M*share), leftover channels go to PVNs in descending
/// fractional-remainder order (ties to the lower input index). Channels are
/// handed out contiguously in input order. Throws std::invalid_argument on an
/// empty channel or share list.
PvnAllocation allocate_pvn_channels(const std::vector<Channel>& channels,
                                    const std::vector<PvnShare>& shares);

/// Diagnostics for mapping/scenario consistency: unknown svn ids, unknown
/// channel ids, duplicate channel ids within one set. Disjointness across
/// sets is deliberately not checked here; see mapper::check_constraints.
std::vector<std::string> validate_mapping(const Mapping& m, const Scenario& s);

/// Channel ids claimed by more than one SVN, sorted.
std::vector<std::string> overlapping_channels(const Mapping& m);

}  // namespace crvn
