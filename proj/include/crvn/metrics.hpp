#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crvn/channel_model.hpp"
#include "crvn/scenario.hpp"

namespace crvn {

/// Per-SVN analytic metrics of one mapping.
struct SvnMetrics {
  std::string svn_id;
  double collision_prob = 0.0;         // Pc
  double blocking_prob = 0.0;          // Pb
  double joint_utilization = 0.0;      // PU + admitted-SU occupancy / n (not clamped)
  double handover_attempt_prob = 0.0;  // collision probability of the admitted load
  double handover_prob = 0.0;          // successful inter-SVN handovers / admitted
  double channels_per_su = 1.0;        // mean channels one SU needs
  double mean_channel_rate_bps = 0.0;  // mean effective rate over the set
  double admitted_sus = 0.0;           // (1 - Pb) * offered SU load
  double allocated_rate_bps = 0.0;     // sum of effective rates over the set
  double requested_rate_bps = 0.0;     // offered SU load * mean demand
};

/// Arithmetic means of the four headline metrics over the N mapped SVNs.
struct LayerMetrics {
  double mean_collision = 0.0;
  double mean_blocking = 0.0;
  double mean_utilization = 0.0;
  double mean_handover = 0.0;
};

struct MetricsReport {
  std::vector<SvnMetrics> per_svn;
  LayerMetrics layer;
};

/// Offered SU load and requested bandwidth of one SVN.
struct SuDemand {
  double mean_sus = 0.0;       // arrival rate / service rate
  double requested_bps = 0.0;  // mean_sus * mean per-SU demand
};
SuDemand su_demand(const SvnRequest& r);

/// Mean effective rate over a nonempty channel set.
double mean_channel_rate(std::span<const ChannelProfile> set);

/// max(1, demand / mean_channel_rate); the set must be nonempty.
double channels_per_su(double mean_demand_bps, std::span<const ChannelProfile> set);

/// Probability that PU and SU access demand together exceed the set with at
/// least one PU present: sum over i>=1 of P[busy == i] * P[NSU >
/// floor((n-i)/chsu)], NSU Poisson(su_mean). The floor applies to the real
/// quotient. Throws on an empty set.
double collision_probability(std::span<const ChannelProfile> set, double su_mean,
                             double chsu);

/// Same sum including the i = 0 term; always >= collision_probability.
double blocking_probability(std::span<const ChannelProfile> set, double su_mean,
                            double chsu);

/// (mean busy channels + (1 - blocking) * su_mean * chsu) / n. Deliberately
/// not clamped to 1; callers flag values above 1.
double joint_utilization(std::span<const ChannelProfile> set, double su_mean,
                         double chsu, double blocking);

/// Sum of effective rates over the set (0 for an empty set).
double allocated_rate(std::span<const ChannelProfile> set);

/// Everything the handover chain needs to know about one mapped SVN.
struct SvnContext {
  std::string svn_id;
  std::vector<ChannelProfile> profiles;
  double su_mean = 0.0;
  double chsu = 1.0;
  double blocking = 0.0;
  double mean_demand_bps = 0.0;
};

struct HandoverResult {
  double attempt_prob = 0.0;   // collision probability at the admitted load
  double handover_prob = 0.0;  // 0 when nothing is admitted
  double admitted = 0.0;       // (1 - blocking) * su_mean
  double attempts = 0.0;       // attempt_prob * admitted
  double spare_channels = 0.0; // mean idle capacity in the other SVNs, >= 0
  double chsu_star = 1.0;      // channels one SU needs on the other SVNs' sets
};

/// Admission -> re-collision -> spare-capacity chain for one SVN against the
/// rest of the mapping. Degenerate cases (single SVN, zero admitted load)
/// yield handover 0.
HandoverResult handover_chain(std::size_t target, std::span<const SvnContext> all);

/// Arithmetic means over a nonempty per-SVN list; throws on empty input.
LayerMetrics layer_averages(const std::vector<SvnMetrics>& per_svn);

/// Builds the per-SVN evaluation contexts for a mapping. Every scenario SVN
/// must be assigned a nonempty, known channel set; throws otherwise. When
/// `imposed_blocking` is set it replaces the derived blocking probability in
/// every downstream formula (utilization and the handover chain).
std::vector<SvnContext> build_contexts(const Scenario& s, const Mapping& m,
                                       std::optional<double> imposed_blocking = {});

/// Full per-SVN and layer evaluation of a disjoint mapping.
MetricsReport evaluate_mapping(const Scenario& s, const Mapping& m,
                               std::optional<double> imposed_blocking = {});

}  // namespace crvn
