#include "crvn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crvn/occupancy.hpp"

namespace crvn {

namespace {

std::vector<double> rhos_of(std::span<const ChannelProfile> set) {
  std::vector<double> r;
  r.reserve(set.size());
  for (const auto& p : set) r.push_back(p.rho);
  return r;
}

// Threshold of the SU-count tail when i channels are busy out of n; the
// floor applies to the real quotient.
int su_threshold(std::size_t n, std::size_t busy, double chsu) {
  return static_cast<int>(std::floor(static_cast<double>(n - busy) / chsu));
}

double collision_blocking_sum(std::span<const ChannelProfile> set, double su_mean,
                              double chsu, std::size_t first_busy) {
  const std::size_t n = set.size();
  const CountDistribution busy = pu_count_distribution(rhos_of(set));
  double sum = 0.0;
  for (std::size_t i = first_busy; i <= n; ++i)
    sum += busy.pmf[i] * su_count_exceeds(su_mean, su_threshold(n, i, chsu));
  return std::clamp(sum, 0.0, 1.0);
}

void require_nonempty(std::span<const ChannelProfile> set, const char* op) {
  if (set.empty()) throw std::invalid_argument(std::string(op) + ": empty channel set");
}

void require_load(double su_mean, double chsu, const char* op) {
  if (su_mean < 0.0) throw std::invalid_argument(std::string(op) + ": negative SU load");
  if (chsu < 1.0) throw std::invalid_argument(std::string(op) + ": chsu must be >= 1");
}

}  // namespace

SuDemand su_demand(const SvnRequest& r) {
  if (!(r.su_service_rate > 0.0))
    throw std::invalid_argument("su_demand: su_service_rate must be positive");
  SuDemand d;
  d.mean_sus = r.su_arrival_rate / r.su_service_rate;
  d.requested_bps = d.mean_sus * r.mean_demand_bps;
  return d;
}

double mean_channel_rate(std::span<const ChannelProfile> set) {
  require_nonempty(set, "mean_channel_rate");
  double sum = 0.0;
  for (const auto& p : set) sum += p.effective_rate_bps;
  return sum / static_cast<double>(set.size());
}

double channels_per_su(double mean_demand_bps, std::span<const ChannelProfile> set) {
  require_nonempty(set, "channels_per_su");
  return std::max(1.0, mean_demand_bps / mean_channel_rate(set));
}

double collision_probability(std::span<const ChannelProfile> set, double su_mean,
                             double chsu) {
  require_nonempty(set, "collision_probability");
  require_load(su_mean, chsu, "collision_probability");
  return collision_blocking_sum(set, su_mean, chsu, 1);
}

double blocking_probability(std::span<const ChannelProfile> set, double su_mean,
                            double chsu) {
  require_nonempty(set, "blocking_probability");
  require_load(su_mean, chsu, "blocking_probability");
  return collision_blocking_sum(set, su_mean, chsu, 0);
}

double joint_utilization(std::span<const ChannelProfile> set, double su_mean,
                         double chsu, double blocking) {
  require_nonempty(set, "joint_utilization");
  require_load(su_mean, chsu, "joint_utilization");
  const std::size_t n = set.size();
  const double mean_busy =
      static_cast<double>(n) - expected_idle_channels(rhos_of(set));
  const double admitted_channels = (1.0 - blocking) * su_mean * chsu;
  return (mean_busy + admitted_channels) / static_cast<double>(n);
}

double allocated_rate(std::span<const ChannelProfile> set) {
  double sum = 0.0;
  for (const auto& p : set) sum += p.effective_rate_bps;
  return sum;
}

HandoverResult handover_chain(std::size_t target, std::span<const SvnContext> all) {
  if (target >= all.size())
    throw std::invalid_argument("handover_chain: target index out of range");
  const SvnContext& t = all[target];

  HandoverResult r;
  r.admitted = (1.0 - t.blocking) * t.su_mean;
  r.attempt_prob =
      r.admitted > 0.0 ? collision_probability(t.profiles, r.admitted, t.chsu) : 0.0;
  r.attempts = r.attempt_prob * r.admitted;

  // Spare capacity and the channel cost of continuing on the other SVNs.
  double spare = 0.0;
  double pooled_rate_sum = 0.0;
  std::size_t pooled_count = 0;
  for (std::size_t j = 0; j < all.size(); ++j) {
    if (j == target) continue;
    const SvnContext& o = all[j];
    const double n_j = static_cast<double>(o.profiles.size());
    double busy_j = 0.0;
    for (const auto& p : o.profiles) {
      busy_j += p.rho;
      pooled_rate_sum += p.effective_rate_bps;
      ++pooled_count;
    }
    spare += n_j - (busy_j + (1.0 - o.blocking) * o.su_mean * o.chsu);
  }
  r.spare_channels = std::max(0.0, spare);
  r.chsu_star = pooled_count == 0
                    ? 1.0
                    : std::max(1.0, t.mean_demand_bps *
                                        static_cast<double>(pooled_count) /
                                        pooled_rate_sum);

  if (r.admitted <= 0.0) {
    r.handover_prob = 0.0;
    return r;
  }
  if (r.attempts * r.chsu_star <= r.spare_channels) {
    // everything that attempts finds room elsewhere
    r.handover_prob = r.attempt_prob;
  } else {
    const double successes = r.spare_channels / r.chsu_star;
    r.handover_prob = std::min(successes / r.admitted, r.attempt_prob);
  }
  return r;
}

LayerMetrics layer_averages(const std::vector<SvnMetrics>& per_svn) {
  if (per_svn.empty()) throw std::invalid_argument("layer_averages: empty SVN list");
  LayerMetrics l;
  for (const auto& m : per_svn) {
    l.mean_collision += m.collision_prob;
    l.mean_blocking += m.blocking_prob;
    l.mean_utilization += m.joint_utilization;
    l.mean_handover += m.handover_prob;
  }
  const double n = static_cast<double>(per_svn.size());
  l.mean_collision /= n;
  l.mean_blocking /= n;
  l.mean_utilization /= n;
  l.mean_handover /= n;
  return l;
}

std::vector<SvnContext> build_contexts(const Scenario& s, const Mapping& m,
                                       std::optional<double> imposed_blocking) {
  if (imposed_blocking && (*imposed_blocking < 0.0 || *imposed_blocking > 1.0))
    throw std::invalid_argument("build_contexts: imposed blocking must lie in [0,1]");

  std::vector<SvnContext> ctx;
  ctx.reserve(s.svn_requests.size());
  for (const SvnRequest& req : s.svn_requests) {
    auto it = m.assignments.find(req.svn_id);
    if (it == m.assignments.end() || it->second.empty())
      throw std::invalid_argument("build_contexts: svn '" + req.svn_id +
                                  "' has no assigned channels");
    SvnContext c;
    c.svn_id = req.svn_id;
    c.profiles.reserve(it->second.size());
    for (const auto& cid : it->second) {
      const Channel* ch = s.find_channel(cid);
      if (ch == nullptr)
        throw std::invalid_argument("build_contexts: unknown channel id '" + cid + "'");
      c.profiles.push_back(profile_channel(*ch));
    }
    const SuDemand d = su_demand(req);
    c.su_mean = d.mean_sus;
    c.mean_demand_bps = req.mean_demand_bps;
    c.chsu = channels_per_su(req.mean_demand_bps, c.profiles);
    c.blocking = imposed_blocking
                     ? *imposed_blocking
                     : blocking_probability(c.profiles, c.su_mean, c.chsu);
    ctx.push_back(std::move(c));
  }
  return ctx;
}

MetricsReport evaluate_mapping(const Scenario& s, const Mapping& m,
                               std::optional<double> imposed_blocking) {
  const std::vector<SvnContext> ctx = build_contexts(s, m, imposed_blocking);

  MetricsReport report;
  report.per_svn.reserve(ctx.size());
  for (std::size_t l = 0; l < ctx.size(); ++l) {
    const SvnContext& c = ctx[l];
    const SvnRequest& req = *s.find_svn(c.svn_id);
    const SuDemand d = su_demand(req);

    SvnMetrics out;
    out.svn_id = c.svn_id;
    out.channels_per_su = c.chsu;
    out.mean_channel_rate_bps = mean_channel_rate(c.profiles);
    out.collision_prob = collision_probability(c.profiles, c.su_mean, c.chsu);
    out.blocking_prob = c.blocking;
    out.joint_utilization = joint_utilization(c.profiles, c.su_mean, c.chsu, c.blocking);
    out.allocated_rate_bps = allocated_rate(c.profiles);
    out.requested_rate_bps = d.requested_bps;

    const HandoverResult h = handover_chain(l, ctx);
    out.handover_attempt_prob = h.attempt_prob;
    out.handover_prob = h.handover_prob;
    out.admitted_sus = h.admitted;
    report.per_svn.push_back(std::move(out));
  }
  report.layer = layer_averages(report.per_svn);
  return report;
}

}  // namespace crvn
