#include "crvn/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>

#include "crvn/channel_model.hpp"
#include "crvn/metrics.hpp"

namespace crvn {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::vector<Channel> uniform_set(const Channel& tmpl, std::size_t n, double rho) {
  std::vector<Channel> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Channel c = tmpl;
    c.id = "ch" + std::to_string(i + 1);
    c.pu_arrival_rate = rho * c.pu_service_rate;
    out.push_back(std::move(c));
  }
  return out;
}

SweepRow evaluate_point(const SvnRequest& req, const std::vector<Channel>& set,
                        double value, std::optional<double> imposed_blocking) {
  SweepRow row;
  row.value = value;

  const std::vector<ChannelProfile> profiles = profile_channels(set);
  const SuDemand demand = su_demand(req);
  const double chsu = channels_per_su(req.mean_demand_bps, profiles);

  SvnContext ctx;
  ctx.svn_id = req.svn_id;
  ctx.profiles = profiles;
  ctx.su_mean = demand.mean_sus;
  ctx.chsu = chsu;
  ctx.mean_demand_bps = req.mean_demand_bps;
  ctx.blocking = imposed_blocking
                     ? *imposed_blocking
                     : blocking_probability(profiles, demand.mean_sus, chsu);

  row.collision = collision_probability(profiles, demand.mean_sus, chsu);
  row.blocking = ctx.blocking;
  row.utilization =
      joint_utilization(profiles, demand.mean_sus, chsu, ctx.blocking);
  row.su_utilization = (1.0 - ctx.blocking) * demand.mean_sus * chsu /
                       static_cast<double>(profiles.size());

  const std::vector<SvnContext> all{ctx};
  const HandoverResult h = handover_chain(0, all);
  row.handover_attempt = h.attempt_prob;
  row.handover = h.handover_prob;
  return row;
}

}  // namespace

std::string sweep_param_name(SweepParam p) {
  switch (p) {
    case SweepParam::kChannelRho: return "rho";
    case SweepParam::kChannelCount: return "channel_count";
    case SweepParam::kImposedBlocking: return "imposed_blocking";
  }
  return "unknown";
}

SweepResult run_sweep(const Scenario& scenario, const SweepSpec& spec) {
  if (spec.steps < 2)
    throw std::invalid_argument("run_sweep: steps must be >= 2");
  if (!std::isfinite(spec.start) || !std::isfinite(spec.stop) ||
      !(spec.start < spec.stop))
    throw std::invalid_argument("run_sweep: need finite start < stop");
  switch (spec.param) {
    case SweepParam::kChannelRho:
      if (spec.start < 0.0 || spec.stop > 1.0)
        throw std::invalid_argument("run_sweep: rho bounds must lie in [0,1]");
      break;
    case SweepParam::kChannelCount:
      if (spec.start < 1.0)
        throw std::invalid_argument("run_sweep: channel count must start at >= 1");
      break;
    case SweepParam::kImposedBlocking:
      if (spec.start < 0.0 || spec.stop > 1.0)
        throw std::invalid_argument(
            "run_sweep: imposed blocking bounds must lie in [0,1]");
      break;
  }
  if (scenario.channels.empty() || scenario.svn_requests.empty())
    throw std::invalid_argument(
        "run_sweep: scenario needs at least one channel and one svn request");

  const Channel& tmpl = scenario.channels.front();
  const SvnRequest& req = scenario.svn_requests.front();
  const std::size_t base_count = scenario.channels.size();
  const double base_rho = utilization(tmpl);

  SweepResult out;
  out.header_comments.push_back("sweep param=" + sweep_param_name(spec.param) +
                                " start=" + fmt(spec.start) + " stop=" +
                                fmt(spec.stop) + " steps=" +
                                std::to_string(spec.steps));
  out.header_comments.push_back(
      "fixed su_arrival_rate=" + fmt(req.su_arrival_rate) +
      " su_service_rate=" + fmt(req.su_service_rate) +
      " mean_demand_bps=" + fmt(req.mean_demand_bps));
  std::string fixed_channel = "fixed bandwidth_hz=" + fmt(tmpl.bandwidth_hz) +
                              " snr_mean_db=" + fmt(tmpl.snr_mean_db) +
                              " pu_service_rate=" + fmt(tmpl.pu_service_rate);
  if (spec.param != SweepParam::kChannelRho)
    fixed_channel += " rho=" + fmt(base_rho);
  if (spec.param != SweepParam::kChannelCount)
    fixed_channel += " channels=" + std::to_string(base_count);
  out.header_comments.push_back(std::move(fixed_channel));

  for (int k = 0; k < spec.steps; ++k) {
    const double v = spec.start + (spec.stop - spec.start) *
                                      static_cast<double>(k) /
                                      static_cast<double>(spec.steps - 1);
    SweepRow row;
    row.value = v;
    switch (spec.param) {
      case SweepParam::kChannelRho:
        if (v >= 1.0) {
          row.skipped = true;
          row.warning = "rho=" + fmt(v) + " leaves the stable domain (rho < 1)";
        } else {
          row = evaluate_point(req, uniform_set(tmpl, base_count, v), v,
                               std::nullopt);
        }
        break;
      case SweepParam::kChannelCount: {
        const long n = std::lround(v);
        if (n < 1) {
          row.skipped = true;
          row.warning = "channel count " + fmt(v) + " below 1";
        } else {
          row = evaluate_point(
              req, uniform_set(tmpl, static_cast<std::size_t>(n), base_rho),
              static_cast<double>(n), std::nullopt);
        }
        break;
      }
      case SweepParam::kImposedBlocking:
        row = evaluate_point(req, uniform_set(tmpl, base_count, base_rho), v, v);
        break;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

Scenario preset_scenario() {
  Scenario s;
  for (int i = 1; i <= 4; ++i) {
    Channel c;
    c.id = "ch" + std::to_string(i);
    c.bandwidth_hz = 1e6;
    c.pu_arrival_rate = 0.3;
    c.pu_service_rate = 1.0;
    c.snr_mean_db = 10.0;
    s.channels.push_back(std::move(c));
  }
  s.pvn_shares.push_back({"pvn1", 1.0});
  s.svn_requests.push_back({"svn1", 0.5, 0.5, 5e5});
  s.collision_threshold = 1.0;
  return s;
}

SweepSpec preset_spec(const std::string& name) {
  if (name == "fig2") return {SweepParam::kChannelRho, 0.05, 0.95, 19};
  if (name == "fig3") return {SweepParam::kChannelCount, 2.0, 20.0, 19};
  if (name == "fig4") return {SweepParam::kImposedBlocking, 0.0, 1.0, 21};
  throw std::invalid_argument("unknown sweep preset '" + name +
                              "' (expected fig2, fig3, or fig4)");
}

}  // namespace crvn
