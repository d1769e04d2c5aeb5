// End-to-end acceptance checks for the analytic model, the oracles, and the
// mapper. Each check prints one PASS/FAIL line; the process exits nonzero if
// any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "crvn/channel_model.hpp"
#include "crvn/mapper.hpp"
#include "crvn/metrics.hpp"
#include "crvn/occupancy.hpp"
#include "crvn/oracle_sim.hpp"
#include "crvn/rng.hpp"
#include "crvn/scenario.hpp"
#include "crvn/sweep.hpp"

using namespace crvn;

namespace {

using Detail = std::optional<std::string>;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ChannelProfile make_profile(double rho) {
  ChannelProfile p;
  p.channel_id = "c";
  p.rho = rho;
  p.p_off = 1.0 - rho;
  p.mean_capacity_bps = 1e6;
  p.effective_rate_bps = p.p_off * 1e6;
  return p;
}

std::vector<ChannelProfile> profiles_of(const std::vector<double>& rhos) {
  std::vector<ChannelProfile> out;
  for (double r : rhos) out.push_back(make_profile(r));
  return out;
}

Channel make_channel(const std::string& id, double arrival, double service,
                     double bw, double snr) {
  Channel c;
  c.id = id;
  c.bandwidth_hz = bw;
  c.pu_arrival_rate = arrival;
  c.pu_service_rate = service;
  c.snr_mean_db = snr;
  return c;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// --- 1: exact count law ----------------------------------------------------

Detail check_count_convolution() {
  const auto t0 = Clock::now();
  RandomStream rng(101);
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.next_u64() % 12;
    std::vector<double> rhos(n);
    for (auto& r : rhos) r = rng.uniform();
    const auto busy = pu_count_distribution(rhos);
    const auto busy_ref = brute_force_count_distribution(rhos, CountKind::PuBusy);
    const auto idle = idle_count_distribution(rhos);
    const auto idle_ref =
        brute_force_count_distribution(rhos, CountKind::ChannelIdle);
    for (std::size_t k = 0; k <= n; ++k) {
      worst = std::max(worst, std::abs(busy.pmf[k] - busy_ref.pmf[k]));
      worst = std::max(worst, std::abs(idle.pmf[k] - idle_ref.pmf[k]));
    }
  }
  if (worst >= 1e-12) return fmt("max deviation %.3e exceeds 1e-12", worst);
  const double dt = seconds_since(t0);
  if (dt >= 10.0) return fmt("took %.1f s, budget 10 s", dt);
  return {};
}

// --- 2: Monte Carlo agreement ---------------------------------------------

Detail check_sampling_agreement() {
  const auto t0 = Clock::now();
  RandomStream rng(202);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 1 + rng.next_u64() % 6;
    std::vector<double> rhos(n);
    for (auto& r : rhos) r = rng.uniform() * 0.95;
    const double su = 0.05 + rng.uniform() * 2.95;
    const double chsu = 1.0 + rng.uniform() * 2.0;
    const auto set = profiles_of(rhos);
    const double pc = collision_probability(set, su, chsu);
    const double pb = blocking_probability(set, su, chsu);
    const auto est = sample_metrics(set, su, chsu, 1'000'000, 9000 + rep);
    if (!est.collision.within_3_sigma(pc))
      return "case " + std::to_string(rep) +
             fmt(": collision analytic %.6f vs estimate %.6f (se %.2e)", pc,
                 est.collision.value, est.collision.std_error);
    if (!est.blocking.within_3_sigma(pb))
      return "case " + std::to_string(rep) +
             fmt(": blocking analytic %.6f vs estimate %.6f (se %.2e)", pb,
                 est.blocking.value, est.blocking.std_error);
  }
  const double dt = seconds_since(t0);
  if (dt >= 60.0) return fmt("took %.1f s, budget 60 s", dt);
  return {};
}

// --- 3: single-channel-per-user reduction ---------------------------------

Detail check_reduction_identity() {
  RandomStream rng(303);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.next_u64() % 10;
    std::vector<double> rhos(n);
    for (auto& r : rhos) r = rng.uniform() * 0.99;
    const double su = rng.uniform() * 3.0;
    const double general = collision_probability(profiles_of(rhos), su, 1.0);
    const double direct = single_channel_collision_reference(rhos, su);
    if (std::abs(general - direct) >= 1e-12)
      return fmt("deviation %.3e at case %d", std::abs(general - direct),
                 double(rep));
  }
  return {};
}

// --- 4: occupancy sweep ----------------------------------------------------

Detail check_occupancy_trends() {
  // 4 identical channels, offered SU load 1, one channel per SU
  std::vector<double> pc, pb, util, su_util;
  for (int k = 0; k < 19; ++k) {
    const double rho = 0.05 + 0.90 * k / 18.0;
    const auto set = profiles_of({rho, rho, rho, rho});
    const double b = blocking_probability(set, 1.0, 1.0);
    pc.push_back(collision_probability(set, 1.0, 1.0));
    pb.push_back(b);
    util.push_back(joint_utilization(set, 1.0, 1.0, b));
    su_util.push_back((1.0 - b) * 1.0 * 1.0 / 4.0);
  }
  for (std::size_t i = 1; i < pc.size(); ++i) {
    if (pc[i] < pc[i - 1] - 1e-12)
      return fmt("collision dips at point %.0f", double(i));
    if (pb[i] < pb[i - 1] - 1e-12)
      return fmt("blocking dips at point %.0f", double(i));
  }
  if (std::abs(util.back() - 1.0) > 0.1)
    return fmt("utilization ends at %.4f, not near 1", util.back());
  if (std::abs(util.back() - 1.0) >= std::abs(util.front() - 1.0))
    return "utilization does not approach 1 across the sweep";
  std::size_t peak = 0;
  for (std::size_t i = 1; i < su_util.size(); ++i)
    if (su_util[i] > su_util[peak]) peak = i;
  for (std::size_t i = peak + 1; i < su_util.size(); ++i)
    if (su_util[i] > su_util[i - 1] + 1e-12)
      return fmt("secondary share rises again at point %.0f", double(i));
  double low = su_util[0];
  for (double v : su_util) low = std::min(low, v);
  if (su_util.back() > low + 1e-15)
    return "secondary share does not end at its minimum";
  if (su_util.back() > 0.5 * su_util[peak])
    return fmt("secondary share decays only to %.3f of its peak",
               su_util.back() / su_util[peak]);
  return {};
}

// --- 5: channel-count sweep ------------------------------------------------

Detail check_channel_count_trends() {
  const SweepResult r = run_sweep(preset_scenario(), preset_spec("fig3"));
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const auto& a = r.rows[i - 1];
    const auto& b = r.rows[i];
    if (b.collision > a.collision + 1e-12)
      return fmt("collision rises at %.0f channels", b.value);
    if (b.blocking > a.blocking + 1e-12)
      return fmt("blocking rises at %.0f channels", b.value);
    if (a.value >= 10.0) {  // the large-set regime
      if (b.utilization >= a.utilization)
        return fmt("utilization fails to decay at %.0f channels", b.value);
      if (b.handover_attempt > a.handover_attempt + 1e-12)
        return fmt("handover attempt rises at %.0f channels", b.value);
    }
  }
  return {};
}

// --- 6: imposed-blocking sweep --------------------------------------------

Detail check_imposed_blocking_trends() {
  const SweepResult r = run_sweep(preset_scenario(), preset_spec("fig4"));
  double min_attempt = r.rows[0].handover_attempt;
  double min_util = r.rows[0].utilization;
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const auto& a = r.rows[i - 1];
    const auto& b = r.rows[i];
    if (b.handover_attempt > a.handover_attempt + 1e-12)
      return fmt("attempt rises at blocking %.2f", b.value);
    if (b.utilization > a.utilization + 1e-12)
      return fmt("utilization rises at blocking %.2f", b.value);
    min_attempt = std::min(min_attempt, b.handover_attempt);
    min_util = std::min(min_util, b.utilization);
  }
  const auto& last = r.rows.back();
  if (last.value != 1.0) return "sweep does not reach full blocking";
  if (last.handover_attempt != 0.0)
    return fmt("attempt is %.3e at full blocking, expected 0",
               last.handover_attempt);
  if (last.handover_attempt > min_attempt || last.utilization > min_util + 1e-15)
    return "the floor is not attained at full blocking";
  return {};
}

// --- 7: mapper -------------------------------------------------------------

Detail check_mapper() {
  const auto t0 = Clock::now();
  RandomStream rng(707);
  int built = 0, attempts = 0;
  while (built < 20 && attempts < 400) {
    ++attempts;
    const int m = 2 + int(rng.next_u64() % 7);   // 2..8 channels
    const int nsvn = 1 + int(rng.next_u64() % 2);  // 1..2 networks
    Scenario s;
    for (int i = 0; i < m; ++i)
      s.channels.push_back(make_channel("ch" + std::to_string(i + 1),
                                        0.05 + 0.55 * rng.uniform(), 1.0, 1e6,
                                        15.0 * rng.uniform()));
    s.pvn_shares = {{"pvn1", 1.0}};
    for (int l = 0; l < nsvn; ++l)
      s.svn_requests.push_back({"svn" + std::to_string(l + 1),
                                0.1 + 0.9 * rng.uniform(),
                                0.5 + rng.uniform(),
                                1e5 + 5e5 * rng.uniform()});
    s.collision_threshold = 0.3 + 0.6 * rng.uniform();
    const ParetoFront front = enumerate_pareto(s);
    if (front.members.empty()) continue;  // regenerate an infeasible draw
    ++built;
    for (const auto& member : front.members)
      if (!check_constraints(member.mapping, s).feasible)
        return "front member violates its own constraints (instance " +
               std::to_string(built) + ")";
    const CandidateSolution sol = heuristic_map(s);
    if (!sol.feasible)
      return "heuristic infeasible on a feasible instance " +
             std::to_string(built);
    for (const auto& member : front.members) {
      const bool same =
          std::abs(member.objectives.mean_handover -
                   sol.objectives.mean_handover) < 1e-12 &&
          std::abs(member.objectives.mean_blocking -
                   sol.objectives.mean_blocking) < 1e-12 &&
          std::abs(member.objectives.mean_utilization -
                   sol.objectives.mean_utilization) < 1e-12;
      if (!same && dominates(member.objectives, sol.objectives))
        return "heuristic dominated on instance " + std::to_string(built) +
               fmt(" (handover %.6f vs %.6f)", sol.objectives.mean_handover,
                   member.objectives.mean_handover);
    }
  }
  if (built < 20)
    return "could not draw 20 feasible instances in 400 attempts";
  const double dt = seconds_since(t0);
  if (dt >= 120.0) return fmt("took %.1f s, budget 120 s", dt);
  return {};
}

// --- 8: structural invariants ---------------------------------------------

Detail check_invariants() {
  RandomStream rng(808);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rng.next_u64() % 6;
    std::vector<double> rhos(n);
    for (auto& r : rhos) r = rng.uniform() * 0.99;
    const auto set = profiles_of(rhos);
    const double su = rng.uniform() * 3.0;
    const double chsu = 1.0 + rng.uniform() * 2.0;
    if (blocking_probability(set, su, chsu) <
        collision_probability(set, su, chsu) - 1e-15)
      return "blocking fell below collision";
    double idle_direct = 0.0;
    for (double r : rhos) idle_direct += 1.0 - r;
    if (std::abs(expected_idle_channels(rhos) - idle_direct) >= 1e-10)
      return "mean idle-channel count disagrees with the direct sum";
  }
  for (int rep = 0; rep < 60; ++rep) {
    std::vector<SvnContext> all(2);
    for (int l = 0; l < 2; ++l) {
      const std::size_t n = 1 + rng.next_u64() % 4;
      std::vector<double> rhos(n);
      for (auto& r : rhos) r = rng.uniform() * 0.95;
      all[l].svn_id = l == 0 ? "a" : "b";
      all[l].profiles = profiles_of(rhos);
      all[l].su_mean = rng.uniform() * 2.0;
      all[l].chsu = 1.0 + rng.uniform();
      all[l].blocking = rng.uniform();
      all[l].mean_demand_bps = 1e5 + 9e5 * rng.uniform();
    }
    for (std::size_t l = 0; l < 2; ++l) {
      const HandoverResult h = handover_chain(l, all);
      if (h.handover_prob > h.attempt_prob + 1e-15)
        return "handover exceeded its attempt probability";
    }
  }

  Scenario s;
  s.channels = {make_channel("ch1", 0.2, 1.0, 1e6, 10.0),
                make_channel("ch2", 0.4, 1.0, 1e6, 10.0),
                make_channel("ch3", 0.3, 1.0, 2e6, 8.0),
                make_channel("ch4", 0.1, 0.5, 1.5e6, 12.0)};
  s.pvn_shares = {{"pvn1", 1.0}};
  s.svn_requests = {{"svn1", 0.5, 0.5, 5e5}, {"svn2", 0.3, 0.6, 8e5}};
  s.collision_threshold = 0.5;
  Mapping m;
  m.assignments["svn1"] = {"ch1", "ch2"};
  m.assignments["svn2"] = {"ch3", "ch4"};
  const MetricsReport rep = evaluate_mapping(s, m);
  const auto bounded = [](double v, double a, double b) {
    return v >= std::min(a, b) - 1e-15 && v <= std::max(a, b) + 1e-15;
  };
  const auto& p = rep.per_svn;
  if (!bounded(rep.layer.mean_collision, p[0].collision_prob, p[1].collision_prob) ||
      !bounded(rep.layer.mean_blocking, p[0].blocking_prob, p[1].blocking_prob) ||
      !bounded(rep.layer.mean_utilization, p[0].joint_utilization,
               p[1].joint_utilization) ||
      !bounded(rep.layer.mean_handover, p[0].handover_prob, p[1].handover_prob))
    return "a layer mean left the per-network range";

  Scenario solo = s;
  solo.svn_requests = {{"svn1", 0.5, 0.5, 5e5}};
  Mapping all_mine;
  all_mine.assignments["svn1"] = {"ch1", "ch2", "ch3", "ch4"};
  if (evaluate_mapping(solo, all_mine).per_svn[0].handover_prob != 0.0)
    return "a lone network produced a nonzero handover probability";
  return {};
}

// --- 9: capacity integration ----------------------------------------------

Detail check_capacity_quadrature() {
  constexpr std::uint64_t kSamples = 10'000'000;
  const double kLn10Over10 = std::log(10.0) / 10.0;
  const double kLn2 = std::log(2.0);
  int idx = 0;
  for (const double snr : {1.0, 5.0, 10.0, 20.0}) {
    RandomStream rng(909 + idx++);
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t i = 0; i < kSamples; ++i) {
      const double t = rng.exponential(snr) * kLn10Over10;
      const double y = (t + std::log1p(std::exp(-t))) / kLn2;
      sum += y;
      sumsq += y * y;
    }
    const double mc = sum / kSamples;
    const double var = (sumsq / kSamples - mc * mc) / double(kSamples - 1) *
                       double(kSamples);
    const double se = std::sqrt(var / double(kSamples));
    const double quad = expected_spectral_efficiency(snr);
    if (std::abs(mc - quad) > 3.0 * se)
      return fmt("snr %.0f dB: quadrature %.8f vs sampling %.8f", snr, quad,
                 mc);
  }
  const Channel narrow = make_channel("a", 0.2, 1.0, 1e6, 10.0);
  const Channel wide = make_channel("b", 0.2, 1.0, 2e6, 10.0);
  if (mean_capacity(wide) != 2.0 * mean_capacity(narrow))
    return "doubling the bandwidth does not exactly double the capacity";
  return {};
}

// --- 10: event-level channel simulation -----------------------------------

Detail check_ctmc_occupancy() {
  for (const double rho : {0.1, 0.5, 0.9}) {
    const Channel c = make_channel("c", rho, 1.0, 1e6, 10.0);
    const double horizon = 1e5;
    const double frac = simulate_channel_occupancy(c, horizon, 4242);
    const double se = ctmc_busy_fraction_std_error(rho, 1.0, horizon);
    if (std::abs(frac - rho) > 3.0 * se)
      return fmt("rho %.1f: busy fraction %.5f outside 3 sigma (se %.2e)", rho,
                 frac, se);
  }
  return {};
}

struct Criterion {
  const char* name;
  Detail (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"count-distribution convolution matches subset enumeration",
       check_count_convolution},
      {"analytic collision and blocking within three sigma of direct sampling",
       check_sampling_agreement},
      {"general collision formula reduces to the single-channel route",
       check_reduction_identity},
      {"occupancy sweep: collision and blocking rise, utilization saturates, "
       "secondary share decays",
       check_occupancy_trends},
      {"channel-count sweep: collision and blocking fall, utilization "
       "eventually decays",
       check_channel_count_trends},
      {"imposed-blocking sweep: attempt and utilization fall to their floor",
       check_imposed_blocking_trends},
      {"heuristic mapper lands on the exhaustive non-dominated front",
       check_mapper},
      {"structural invariants hold across randomized inputs", check_invariants},
      {"capacity quadrature agrees with Monte Carlo and scales linearly in "
       "bandwidth",
       check_capacity_quadrature},
      {"two-state channel simulation reproduces stationary occupancy",
       check_ctmc_occupancy},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Detail d;
    try {
      d = c.run();
    } catch (const std::exception& e) {
      d = std::string("unexpected exception: ") + e.what();
    }
    if (d) {
      std::printf("FAIL: %s (%s)\n", c.name, d->c_str());
      ++failures;
    } else {
      std::printf("PASS: %s\n", c.name);
    }
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
