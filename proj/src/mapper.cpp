#include "crvn/mapper.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <set>
#include <utility>

#include "crvn/channel_model.hpp"

namespace crvn {

namespace {

constexpr double kTol = 1e-12;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

bool same_objectives(const Objectives& a, const Objectives& b) {
  return a.mean_handover == b.mean_handover && a.mean_blocking == b.mean_blocking &&
         a.mean_utilization == b.mean_utilization;
}

bool objectives_before(const Objectives& a, const Objectives& b) {
  if (a.mean_handover != b.mean_handover) return a.mean_handover < b.mean_handover;
  if (a.mean_blocking != b.mean_blocking) return a.mean_blocking < b.mean_blocking;
  return a.mean_utilization > b.mean_utilization;
}

std::uint64_t pow_saturating(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

Objectives layer_objectives(const MetricsReport& r) {
  Objectives o;
  o.mean_handover = r.layer.mean_handover;
  o.mean_blocking = r.layer.mean_blocking;
  o.mean_utilization = r.layer.mean_utilization;
  return o;
}

void insert_nondominated(std::vector<CandidateSolution>& front, Mapping m,
                         const Objectives& o) {
  for (const auto& mem : front)
    if (same_objectives(mem.objectives, o) || dominates(mem.objectives, o)) return;
  std::erase_if(front, [&](const CandidateSolution& mem) {
    return dominates(o, mem.objectives);
  });
  CandidateSolution c;
  c.mapping = std::move(m);
  c.objectives = o;
  c.feasible = true;
  front.push_back(std::move(c));
}

}  // namespace

bool dominates(const Objectives& a, const Objectives& b) {
  const bool no_worse = a.mean_handover <= b.mean_handover + kTol &&
                        a.mean_blocking <= b.mean_blocking + kTol &&
                        a.mean_utilization >= b.mean_utilization - kTol;
  const bool strictly_better = a.mean_handover < b.mean_handover - kTol ||
                               a.mean_blocking < b.mean_blocking - kTol ||
                               a.mean_utilization > b.mean_utilization + kTol;
  return no_worse && strictly_better;
}

FeasibilityReport check_constraints(const Mapping& m, const Scenario& s) {
  for (const auto& [svn_id, set] : m.assignments) {
    if (s.find_svn(svn_id) == nullptr)
      throw std::invalid_argument("check_constraints: unknown svn id '" + svn_id + "'");
    for (const auto& cid : set)
      if (s.find_channel(cid) == nullptr)
        throw std::invalid_argument("check_constraints: unknown channel id '" + cid +
                                    "'");
  }

  FeasibilityReport rep;
  rep.shared_channels = overlapping_channels(m);
  for (const auto& cid : rep.shared_channels)
    rep.violations.push_back("channel '" + cid + "' is assigned to more than one svn");

  for (const SvnRequest& req : s.svn_requests) {
    ConstraintMargin cm;
    cm.svn_id = req.svn_id;
    const SuDemand d = su_demand(req);

    std::vector<ChannelProfile> profiles;
    if (auto it = m.assignments.find(req.svn_id); it != m.assignments.end()) {
      std::set<std::string> seen;
      for (const auto& cid : it->second) {
        if (!seen.insert(cid).second)
          rep.violations.push_back("svn '" + req.svn_id + "': duplicate channel '" +
                                   cid + "' in assignment");
        profiles.push_back(profile_channel(*s.find_channel(cid)));
      }
    }

    double collision = 0.0;
    double alloc = 0.0;
    if (!profiles.empty()) {
      const double chsu = channels_per_su(req.mean_demand_bps, profiles);
      collision = collision_probability(profiles, d.mean_sus, chsu);
      alloc = allocated_rate(profiles);
    }
    cm.collision_margin = s.collision_threshold - collision;
    cm.demand_margin = alloc - d.requested_bps;
    cm.satisfied = cm.collision_margin > 0.0 && cm.demand_margin >= 0.0;
    if (!(cm.collision_margin > 0.0))
      rep.violations.push_back("svn '" + req.svn_id + "': collision probability " +
                               fmt(collision) + " not below threshold " +
                               fmt(s.collision_threshold));
    if (cm.demand_margin < 0.0)
      rep.violations.push_back("svn '" + req.svn_id + "': allocated rate " + fmt(alloc) +
                               " bps below requested " + fmt(d.requested_bps) + " bps");
    rep.per_svn.push_back(std::move(cm));
  }
  rep.feasible = rep.violations.empty();
  return rep;
}

EnumerationBudgetExceeded::EnumerationBudgetExceeded(std::uint64_t required_,
                                                     std::uint64_t budget_)
    : std::runtime_error("exhaustive enumeration needs " + std::to_string(required_) +
                         " assignments but the budget is " + std::to_string(budget_) +
                         "; use the heuristic solver"),
      required(required_),
      budget(budget_) {}

ParetoFront enumerate_pareto(const Scenario& s, std::uint64_t budget) {
  const std::size_t n_channels = s.channels.size();
  const std::size_t n_svns = s.svn_requests.size();
  const std::uint64_t required =
      pow_saturating(static_cast<std::uint64_t>(n_svns) + 1, n_channels);
  if (required > budget) throw EnumerationBudgetExceeded(required, budget);

  // digit[i] chooses the owner of channel i: 0 = unassigned, k = SVN k-1
  std::vector<std::size_t> digit(n_channels, 0);
  std::vector<CandidateSolution> front;
  for (;;) {
    Mapping m;
    for (const auto& req : s.svn_requests) m.assignments[req.svn_id];
    bool any_empty = false;
    for (std::size_t i = 0; i < n_channels; ++i)
      if (digit[i] > 0)
        m.assignments[s.svn_requests[digit[i] - 1].svn_id].push_back(s.channels[i].id);
    for (const auto& [_, set] : m.assignments) any_empty |= set.empty();

    const FeasibilityReport rep = check_constraints(m, s);
    if (rep.feasible && !any_empty) {
      const Objectives o = layer_objectives(evaluate_mapping(s, m));
      insert_nondominated(front, std::move(m), o);
    }

    std::size_t k = 0;
    while (k < n_channels && ++digit[k] > n_svns) digit[k++] = 0;
    if (k == n_channels) break;
  }

  std::sort(front.begin(), front.end(),
            [](const CandidateSolution& a, const CandidateSolution& b) {
              if (!same_objectives(a.objectives, b.objectives))
                return objectives_before(a.objectives, b.objectives);
              return a.mapping.assignments < b.mapping.assignments;
            });
  ParetoFront out;
  out.members = std::move(front);
  return out;
}

double scalarized(const Objectives& o, const ScalarWeights& w) {
  return w.handover * o.mean_handover + w.blocking * o.mean_blocking -
         w.utilization * o.mean_utilization;
}

CandidateSolution heuristic_map(const Scenario& s, ScalarWeights w,
                                std::uint64_t move_budget) {
  if (w.handover < 0.0 || w.blocking < 0.0 || w.utilization < 0.0)
    throw std::invalid_argument("heuristic_map: weights must be nonnegative");
  if (w.handover == 0.0 && w.blocking == 0.0 && w.utilization == 0.0)
    throw std::invalid_argument("heuristic_map: weights must not all be zero");

  const std::size_t n_channels = s.channels.size();
  const int n_svns = static_cast<int>(s.svn_requests.size());

  std::vector<ChannelProfile> prof;
  prof.reserve(n_channels);
  for (const auto& c : s.channels) prof.push_back(profile_channel(c));

  std::vector<SuDemand> demand;
  demand.reserve(s.svn_requests.size());
  for (const auto& req : s.svn_requests) demand.push_back(su_demand(req));

  std::vector<std::size_t> order(n_channels);
  for (std::size_t i = 0; i < n_channels; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return prof[a].effective_rate_bps > prof[b].effective_rate_bps;
  });

  // owner[i]: -1 unassigned, else SVN index
  std::vector<int> owner(n_channels, -1);

  auto build_mapping = [&](const std::vector<int>& own) {
    Mapping m;
    for (const auto& req : s.svn_requests) m.assignments[req.svn_id];
    for (std::size_t i = 0; i < n_channels; ++i)
      if (own[i] >= 0)
        m.assignments[s.svn_requests[static_cast<std::size_t>(own[i])].svn_id]
            .push_back(s.channels[i].id);
    return m;
  };

  auto svn_needs = [&](const std::vector<int>& own, int l) {
    std::vector<ChannelProfile> set;
    for (std::size_t i = 0; i < n_channels; ++i)
      if (own[i] == l) set.push_back(prof[i]);
    const std::size_t idx = static_cast<std::size_t>(l);
    if (set.empty()) return true;
    if (allocated_rate(set) < demand[idx].requested_bps) return true;
    const double chsu =
        channels_per_su(s.svn_requests[idx].mean_demand_bps, set);
    return collision_probability(set, demand[idx].mean_sus, chsu) >=
           s.collision_threshold;
  };

  // greedy: strongest channel to the next SVN that still needs capacity
  int rr = 0;
  for (const std::size_t idx : order) {
    bool assigned = false;
    for (int k = 0; k < n_svns; ++k) {
      const int l = (rr + k) % n_svns;
      if (svn_needs(owner, l)) {
        owner[idx] = l;
        rr = (l + 1) % n_svns;
        assigned = true;
        break;
      }
    }
    if (!assigned) break;
  }

  std::uint64_t evals = 0;
  auto evaluate = [&](const std::vector<int>& own)
      -> std::optional<std::pair<double, Objectives>> {
    ++evals;
    const Mapping m = build_mapping(own);
    if (!check_constraints(m, s).feasible) return std::nullopt;
    const Objectives o = layer_objectives(evaluate_mapping(s, m));
    return std::make_pair(scalarized(o, w), o);
  };

  auto start = evaluate(owner);
  if (!start) {
    // fallback start: spread every channel round-robin, strongest first
    std::vector<int> spread(n_channels, -1);
    for (std::size_t k = 0; k < n_channels; ++k)
      spread[order[k]] = static_cast<int>(k) % n_svns;
    if (auto alt = evaluate(spread)) {
      owner = std::move(spread);
      start = alt;
    }
  }

  if (!start) {
    CandidateSolution c;
    c.mapping = build_mapping(owner);
    const FeasibilityReport rep = check_constraints(c.mapping, s);
    c.feasible = false;
    c.violations = rep.violations;
    bool any_empty = false;
    for (const auto& [_, set] : c.mapping.assignments) any_empty |= set.empty();
    if (any_empty) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      c.objectives = {nan, nan, nan};
    } else {
      c.objectives = layer_objectives(evaluate_mapping(s, c.mapping));
    }
    return c;
  }

  double best_scalar = start->first;
  Objectives best_obj = start->second;

  // first-improvement descent over single-channel moves and pairwise swaps
  bool improved = true;
  while (improved && evals < move_budget) {
    improved = false;
    for (std::size_t i = 0; i < n_channels && !improved; ++i) {
      const int from = owner[i];
      for (int to = -1; to < n_svns && !improved && evals < move_budget; ++to) {
        if (to == from) continue;
        owner[i] = to;
        if (auto r = evaluate(owner); r && r->first < best_scalar - kTol) {
          best_scalar = r->first;
          best_obj = r->second;
          improved = true;
        } else {
          owner[i] = from;
        }
      }
    }
    for (std::size_t i = 0; i + 1 < n_channels && !improved; ++i) {
      for (std::size_t j = i + 1; j < n_channels && !improved && evals < move_budget;
           ++j) {
        if (owner[i] == owner[j]) continue;
        std::swap(owner[i], owner[j]);
        if (auto r = evaluate(owner); r && r->first < best_scalar - kTol) {
          best_scalar = r->first;
          best_obj = r->second;
          improved = true;
        } else {
          std::swap(owner[i], owner[j]);
        }
      }
    }
  }

  CandidateSolution c;
  c.mapping = build_mapping(owner);
  const FeasibilityReport rep = check_constraints(c.mapping, s);
  c.objectives = best_obj;
  c.feasible = rep.feasible;
  c.violations = rep.violations;
  return c;
}

}  // namespace crvn
