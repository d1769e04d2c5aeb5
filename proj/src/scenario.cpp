#include "crvn/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace crvn {

namespace {

constexpr double kShareSumTolerance = 1e-9;

void check_positive(std::vector<std::string>& errs, const std::string& where,
                    const std::string& field, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    errs.push_back(where + ": " + field + " must be positive (got " +
                   std::to_string(v) + ")");
  }
}

}  // namespace

const Channel* Scenario::find_channel(const std::string& id) const {
  auto it = std::find_if(channels.begin(), channels.end(),
                         [&](const Channel& c) { return c.id == id; });
  return it == channels.end() ? nullptr : &*it;
}

const SvnRequest* Scenario::find_svn(const std::string& id) const {
  auto it = std::find_if(svn_requests.begin(), svn_requests.end(),
                         [&](const SvnRequest& r) { return r.svn_id == id; });
  return it == svn_requests.end() ? nullptr : &*it;
}

std::size_t PvnAllocation::total_channels() const {
  std::size_t n = 0;
  for (const auto& [_, ids] : sets) n += ids.size();
  return n;
}

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> errs;

  if (s.channels.empty()) errs.push_back("scenario: channel list must be nonempty");
  if (s.svn_requests.empty()) errs.push_back("scenario: svn_requests must be nonempty");
  if (s.pvn_shares.empty()) errs.push_back("scenario: pvn_shares must be nonempty");

  std::set<std::string> seen;
  for (const Channel& c : s.channels) {
    const std::string where = "channel '" + c.id + "'";
    if (!seen.insert(c.id).second) errs.push_back(where + ": duplicate id");
    if (!(c.bandwidth_hz > 0.0) || !std::isfinite(c.bandwidth_hz))
      errs.push_back(where + ": bandwidth_hz must be positive");
    if (c.pu_arrival_rate < 0.0 || !std::isfinite(c.pu_arrival_rate))
      errs.push_back(where + ": pu_arrival_rate must be nonnegative");
    check_positive(errs, where, "pu_service_rate", c.pu_service_rate);
    check_positive(errs, where, "snr_mean_db", c.snr_mean_db);
    if (c.pu_service_rate > 0.0 && c.pu_arrival_rate >= 0.0 &&
        c.pu_arrival_rate / c.pu_service_rate >= 1.0) {
      errs.push_back(where + ": utilization must be < 1 (pu_arrival_rate/pu_service_rate = " +
                     std::to_string(c.pu_arrival_rate / c.pu_service_rate) + ")");
    }
  }

  seen.clear();
  double share_sum = 0.0;
  for (const PvnShare& p : s.pvn_shares) {
    const std::string where = "pvn '" + p.pvn_id + "'";
    if (!seen.insert(p.pvn_id).second) errs.push_back(where + ": duplicate id");
    if (p.share < 0.0 || p.share > 1.0 || !std::isfinite(p.share))
      errs.push_back(where + ": share must lie in [0,1]");
    share_sum += p.share;
  }
  if (!s.pvn_shares.empty() && std::fabs(share_sum - 1.0) > kShareSumTolerance) {
    errs.push_back("pvn_shares: shares must sum to 1 (got " + std::to_string(share_sum) + ")");
  }

  seen.clear();
  for (const SvnRequest& r : s.svn_requests) {
    const std::string where = "svn '" + r.svn_id + "'";
    if (!seen.insert(r.svn_id).second) errs.push_back(where + ": duplicate id");
    check_positive(errs, where, "su_arrival_rate", r.su_arrival_rate);
    check_positive(errs, where, "su_service_rate", r.su_service_rate);
    check_positive(errs, where, "mean_demand_bps", r.mean_demand_bps);
  }

  if (!(s.collision_threshold > 0.0) || s.collision_threshold > 1.0 ||
      !std::isfinite(s.collision_threshold)) {
    errs.push_back("collision_threshold must lie in (0,1] (got " +
                   std::to_string(s.collision_threshold) + ")");
  }

  return errs;
}

const Scenario& require_valid(const Scenario& s) {
  const auto errs = validate_scenario(s);
  if (errs.empty()) return s;
  std::ostringstream msg;
  msg << "invalid scenario (" << errs.size() << " violation" << (errs.size() == 1 ? "" : "s") << "):";
  for (const auto& e : errs) msg << "\n  - " << e;
  throw std::invalid_argument(msg.str());
}

PvnAllocation allocate_pvn_channels(const std::vector<Channel>& channels,
                                    const std::vector<PvnShare>& shares) {
  if (channels.empty()) throw std::invalid_argument("allocate_pvn_channels: empty channel list");
  if (shares.empty()) throw std::invalid_argument("allocate_pvn_channels: empty share list");

  const std::size_t m = channels.size();
  std::vector<std::size_t> counts(shares.size());
  std::vector<double> remainders(shares.size());
  std::size_t assigned = 0;
  for (std::size_t j = 0; j < shares.size(); ++j) {
    const double exact = static_cast<double>(m) * shares[j].share;
    counts[j] = static_cast<std::size_t>(std::floor(exact));
    remainders[j] = exact - static_cast<double>(counts[j]);
    assigned += counts[j];
  }

  // Hand leftover channels out by descending fractional remainder, ties to
  // the lower input index.
  std::vector<std::size_t> order(shares.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });
  for (std::size_t k = 0; assigned < m; ++k) {
    counts[order[k % order.size()]] += 1;
    ++assigned;
  }

  PvnAllocation alloc;
  std::size_t next = 0;
  for (std::size_t j = 0; j < shares.size(); ++j) {
    std::vector<std::string> ids;
    ids.reserve(counts[j]);
    for (std::size_t k = 0; k < counts[j]; ++k) ids.push_back(channels[next++].id);
    alloc.sets.emplace_back(shares[j].pvn_id, std::move(ids));
  }
  return alloc;
}

std::vector<std::string> validate_mapping(const Mapping& m, const Scenario& s) {
  std::vector<std::string> errs;
  for (const auto& [svn_id, ids] : m.assignments) {
    if (s.find_svn(svn_id) == nullptr)
      errs.push_back("mapping: unknown svn id '" + svn_id + "'");
    std::set<std::string> unique;
    for (const auto& cid : ids) {
      if (s.find_channel(cid) == nullptr)
        errs.push_back("mapping: unknown channel id '" + cid + "' (svn '" + svn_id + "')");
      if (!unique.insert(cid).second)
        errs.push_back("mapping: channel '" + cid + "' listed twice for svn '" + svn_id + "'");
    }
  }
  return errs;
}

std::vector<std::string> overlapping_channels(const Mapping& m) {
  std::map<std::string, int> owners;
  for (const auto& [_, ids] : m.assignments)
    for (const auto& cid : ids) owners[cid] += 1;
  std::vector<std::string> shared;
  for (const auto& [cid, count] : owners)
    if (count > 1) shared.push_back(cid);
  return shared;
}

}  // namespace crvn
