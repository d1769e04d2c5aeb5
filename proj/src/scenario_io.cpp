#include "crvn/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace crvn {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) known |= item.key() == key;
    if (!known)
      throw ParseError(where + ": unknown key '" + item.key() + "'");
  }
}

const json& require_key(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing key '" + key + "'");
  return *it;
}

double as_number(const json& v, const char* key, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": '" + std::string(key) +
                                       "' must be a number");
  return v.get<double>();
}

std::string as_string(const json& v, const char* key, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": '" + std::string(key) +
                                       "' must be a string");
  return v.get<std::string>();
}

const json& as_array(const json& v, const char* key, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": '" + std::string(key) +
                                      "' must be an array");
  return v;
}

const json& as_object(const json& v, const std::string& where) {
  if (!v.is_object()) throw ParseError(where + ": expected an object");
  return v;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  const json doc = parse_text(json_text);
  as_object(doc, "scenario");
  reject_unknown_keys(doc, {"channels", "pvn_shares", "svn_requests",
                            "collision_threshold"},
                      "scenario");

  Scenario s;
  const json& channels = as_array(require_key(doc, "channels", "scenario"),
                                  "channels", "scenario");
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const std::string where = "channels[" + std::to_string(i) + "]";
    const json& c = as_object(channels[i], where);
    reject_unknown_keys(c, {"id", "bandwidth_hz", "pu_arrival_rate",
                            "pu_service_rate", "snr_mean_db"},
                        where);
    Channel ch;
    ch.id = as_string(require_key(c, "id", where), "id", where);
    ch.bandwidth_hz =
        as_number(require_key(c, "bandwidth_hz", where), "bandwidth_hz", where);
    ch.pu_arrival_rate = as_number(require_key(c, "pu_arrival_rate", where),
                                   "pu_arrival_rate", where);
    ch.pu_service_rate = as_number(require_key(c, "pu_service_rate", where),
                                   "pu_service_rate", where);
    ch.snr_mean_db =
        as_number(require_key(c, "snr_mean_db", where), "snr_mean_db", where);
    s.channels.push_back(std::move(ch));
  }

  const json& shares = as_array(require_key(doc, "pvn_shares", "scenario"),
                                "pvn_shares", "scenario");
  for (std::size_t i = 0; i < shares.size(); ++i) {
    const std::string where = "pvn_shares[" + std::to_string(i) + "]";
    const json& p = as_object(shares[i], where);
    reject_unknown_keys(p, {"pvn_id", "share"}, where);
    PvnShare ps;
    ps.pvn_id = as_string(require_key(p, "pvn_id", where), "pvn_id", where);
    ps.share = as_number(require_key(p, "share", where), "share", where);
    s.pvn_shares.push_back(std::move(ps));
  }

  const json& svns = as_array(require_key(doc, "svn_requests", "scenario"),
                              "svn_requests", "scenario");
  for (std::size_t i = 0; i < svns.size(); ++i) {
    const std::string where = "svn_requests[" + std::to_string(i) + "]";
    const json& r = as_object(svns[i], where);
    reject_unknown_keys(r, {"svn_id", "su_arrival_rate", "su_service_rate",
                            "mean_demand_bps"},
                        where);
    SvnRequest req;
    req.svn_id = as_string(require_key(r, "svn_id", where), "svn_id", where);
    req.su_arrival_rate = as_number(require_key(r, "su_arrival_rate", where),
                                    "su_arrival_rate", where);
    req.su_service_rate = as_number(require_key(r, "su_service_rate", where),
                                    "su_service_rate", where);
    req.mean_demand_bps = as_number(require_key(r, "mean_demand_bps", where),
                                    "mean_demand_bps", where);
    s.svn_requests.push_back(std::move(req));
  }

  s.collision_threshold =
      as_number(require_key(doc, "collision_threshold", "scenario"),
                "collision_threshold", "scenario");
  return s;
}

Scenario load_scenario(const std::string& path) {
  Scenario s = parse_scenario(read_file(path));
  require_valid(s);
  return s;
}

Mapping parse_mapping(const std::string& json_text) {
  const json doc = parse_text(json_text);
  as_object(doc, "mapping");
  reject_unknown_keys(doc, {"assignments"}, "mapping");
  const json& assignments =
      as_object(require_key(doc, "assignments", "mapping"), "mapping.assignments");

  Mapping m;
  for (const auto& item : assignments.items()) {
    const std::string where = "assignments['" + item.key() + "']";
    const json& arr = as_array(item.value(), item.key().c_str(), where);
    std::vector<std::string> set;
    for (std::size_t i = 0; i < arr.size(); ++i)
      set.push_back(as_string(arr[i], "channel id", where));
    m.assignments[item.key()] = std::move(set);
  }
  return m;
}

Mapping load_mapping(const std::string& path, const Scenario& s) {
  Mapping m = parse_mapping(read_file(path));
  const std::vector<std::string> errs = validate_mapping(m, s);
  if (!errs.empty()) {
    std::string msg = "mapping inconsistent with scenario:";
    for (const auto& e : errs) msg += "\n  - " + e;
    throw ParseError(msg);
  }
  return m;
}

std::string scenario_to_json(const Scenario& s) {
  json doc;
  doc["channels"] = json::array();
  for (const auto& c : s.channels)
    doc["channels"].push_back({{"id", c.id},
                               {"bandwidth_hz", c.bandwidth_hz},
                               {"pu_arrival_rate", c.pu_arrival_rate},
                               {"pu_service_rate", c.pu_service_rate},
                               {"snr_mean_db", c.snr_mean_db}});
  doc["pvn_shares"] = json::array();
  for (const auto& p : s.pvn_shares)
    doc["pvn_shares"].push_back({{"pvn_id", p.pvn_id}, {"share", p.share}});
  doc["svn_requests"] = json::array();
  for (const auto& r : s.svn_requests)
    doc["svn_requests"].push_back({{"svn_id", r.svn_id},
                                   {"su_arrival_rate", r.su_arrival_rate},
                                   {"su_service_rate", r.su_service_rate},
                                   {"mean_demand_bps", r.mean_demand_bps}});
  doc["collision_threshold"] = s.collision_threshold;
  return doc.dump(2);
}

std::string mapping_to_json(const Mapping& m) {
  json assignments = json::object();
  for (const auto& [svn_id, set] : m.assignments) assignments[svn_id] = set;
  return json{{"assignments", assignments}}.dump(2);
}

}  // namespace crvn
