#pragma once

#include <stdexcept>
#include <string>

#include "crvn/scenario.hpp"

namespace crvn {

/// Raised for malformed files: bad JSON, unknown keys, wrong types,
/// missing fields, unknown ids.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the scenario JSON document. Strict: the top level carries exactly
/// `channels`, `pvn_shares`, `svn_requests`, `collision_threshold`, and each
/// entry exactly its declared fields; unknown keys are rejected. Does not
/// validate invariants (see validate_scenario).
Scenario parse_scenario(const std::string& json_text);

/// parse_scenario + require_valid on the file contents.
Scenario load_scenario(const std::string& path);

/// Parses {"assignments": {svn_id: [channel_id, ...]}}; strict keys.
Mapping parse_mapping(const std::string& json_text);

/// parse_mapping on the file, then checks every id against the scenario.
Mapping load_mapping(const std::string& path, const Scenario& s);

std::string scenario_to_json(const Scenario& s);
std::string mapping_to_json(const Mapping& m);

}  // namespace crvn
