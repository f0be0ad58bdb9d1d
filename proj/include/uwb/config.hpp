#pragma once

#include <string>

#include "uwb/harness.hpp"

namespace uwb {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Load a declarative run configuration (JSON). Throws std::runtime_error
// with a field-qualified message on malformed input.
SimConfig load_config(const std::string& path);
SimConfig parse_config(const std::string& json_text, const std::string& origin);

// Canonical serialized form (sorted keys, 17 significant digits); hashing
// this gives the config fingerprint recorded in manifests.
std::string canonical_config(const SimConfig& cfg);
std::string config_hash(const SimConfig& cfg);

// Parse a receiver list override like
//   "conventional,blanking:T=2.5,blanking:topt,cda:mu=0.3,cda:kappa=3"
std::vector<ReceiverSpec> parse_receiver_list(const std::string& text);

// "0:2:20" (start:step:stop) or "0,2,4,.." -> grid
std::vector<double> parse_grid(const std::string& text);

}  // namespace uwb
