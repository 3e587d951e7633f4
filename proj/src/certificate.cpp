#include "grpx/certificate.hpp"

#include "grpx/assets.hpp"
#include "grpx/sha256.hpp"

namespace grpx {

void Certificate::add_input(const std::string& asset_filename) {
  inputs.emplace_back(asset_filename, sha256_hex(read_asset_text(asset_filename)));
}

nlohmann::ordered_json Certificate::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["claim"] = claim;
  nlohmann::ordered_json in = nlohmann::ordered_json::object();
  for (const auto& [file, hash] : inputs) in[file] = hash;
  j["inputs"] = in;
  j["outputs"] = outputs;
  j["verdict"] = verdict;
  if (!diff.empty()) j["diff"] = diff;
  j["seed"] = seed;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

std::string Certificate::to_string() const { return to_json().dump(2); }

std::string Certificate::determinism_hash() const {
  nlohmann::ordered_json j = to_json();
  j.erase("elapsed_ms");
  return sha256_hex(j.dump());
}

std::string certificates_to_json(const std::vector<Certificate>& certs) {
  nlohmann::ordered_json j;
  j["schema_version"] = Certificate::kSchemaVersion;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : certs) arr.push_back(c.to_json());
  j["certificates"] = arr;
  return j.dump(2);
}

}  // namespace grpx
