#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace grpx {

/// Machine-readable record of one verified claim.  Serialization keeps a
/// stable key order so certificates can be compared byte-for-byte; the
/// determinism hash additionally excludes the elapsed-time field.
struct Certificate {
  static constexpr int kSchemaVersion = 1;

  std::string claim;                                        // claim identifier
  std::vector<std::pair<std::string, std::string>> inputs;  // asset file -> sha256
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
  std::string verdict = "SKIPPED";  // PASS | FAIL | SKIPPED
  std::string diff;                 // set when verdict is FAIL
  uint64_t seed = 0;
  int64_t elapsed_ms = 0;

  void add_input(const std::string& asset_filename);  // records its sha256
  void pass() { verdict = "PASS"; }
  void fail(const std::string& why) {
    verdict = "FAIL";
    diff = why;
  }
  bool passed() const { return verdict == "PASS"; }

  nlohmann::ordered_json to_json() const;
  std::string to_string() const;  // pretty-printed JSON

  /// SHA-256 of the serialization with elapsed_ms removed.
  std::string determinism_hash() const;
};

/// Serialize a batch to one JSON document (array under "certificates").
std::string certificates_to_json(const std::vector<Certificate>& certs);

}  // namespace grpx
