#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace moquery {

// Machine-readable record of one CLI invocation, written next to the human
// output so runs can be compared and replayed.
struct RunReport {
  std::vector<std::string> argv;
  std::string command;
  std::optional<std::uint64_t> seed;
  double wallTimeMs = 0.0;
  nlohmann::json details;  // operator-specific: results, sizes, counters
};

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j;
  j["argv"] = r.argv;
  j["command"] = r.command;
  if (r.seed) {
    j["seed"] = *r.seed;
  } else {
    j["seed"] = nullptr;
  }
  j["wallTimeMs"] = r.wallTimeMs;
  j["details"] = r.details;
  return j;
}

}  // namespace moquery
