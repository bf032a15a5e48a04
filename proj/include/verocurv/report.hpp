#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace verocurv {

inline constexpr const char* kVersion = "0.1.0";

// One run of a CLI command. Serialized output is byte-deterministic for
// identical inputs and seed; the wall time is carried for the stderr log
// only and never serialized.
struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::json inputs = nlohmann::json::object();   // path -> digest
  nlohmann::json results = nlohmann::json::object();
  double wall_ms = 0;
};

std::string fnv1a64(std::string_view data);
std::string fnv1a64_file(const std::string& path);

// Structured form (stable key order, no timing).
nlohmann::json report_to_json(const RunReport& r);

// Human-readable form, timing included.
std::string report_to_text(const RunReport& r);

// Fixed-width float formatting for reports: 12 significant digits.
std::string format_stat(double x);

}  // namespace verocurv
