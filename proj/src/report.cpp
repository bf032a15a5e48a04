#include "verocurv/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace verocurv {

std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for digest: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return fnv1a64(os.str());
}

nlohmann::json report_to_json(const RunReport& r) {
  nlohmann::json j;
  j["tool"] = "verocurv";
  j["version"] = kVersion;
  j["command"] = r.command;
  j["seed"] = r.seed;
  j["inputs"] = r.inputs;
  j["results"] = r.results;
  return j;
}

std::string report_to_text(const RunReport& r) {
  std::ostringstream os;
  os << "verocurv " << kVersion << "\n";
  os << "command: " << r.command << "\n";
  os << "seed: " << r.seed << "\n";
  if (!r.inputs.empty()) os << "inputs: " << r.inputs.dump() << "\n";
  os << "results:\n" << r.results.dump(2) << "\n";
  return os.str();
}

std::string format_stat(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace verocurv
