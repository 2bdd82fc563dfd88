#include "orbitforge/report.hpp"

namespace orbitforge {

std::string content_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json make_report(const std::string& verdict,
                           const std::string& inputs_digest,
                           nlohmann::json body) {
  nlohmann::json j;
  j["verdict"] = verdict;
  j["tool_version"] = kToolVersion;
  j["inputs_digest"] = inputs_digest;
  j["body"] = std::move(body);
  return j;
}

int exit_code_for_verdict(const std::string& verdict) {
  return verdict == "fail" ? 1 : 0;
}

}  // namespace orbitforge
