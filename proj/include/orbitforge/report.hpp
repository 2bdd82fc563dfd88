#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace orbitforge {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit content hash, hex encoded; stable across runs for
/// identical bytes.
std::string content_digest(const std::string& bytes);

/// Standard report envelope: verdict (pass|fail|info), tool version, input
/// digest, and a verb-specific body.
nlohmann::json make_report(const std::string& verdict,
                           const std::string& inputs_digest,
                           nlohmann::json body);

int exit_code_for_verdict(const std::string& verdict);

}  // namespace orbitforge
