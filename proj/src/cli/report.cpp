#include <openssl/evp.h>

#include <cstdio>
#include <sstream>

#include "gwa/cli/cli.hpp"

namespace gwa::cli {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::string out;
  char hex[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(hex, sizeof hex, "%02x", digest[i]);
    out += hex;
  }
  return out;
}

Json RunReport::to_json() const {
  Json j = {{"command", command},
            {"inputs", inputs},
            {"parameters", parameters},
            {"results", results},
            {"counterexamples", counterexamples},
            {"status", ok() ? "ok" : "failed"}};
  if (wall_seconds) j["wall_seconds"] = *wall_seconds;
  return j;
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "command: " << command << "\n";
  for (const auto& in : inputs) {
    os << "input: " << in["path"].get<std::string>() << " sha256=" << in["sha256"].get<std::string>() << "\n";
  }
  if (!parameters.empty()) {
    os << "parameters:";
    for (const auto& [key, value] : parameters.items()) os << " " << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump());
    os << "\n";
  }
  for (const auto& line : text) os << line << "\n";
  if (!counterexamples.empty()) {
    os << "counterexamples (" << counterexamples.size() << "):\n";
    for (const auto& c : counterexamples) os << "  " << (c.is_string() ? c.get<std::string>() : c.dump()) << "\n";
  }
  if (wall_seconds) os << "wall time: " << *wall_seconds << " s\n";
  os << "status: " << (ok() ? "ok" : "FAILED") << "\n";
  return os.str();
}

}  // namespace gwa::cli
