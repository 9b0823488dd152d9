#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gwa/io/json.hpp"

namespace gwa::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

/// What a command did. Deterministic for fixed inputs and flags: wall time
/// is only recorded with --timing.
struct RunReport {
  std::string command;
  Json inputs = Json::array();  // [{path, sha256}]
  Json parameters = Json::object();
  Json results = Json::object();
  Json counterexamples = Json::array();
  std::vector<std::string> text;  // human-readable body for --format text
  std::optional<double> wall_seconds;

  bool ok() const { return counterexamples.empty(); }
  Json to_json() const;
  std::string to_text() const;
};

/// SHA-256 of the bytes, lowercase hex.
std::string sha256_hex(std::string_view bytes);

/// Runs one command line (without the program name). Reports and artifacts
/// go to `out`, diagnostics to `err`. Returns 0 on success, 1 when a
/// validation or verification found counterexamples, 2 on usage or input
/// errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gwa::cli
