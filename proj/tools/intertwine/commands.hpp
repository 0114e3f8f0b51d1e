#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

namespace intertwine::cli {

enum ExitCode : int {
  kOk = 0,
  kMalformed = 1,
  kUnknown = 2,
  kObstructed = 3,
  kCheckFailed = 4,
};

/// Result of one run: a JSON report (which embeds the config) and a short
/// human-readable summary.
struct Outcome {
  int exit_code = kOk;
  nlohmann::json report;
  std::string summary;
};

/// Runs a normalized config. Configs are objects with a "command" key:
///   {"command": "algebra-validate", "algebra": "builtin:sl2" | path}
///   {"command": "fusion", "level", "query": {"kind": "finite"|"mixed"|"doubly"|"dense", ...}}
///   {"command": "kz", "level", "u1", "u2", "target": {"kind", "module"}, "N", "hom", "cutoff"}
///   {"command": "candidate", "level", "u1", "u2", "u3", "hom"}
/// Errors never escape; they become exit code 1 with an "error" field.
Outcome run(const nlohmann::json& config);

/// Fills defaults and canonical spellings so that equal queries give equal configs.
nlohmann::json normalize(const nlohmann::json& config);

/// Reruns the config embedded in a report and compares the serialized output.
Outcome replay(const nlohmann::json& report);

/// One config per line; reports are written as JSON lines in input order.
/// Returns 1 if any line was malformed, 0 otherwise.
int run_batch(std::istream& in, std::ostream& out, unsigned jobs);

/// Canonical serialization used for files and comparisons.
std::string serialize(const nlohmann::json& report);

}  // namespace intertwine::cli
