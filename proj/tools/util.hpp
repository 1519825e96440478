#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "snrlab/curve.hpp"

namespace snrtool {

using json = nlohmann::ordered_json;

// Sweep syntax accepted by every numeric-list flag:
//   "0.5"            single value
//   "0,0.1,0.2"      explicit list
//   "lo:hi:count"    count values from lo to hi, log- or linearly spaced
std::vector<double> parse_range(const std::string& text, bool log_spacing,
                                const std::string& flag_name);

// "report.json" + "exposure.csv" -> "report.exposure.csv" (extension of the
// base path is replaced by the logical artifact name).
std::string derive_path(const std::string& out_path, const std::string& logical);

void write_text_file(const std::string& path, const std::string& content);

// Per-invocation state shared between the command implementations and the
// top-level error handler (which writes the failure manifest on exit 2).
struct CliContext {
  std::vector<std::string> rerun_argv;  // original argv minus program name and -o/--out
  std::string out_path;                 // primary output path of the active command
  std::vector<std::string> written;     // logical names of artifacts already written
  unsigned long long seed = 0;
};

// Base metadata object embedded in every output: schema version, command
// name, the re-runnable argument vector, and the resolved parameter set the
// caller fills in under "resolved".
json config_base(const CliContext& ctx, const std::string& command);

// One-line form for the CSV "# snrlab-config:" comment.
std::string metadata_line(const json& config);

}  // namespace snrtool
