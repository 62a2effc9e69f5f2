#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bcirc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr const char* kOutputDirEnv = "BCIRC_OUTPUT_DIR";

/// Everything needed to reproduce a run. Serialized into every manifest.
struct RunConfig {
  std::string subcommand;

  std::string kind = "circulant";
  std::size_t n = 400;
  std::size_t m = 2;
  std::string pattern;  // empty unless kind == "pattern"
  std::string dist = "gaussian";
  std::uint64_t seed = 0;

  std::size_t trials = 200;
  std::size_t bins = 61;
  double lo = -3.0;
  double hi = 3.0;
  double step = 0.01;
  unsigned k_max = 5;
  unsigned k = 4;
  std::size_t central = 10;
  std::vector<unsigned> m_list{1, 2, 4, 8, 16};
  std::string what = "moments";
  std::string solver = "auto";
  std::string input;  // matrix CSV for eigs
  std::size_t trial = 0;

  std::string output;  // empty: stdout
  std::string format = "csv";
  unsigned threads = 1;
};

nlohmann::json to_json(const RunConfig& c);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Parses argv and runs the command. Returns the process exit code; data goes
/// to `out` when no output file is set, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Exit code for an exception escaping a command: 2 for bad input or
/// configuration, 3 for a violated numerical invariant, 1 otherwise.
int exit_code_for(const std::exception& e) noexcept;

/// Runs a fully specified configuration (used by `replay`). Throws on error.
void execute(const RunConfig& config, std::ostream& out);

}  // namespace bcirc::cli
