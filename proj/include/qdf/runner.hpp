#pragma once

#include <json.hpp>
#include <string>

namespace qdf {

inline constexpr const char* kVersion = "qdf 0.1.0";

/// Exit-code discipline shared by the CLI and the tests:
/// 0 = all pass, 1 = check failure, 2 = config/schema error,
/// 3 = numerical non-convergence.
enum ExitCode { kPass = 0, kCheckFailure = 1, kConfigError = 2, kNonConvergence = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunReport {
  nlohmann::json config_echo;
  nlohmann::json records = nlohmann::json::array();  // one object per check
  long checks_passed = 0;
  long checks_failed = 0;
  double wall_seconds = 0.0;  // informational; excluded from determinism
  std::string version = kVersion;
  std::string csv;  // table body, empty when a command has no table
  int exit_code = kPass;
  std::string error;
};

/// Property suite over the entropic toolkit (SSA, Araki-Lieb, chain rule,
/// Pinsker, data processing) on random states.
RunReport cmd_verify_info(const nlohmann::json& config);

/// De Finetti bound checks (trace-norm and information forms) over presets
/// and random symmetric-state sweeps.
RunReport cmd_verify_definetti(const nlohmann::json& config);

/// Mean-field harness: convergence sweep, localized two-body gap scan, or
/// Fourier pair decomposition check, per the configured preset.
RunReport cmd_meanfield(const nlohmann::json& config);

/// Dispatch by command name with exception-to-exit-code mapping; never
/// throws.
RunReport run_command(const std::string& name, const nlohmann::json& config);

/// Writes <name>.report.json, <name>.records.jsonl and (when present)
/// <name>.csv under out_dir.
void write_report(const RunReport& report, const std::string& out_dir,
                  const std::string& name);

/// Throws ConfigError when the object holds a key outside `allowed`.
void reject_unknown_keys(const nlohmann::json& config,
                         const std::vector<std::string>& allowed,
                         const std::string& context);

}  // namespace qdf
