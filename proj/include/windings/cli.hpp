#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace windings {

enum ExitStatus : int { kExitOk = 0, kExitChecksFailed = 1, kExitUsage = 2 };

struct CliCommand {
  std::string name;  // constants | simulate | experiment | report
  std::vector<double> alphas;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string suite;
  std::optional<std::size_t> replicas;
  std::optional<unsigned> workers;
  std::string report_path;
  double horizon = 1.0;
  double base_step = 1e-2;
  std::optional<double> angle_cap;
};

/// Parses argv into a command. Returns nullopt after printing help or a
/// usage error; `status` then holds the exit code.
std::optional<CliCommand> parse_command_line(int argc, const char* const* argv, std::ostream& out,
                                             std::ostream& err, int& status);

/// Runs a parsed command and returns its exit status.
int dispatch(const CliCommand& command, std::ostream& out, std::ostream& err);

/// parse_command_line + dispatch.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// CSV of the constants table: alpha,C_nu,K,I,k,r,L_tilde, 12 significant digits.
std::string constants_csv(const std::vector<double>& alphas);

}  // namespace windings
