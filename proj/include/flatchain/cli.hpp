#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace flatchain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTransversality = 3;

struct CommandRequest {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<std::string> output;
  std::string format = "json";
  std::optional<int> level;
  std::optional<std::string> eps;
  std::optional<std::string> offset;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<std::string> group;
  std::optional<std::string> alpha;
  std::optional<long> p;
};

const std::vector<std::string>& command_names();

/// Runs one command. The artifact goes to the output file or, without one,
/// to `out`; the one-line summary follows it on `out` when writing a file
/// and goes to `err` otherwise. Returns the process exit code.
int run_command(const CommandRequest& req, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and runs the command.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flatchain::cli
