// Shared pieces of the deontic command-line tool.
#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cli {

using json = nlohmann::json;

inline constexpr int exit_holds = 0;
inline constexpr int exit_fails = 1;
inline constexpr int exit_usage = 2;

/// What a command produced. `result` goes into the machine report,
/// `human` is printed in human mode.
struct Outcome {
  int exit_code = exit_holds;
  std::string status;
  json result = json::object();
  std::ostringstream human;
  std::vector<json> inputs;  // {"path", "sha256"}
};

/// Usage problems found after parsing the command line.
struct UsageError {
  std::string message;
};

std::string sha256_hex(const std::string& bytes);

/// Reads the file and records its digest in `out.inputs`.
std::string read_input(Outcome& out, const std::string& path);

void cmd_validate(Outcome& out, const std::string& path);

struct CheckArgs {
  std::string model;
  int at = 0;
  std::optional<std::string> history;
  std::string formula;
};
void cmd_check(Outcome& out, const CheckArgs& a);

struct McArgs {
  std::string automaton;
  std::string ought;
  std::optional<std::string> agent;
  std::optional<std::string> state;
};
void cmd_mc(Outcome& out, const McArgs& a);

struct UnrollArgs {
  std::string automaton;
  unsigned depth = 0;
  std::string out;
  std::string agent = "alpha";
};
void cmd_unroll(Outcome& out, const UnrollArgs& a);

void cmd_fixtures(Outcome& out, const std::string& dir);

struct RssArgs {
  std::string name;
  std::uint64_t seed = 1;
  std::size_t models = 100;
};
const std::vector<std::string>& demo_names();
void cmd_rss(Outcome& out, const RssArgs& a);

}  // namespace cli
