#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"
#include "deontic/errors.hpp"

namespace {

using cli::json;

json error_json(const std::string& kind, const std::string& message) {
  return {{"kind", kind}, {"message", message}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dominance ought checking for utilitarian stit models and stit automata",
               "deontic"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "human";
  bool timing = false;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"human", "machine"}));
  app.add_flag("--timing", timing, "Include wall-clock time in machine reports");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a model or automaton file");
  validate->add_option("file", validate_path, "Model or automaton JSON")->required();

  cli::CheckArgs check_args;
  std::string history;
  auto* check = app.add_subcommand("check", "Evaluate a statement on an explicit model");
  check->add_option("model", check_args.model, "Model JSON")->required();
  check->add_option("--at", check_args.at, "Moment id")->required();
  check->add_option("--history", history, "History id (default: every history through --at)");
  check->add_option("--formula", check_args.formula, "Formula, obligation or ought")->required();

  cli::McArgs mc_args;
  std::string agent, state;
  auto* mc = app.add_subcommand("mc", "Check an ought at the root of a stit automaton");
  mc->add_option("automaton", mc_args.automaton, "Automaton JSON")->required();
  mc->add_option("--ought", mc_args.ought, "Ought, or an obligation together with --agent")
      ->required();
  mc->add_option("--agent", agent, "Agent of the automaton");
  mc->add_option("--state", state, "Check from this state instead of the initial one");

  cli::UnrollArgs unroll_args;
  auto* unroll = app.add_subcommand("unroll", "Write the depth-d tree model of an automaton");
  unroll->add_option("automaton", unroll_args.automaton, "Automaton JSON")->required();
  unroll->add_option("--depth", unroll_args.depth, "Tree depth")
      ->required()
      ->check(CLI::PositiveNumber);
  unroll->add_option("--out", unroll_args.out, "Output model JSON")->required();
  unroll->add_option("--agent", unroll_args.agent, "Agent name in the model");

  cli::RssArgs rss_args;
  auto* rss = app.add_subcommand("rss", "Run a named rule demonstration");
  rss->add_option("name", rss_args.name, "Demonstration")
      ->required()
      ->check(CLI::IsMember(cli::demo_names()));
  rss->add_option("--seed", rss_args.seed, "Seed for random models");
  rss->add_option("--models", rss_args.models, "Number of random models")
      ->check(CLI::PositiveNumber);

  std::string fixtures_dir;
  auto* fixtures = app.add_subcommand("fixtures", "Export the built-in fixtures as JSON");
  fixtures->add_option("--out", fixtures_dir, "Directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::exit_usage;
  }

  const bool machine = format == "machine";
  json command = json::array();
  for (int i = 1; i < argc; ++i) command.push_back(argv[i]);

  cli::Outcome out;
  json error;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (validate->parsed()) {
      cli::cmd_validate(out, validate_path);
    } else if (check->parsed()) {
      if (check->count("--history")) check_args.history = history;
      cli::cmd_check(out, check_args);
    } else if (mc->parsed()) {
      if (mc->count("--agent")) mc_args.agent = agent;
      if (mc->count("--state")) mc_args.state = state;
      cli::cmd_mc(out, mc_args);
    } else if (unroll->parsed()) {
      cli::cmd_unroll(out, unroll_args);
    } else if (rss->parsed()) {
      cli::cmd_rss(out, rss_args);
    } else if (fixtures->parsed()) {
      cli::cmd_fixtures(out, fixtures_dir);
    }
  } catch (const cli::UsageError& e) {
    error = error_json("usage", e.message);
  } catch (const deontic::ParseError& e) {
    error = error_json("parse", e.what());
    error["line"] = e.line();
    error["column"] = e.column();
  } catch (const deontic::GrammarError& e) {
    error = error_json("grammar", e.what());
    error["production"] = e.production();
  } catch (const deontic::FormatError& e) {
    error = error_json("format", e.what());
  } catch (const deontic::LookupError& e) {
    error = error_json("lookup", e.what());
  } catch (const deontic::UnsupportedError& e) {
    error = error_json("unsupported", e.what());
  } catch (const deontic::ResourceError& e) {
    error = error_json("resource", e.what());
  } catch (const deontic::Error& e) {
    error = error_json("error", e.what());
  } catch (const std::invalid_argument& e) {
    error = error_json("usage", e.what());
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  if (!error.is_null()) out.exit_code = cli::exit_usage;

  if (machine) {
    json report = {{"command", command}, {"inputs", out.inputs}, {"exit_code", out.exit_code}};
    if (error.is_null()) {
      report["status"] = out.status;
      report["result"] = out.result;
    } else {
      report["status"] = "error";
      report["error"] = error;
    }
    if (timing) report["timing_ms"] = elapsed;
    std::cout << report.dump(2) << '\n';
  } else if (!error.is_null()) {
    std::cerr << "deontic: " << error["kind"].get<std::string>() << " error: "
              << error["message"].get<std::string>() << '\n';
  } else {
    for (const auto& in : out.inputs)
      std::cout << "input " << in["path"].get<std::string>() << " sha256 "
                << in["sha256"].get<std::string>() << '\n';
    std::cout << out.human.str() << out.status << " (" << static_cast<long>(elapsed + 0.5)
              << " ms)\n";
  }
  return out.exit_code;
}
