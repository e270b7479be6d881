#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace deontic {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. Carries a 1-based line/column.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Text that tokenizes and parses but breaks the statement grammar, e.g. an
/// ought nested inside a formula. `production()` names the violated rule.
class GrammarError : public Error {
 public:
  GrammarError(std::string production, const std::string& message);

  const std::string& production() const noexcept { return production_; }

 private:
  std::string production_;
};

/// Unknown moment/history/agent/state ids and similar lookup failures.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Input that is well-formed but outside what an operation supports.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Enumeration bound exceeded (cycles, paths, schedules).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Malformed model or automaton files.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Non-fatal diagnostics (e.g. atoms that never occur in a model) go through
/// this hook. The default handler prints to stderr.
using WarningHandler = std::function<void(std::string_view)>;
void set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

/// Cap for cycle/path enumeration. Reads DEONTIC_MC_RESOURCE_LIMIT when set,
/// otherwise 10000.
std::size_t resource_limit();

}  // namespace deontic
