// JSON model and automaton files. Field names are fixed; unknown fields
// are rejected. Numbers (history values, weights) may be written as JSON
// numbers or as decimal/fraction strings; they are written back as strings.
#pragma once

#include <string>
#include <string_view>

#include "deontic/automaton.hpp"
#include "deontic/tree_model.hpp"

namespace deontic::io {

enum class FileKind { Model, Automaton };

/// Throws FormatError for text that is neither.
FileKind detect_kind(std::string_view json_text);

tree::ModelData parse_model(std::string_view json_text);
std::string write_model(const tree::ModelData& m);

automata::StitAutomaton parse_automaton(std::string_view json_text);
std::string write_automaton(const automata::StitAutomaton& t);

/// Throw FormatError when the file cannot be read or written.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

tree::ModelData load_model(const std::string& path);
automata::StitAutomaton load_automaton(const std::string& path);

}  // namespace deontic::io
