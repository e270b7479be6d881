#include "deontic/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "deontic/errors.hpp"

namespace deontic::io {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

void only_fields(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw FormatError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || item.key() == a;
    if (!ok) throw FormatError(where + ": unknown field '" + item.key() + "'");
  }
}

const json& field(const json& obj, const std::string& where, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) throw FormatError(where + ": missing field '" + name + "'");
  return *it;
}

std::string str(const json& j, const std::string& where) {
  if (!j.is_string()) throw FormatError(where + ": expected a string");
  return j.get<std::string>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw FormatError(where + ": expected an integer");
  return j.get<int>();
}

std::vector<std::string> strings(const json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(str(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

const json& array(const json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array");
  return j;
}

Rational number(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) return parse_rational(j.dump());
  } catch (const FormatError& e) {
    throw FormatError(where + ": " + e.what());
  }
  throw FormatError(where + ": expected a number or a decimal string");
}

}  // namespace

FileKind detect_kind(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw FormatError("top level must be an object");
  if (j.contains("moments") || j.contains("histories")) return FileKind::Model;
  if (j.contains("states") || j.contains("transitions")) return FileKind::Automaton;
  throw FormatError("neither a model (moments, histories) nor an automaton (states, transitions)");
}

tree::ModelData parse_model(std::string_view text) {
  const json j = parse_json(text);
  only_fields(j, "model", {"agents", "atoms", "moments", "histories", "choices", "labels"});
  tree::ModelData m;
  m.agents = strings(field(j, "model", "agents"), "agents");
  if (j.contains("atoms")) m.atoms = strings(j["atoms"], "atoms");

  const json& moments = array(field(j, "model", "moments"), "moments");
  for (std::size_t i = 0; i < moments.size(); ++i) {
    const std::string where = "moments[" + std::to_string(i) + "]";
    only_fields(moments[i], where, {"id", "parent"});
    tree::ModelData::Moment mo;
    mo.id = integer(field(moments[i], where, "id"), where + ".id");
    if (moments[i].contains("parent") && !moments[i]["parent"].is_null())
      mo.parent = integer(moments[i]["parent"], where + ".parent");
    m.moments.push_back(mo);
  }

  const json& histories = array(field(j, "model", "histories"), "histories");
  for (std::size_t i = 0; i < histories.size(); ++i) {
    const std::string where = "histories[" + std::to_string(i) + "]";
    only_fields(histories[i], where, {"id", "moments", "value"});
    tree::ModelData::History h;
    h.id = str(field(histories[i], where, "id"), where + ".id");
    const json& ms = array(field(histories[i], where, "moments"), where + ".moments");
    for (std::size_t k = 0; k < ms.size(); ++k)
      h.moments.push_back(integer(ms[k], where + ".moments[" + std::to_string(k) + "]"));
    h.value = number(field(histories[i], where, "value"), where + ".value");
    m.histories.push_back(std::move(h));
  }

  if (j.contains("choices")) {
    const json& choices = array(j["choices"], "choices");
    for (std::size_t i = 0; i < choices.size(); ++i) {
      const std::string where = "choices[" + std::to_string(i) + "]";
      only_fields(choices[i], where, {"agent", "moment", "actions"});
      tree::ModelData::Choice c;
      c.agent = str(field(choices[i], where, "agent"), where + ".agent");
      c.moment = integer(field(choices[i], where, "moment"), where + ".moment");
      const json& acts = array(field(choices[i], where, "actions"), where + ".actions");
      for (std::size_t k = 0; k < acts.size(); ++k)
        c.actions.push_back(strings(acts[k], where + ".actions[" + std::to_string(k) + "]"));
      m.choices.push_back(std::move(c));
    }
  }

  if (j.contains("labels")) {
    const json& labels = array(j["labels"], "labels");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const std::string where = "labels[" + std::to_string(i) + "]";
      only_fields(labels[i], where, {"moment", "history", "atoms"});
      tree::ModelData::Label l;
      l.moment = integer(field(labels[i], where, "moment"), where + ".moment");
      const std::string h = str(field(labels[i], where, "history"), where + ".history");
      if (h != "*") l.history = h;
      l.atoms = strings(field(labels[i], where, "atoms"), where + ".atoms");
      m.labels.push_back(std::move(l));
    }
  }
  return m;
}

std::string write_model(const tree::ModelData& m) {
  json j;
  j["agents"] = m.agents;
  j["atoms"] = m.atoms;
  j["moments"] = json::array();
  for (const auto& mo : m.moments) {
    json x;
    x["id"] = mo.id;
    x["parent"] = mo.parent ? json(*mo.parent) : json(nullptr);
    j["moments"].push_back(x);
  }
  j["histories"] = json::array();
  for (const auto& h : m.histories)
    j["histories"].push_back({{"id", h.id}, {"moments", h.moments}, {"value", format_rational(h.value)}});
  j["choices"] = json::array();
  for (const auto& c : m.choices)
    j["choices"].push_back({{"agent", c.agent}, {"moment", c.moment}, {"actions", c.actions}});
  j["labels"] = json::array();
  for (const auto& l : m.labels)
    j["labels"].push_back(
        {{"moment", l.moment}, {"history", l.history.value_or("*")}, {"atoms", l.atoms}});
  return j.dump(2) + "\n";
}

automata::StitAutomaton parse_automaton(std::string_view text) {
  const json j = parse_json(text);
  only_fields(j, "automaton",
              {"states", "init", "final", "actions", "transitions", "labels", "accumulation"});
  automata::StitAutomaton t;
  t.states = strings(field(j, "automaton", "states"), "states");
  t.init = str(field(j, "automaton", "init"), "init");
  if (j.contains("final")) t.final_states = strings(j["final"], "final");
  t.actions = strings(field(j, "automaton", "actions"), "actions");
  const json& trs = array(field(j, "automaton", "transitions"), "transitions");
  for (std::size_t i = 0; i < trs.size(); ++i) {
    const std::string where = "transitions[" + std::to_string(i) + "]";
    only_fields(trs[i], where, {"from", "action", "to", "weight"});
    automata::Transition tr;
    tr.from = str(field(trs[i], where, "from"), where + ".from");
    tr.action = str(field(trs[i], where, "action"), where + ".action");
    tr.to = str(field(trs[i], where, "to"), where + ".to");
    tr.weight = number(field(trs[i], where, "weight"), where + ".weight");
    t.transitions.push_back(std::move(tr));
  }
  if (j.contains("labels")) {
    const json& labels = j["labels"];
    if (!labels.is_object()) throw FormatError("labels: expected an object state -> atoms");
    for (const auto& item : labels.items())
      t.labels[item.key()] = strings(item.value(), "labels." + item.key());
  }
  if (j.contains("accumulation")) {
    const std::string acc = str(j["accumulation"], "accumulation");
    if (acc != "min") throw FormatError("accumulation: only \"min\" is supported, got \"" + acc + "\"");
  }
  return t;
}

std::string write_automaton(const automata::StitAutomaton& t) {
  json j;
  j["states"] = t.states;
  j["init"] = t.init;
  j["final"] = t.final_states;
  j["actions"] = t.actions;
  j["transitions"] = json::array();
  for (const auto& tr : t.transitions)
    j["transitions"].push_back({{"from", tr.from},
                                {"action", tr.action},
                                {"to", tr.to},
                                {"weight", format_rational(tr.weight)}});
  j["labels"] = json::object();
  for (const auto& [s, atoms] : t.labels) j["labels"][s] = atoms;
  j["accumulation"] = automata::to_string(t.accumulation);
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << content;
  if (!out) throw FormatError("failed writing '" + path + "'");
}

tree::ModelData load_model(const std::string& path) { return parse_model(read_file(path)); }

automata::StitAutomaton load_automaton(const std::string& path) {
  return parse_automaton(read_file(path));
}

}  // namespace deontic::io
