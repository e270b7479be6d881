#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <variant>

#include <openssl/evp.h>

#include "cli.hpp"
#include "deontic/automaton.hpp"
#include "deontic/errors.hpp"
#include "deontic/formula.hpp"
#include "deontic/io.hpp"
#include "deontic/mc.hpp"
#include "deontic/rational.hpp"
#include "deontic/rss.hpp"
#include "deontic/tree_model.hpp"

namespace cli {

using namespace deontic;

namespace {

std::string braces(const std::vector<std::string>& ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + ids[i];
  return s + "}";
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

json interval_json(const automata::ValueInterval& iv) {
  return {{"lo", format_rational(iv.lo)}, {"hi", format_rational(iv.hi)}};
}

json counterexample_json(const ctlstar::Counterexample& c) {
  return {{"stem", c.stem}, {"loop", c.loop}, {"formula", c.formula}};
}

void verdict(Outcome& out, bool holds) {
  out.status = holds ? "holds" : "fails";
  out.exit_code = holds ? exit_holds : exit_fails;
}

void check_ought(Outcome& out, const tree::ExplicitStitModel& m, tree::Evaluator& ev, int at,
                 const OughtStatement& o) {
  for (const auto& a : o.agents())
    if (!m.has_agent(a)) throw LookupError("unknown agent '" + a + "'");
  const auto through = m.to_ids(m.histories_through(at));
  const bool holds = ev.sat(at, through.front(), o);
  const auto body = ev.extension(at, o.body());
  std::optional<tree::HistorySet> cond;
  if (o.condition()) cond = ev.extension(at, *o.condition());
  const bool vacuous = cond && cond->none();

  std::vector<tree::HistorySet> optimal;
  if (!vacuous) {
    std::optional<Formula> cf;
    if (o.condition()) cf = o.condition()->formula();
    optimal = ev.optimal_actions(o.agents(), at, cf).actions;
  }

  json& r = out.result;
  r["kind"] = "ought";
  r["agents"] = o.agents();
  r["body_extension"] = m.to_ids(body);
  if (cond) r["condition_extension"] = m.to_ids(*cond);
  r["vacuous"] = vacuous;
  r["optimal"] = json::array();
  for (const auto& k : optimal) r["optimal"].push_back(m.to_ids(k));
  r["actions"] = json::array();
  out.human << "|A| = " << braces(m.to_ids(body)) << '\n';
  if (cond) out.human << "|B| = " << braces(m.to_ids(*cond)) << (vacuous ? " (vacuous)" : "") << '\n';
  out.human << "optimal:";
  for (const auto& k : optimal) out.human << ' ' << braces(m.to_ids(k));
  out.human << '\n';
  for (const auto& k : ev.group_choice(o.agents(), at)) {
    const bool opt = std::find(optimal.begin(), optimal.end(), k) != optimal.end();
    const bool guarantees = k.is_subset_of(body);
    json row = {{"histories", m.to_ids(k)}, {"optimal", opt}, {"guarantees", guarantees}};
    out.human << "  action " << braces(m.to_ids(k)) << "  optimal " << yes_no(opt)
              << "  guarantees " << yes_no(guarantees);
    if (cond) {
      row["meets_condition"] = k.intersects(*cond);
      out.human << "  meets condition " << yes_no(k.intersects(*cond));
    }
    out.human << '\n';
    r["actions"].push_back(row);
  }
  r["holds"] = holds;
  verdict(out, holds);
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  std::ostringstream s;
  for (unsigned i = 0; i < len; ++i)
    s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return s.str();
}

std::string read_input(Outcome& out, const std::string& path) {
  std::string text = io::read_file(path);
  out.inputs.push_back({{"path", path}, {"sha256", sha256_hex(text)}});
  return text;
}

void cmd_validate(Outcome& out, const std::string& path) {
  const std::string text = read_input(out, path);
  json& r = out.result;
  r["violations"] = json::array();
  bool valid = false;
  if (io::detect_kind(text) == io::FileKind::Model) {
    const tree::ExplicitStitModel m(io::parse_model(text));
    const auto vs = tree::validate_model(m);
    r["kind"] = "model";
    r["agents"] = m.agents().size();
    r["moments"] = m.moment_count();
    r["histories"] = m.history_count();
    for (const auto& v : vs) {
      json j = {{"axiom", v.axiom}, {"histories", v.histories}, {"message", v.message}};
      if (!v.agent.empty()) j["agent"] = v.agent;
      if (v.moment) j["moment"] = *v.moment;
      r["violations"].push_back(j);
      out.human << tree::describe(v) << '\n';
    }
    out.human << "model: " << m.agents().size() << " agents, " << m.moment_count()
              << " moments, " << m.history_count() << " histories\n";
    valid = vs.empty();
  } else {
    const auto t = io::parse_automaton(text);
    const auto vs = automata::validate_automaton(t);
    r["kind"] = "automaton";
    r["states"] = t.states.size();
    r["actions"] = t.actions.size();
    r["transitions"] = t.transitions.size();
    for (const auto& v : vs) {
      r["violations"].push_back({{"kind", v.kind}, {"message", v.message}});
      out.human << v.kind << ": " << v.message << '\n';
    }
    out.human << "automaton: " << t.states.size() << " states, " << t.actions.size()
              << " actions, " << t.transitions.size() << " transitions\n";
    valid = vs.empty();
  }
  r["valid"] = valid;
  out.status = valid ? "valid" : "invalid";
  out.exit_code = valid ? exit_holds : exit_fails;
}

void cmd_check(Outcome& out, const CheckArgs& a) {
  const std::string text = read_input(out, a.model);
  const tree::ExplicitStitModel m(io::parse_model(text));
  const auto vs = tree::validate_model(m);
  if (!vs.empty()) throw UsageError{"invalid model: " + tree::describe(vs.front())};
  const auto through = m.histories_through(a.at);
  if (a.history && !through.test(m.history_index(*a.history)))
    throw LookupError("history '" + *a.history + "' does not pass through moment " +
                      std::to_string(a.at));
  const Statement s = parse(a.formula);
  tree::Evaluator ev(m);
  out.result["moment"] = a.at;
  out.result["statement"] = render(s);
  out.human << render(s) << " at moment " << a.at << '\n';

  if (const auto* o = std::get_if<OughtStatement>(&s)) {
    check_ought(out, m, ev, a.at, *o);
    return;
  }
  const Formula f = std::holds_alternative<Formula>(s) ? std::get<Formula>(s)
                                                       : std::get<Obligation>(s).formula();
  const auto ext = ev.extension(a.at, f);
  bool holds = ext == through;
  out.result["kind"] = "formula";
  out.result["extension"] = m.to_ids(ext);
  out.human << "extension: " << braces(m.to_ids(ext)) << '\n';
  if (a.history) {
    holds = ev.sat(a.at, *a.history, f);
    out.result["history"] = *a.history;
  }
  out.result["holds"] = holds;
  verdict(out, holds);
}

void cmd_mc(Outcome& out, const McArgs& a) {
  const std::string text = read_input(out, a.automaton);
  automata::StitAutomaton t = io::parse_automaton(text);
  if (a.state) t = automata::reroot(t, *a.state);
  const Statement s = parse(a.ought);
  std::optional<OughtStatement> o;
  if (const auto* x = std::get_if<OughtStatement>(&s)) {
    if (a.agent && x->agents() != std::vector<std::string>{*a.agent})
      throw UsageError{"--agent " + *a.agent + " does not match " + render(*x)};
    o = *x;
  } else {
    if (!a.agent) throw UsageError{"an obligation needs --agent"};
    const Obligation body = std::holds_alternative<Obligation>(s)
                                ? std::get<Obligation>(s)
                                : Obligation(std::get<Formula>(s));
    o = OughtStatement(*a.agent, body);
  }

  const mc::Verdict v = mc::check(t, *o);
  json& r = out.result;
  r["ought"] = render(*o);
  r["state"] = t.init;
  r["holds"] = v.holds;
  r["vacuous"] = v.vacuous;
  r["optimal"] = v.optimal;
  if (o->condition()) r["retained"] = v.retained;
  if (v.failing_action) r["failing_action"] = *v.failing_action;
  if (v.counterexample) r["counterexample"] = counterexample_json(*v.counterexample);
  r["reason"] = v.reason;
  r["actions"] = json::array();
  out.human << render(*o) << " from " << t.init << '\n';
  for (const auto& k : v.actions) {
    json row = {{"action", k.action}, {"interval", interval_json(k.interval)},
                {"optimal", k.optimal}};
    out.human << "  " << k.action << "  [" << format_rational(k.interval.lo) << ", "
              << format_rational(k.interval.hi) << "]  optimal " << yes_no(k.optimal);
    if (k.case_taken) {
      row["case"] = mc::to_string(*k.case_taken);
      out.human << "  case " << mc::to_string(*k.case_taken);
    }
    if (k.guarantees) {
      row["guarantees"] = *k.guarantees;
      out.human << "  guarantees " << yes_no(*k.guarantees);
    }
    if (k.meets_condition) {
      row["meets_condition"] = *k.meets_condition;
      out.human << "  meets condition " << yes_no(*k.meets_condition);
    }
    if (k.counterexample) row["counterexample"] = counterexample_json(*k.counterexample);
    out.human << '\n';
    r["actions"].push_back(row);
  }
  out.human << "optimal: " << braces(v.optimal) << '\n';
  if (v.vacuous) out.human << "no optimal action meets the condition\n";
  if (v.counterexample) {
    const auto& c = *v.counterexample;
    out.human << "counterexample for " << (v.failing_action ? *v.failing_action : "") << ": "
              << braces(c.stem) << " then " << braces(c.loop) << " forever violates "
              << c.formula << '\n';
  }
  if (!v.reason.empty()) out.human << v.reason << '\n';
  verdict(out, v.holds);
}

void cmd_unroll(Outcome& out, const UnrollArgs& a) {
  const std::string text = read_input(out, a.automaton);
  const auto d = automata::unroll(io::parse_automaton(text), a.depth, a.agent);
  const std::string model = io::write_model(d);
  io::write_file(a.out, model);
  out.result = {{"out", a.out},
                {"depth", a.depth},
                {"moments", d.moments.size()},
                {"histories", d.histories.size()},
                {"sha256", sha256_hex(model)}};
  out.human << "wrote " << a.out << ": " << d.moments.size() << " moments, "
            << d.histories.size() << " histories\n";
  out.status = "written";
}

void cmd_fixtures(Outcome& out, const std::string& dir) {
  std::filesystem::create_directories(dir);
  out.result["files"] = json::array();
  for (const auto& f : rss::fixtures()) {
    const bool model = std::holds_alternative<tree::ModelData>(f.data);
    const std::string text = model ? io::write_model(std::get<tree::ModelData>(f.data))
                                   : io::write_automaton(std::get<automata::StitAutomaton>(f.data));
    const std::string path = (std::filesystem::path(dir) / (f.name + ".json")).string();
    io::write_file(path, text);
    out.result["files"].push_back({{"name", f.name},
                                   {"path", path},
                                   {"kind", model ? "model" : "automaton"},
                                   {"description", f.description},
                                   {"sha256", sha256_hex(text)}});
    out.human << path << "  " << f.description << '\n';
  }
  out.status = "written";
}

}  // namespace cli
