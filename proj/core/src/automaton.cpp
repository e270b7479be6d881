#include "deontic/automaton.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

#include "deontic/errors.hpp"

namespace deontic::automata {

std::string to_string(Accumulation a) {
  switch (a) {
    case Accumulation::Min: return "min";
  }
  return "?";
}

const std::vector<std::string>& StitAutomaton::label(const std::string& state) const {
  static const std::vector<std::string> none;
  auto it = labels.find(state);
  return it == labels.end() ? none : it->second;
}

std::vector<const Transition*> StitAutomaton::outgoing(const std::string& state) const {
  std::vector<const Transition*> out;
  for (const auto& t : transitions)
    if (t.from == state) out.push_back(&t);
  return out;
}

std::vector<std::string> StitAutomaton::first_actions() const {
  std::vector<std::string> seen;
  for (const auto& t : transitions)
    if (t.from == init && std::find(seen.begin(), seen.end(), t.action) == seen.end())
      seen.push_back(t.action);
  std::vector<std::string> out;
  for (const auto& a : actions)
    if (std::find(seen.begin(), seen.end(), a) != seen.end()) out.push_back(a);
  for (const auto& a : seen)
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  return out;
}

std::vector<std::string> reachable_states(const StitAutomaton& t) {
  std::vector<std::string> order{t.init};
  std::set<std::string> seen{t.init};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const auto& tr : t.transitions)
      if (tr.from == order[i] && seen.insert(tr.to).second) order.push_back(tr.to);
  return order;
}

std::vector<AutomatonViolation> validate_automaton(const StitAutomaton& t) {
  std::vector<AutomatonViolation> out;
  std::set<std::string> states;
  for (const auto& s : t.states)
    if (!states.insert(s).second) out.push_back({"duplicate", "state '" + s + "' listed twice"});
  std::set<std::string> actions;
  for (const auto& a : t.actions)
    if (!actions.insert(a).second) out.push_back({"duplicate", "action '" + a + "' listed twice"});
  if (!states.count(t.init)) out.push_back({"initial", "initial state '" + t.init + "' not in Q"});
  for (const auto& f : t.final_states)
    if (!states.count(f)) out.push_back({"reference", "final state '" + f + "' not in Q"});
  for (const auto& [s, atoms] : t.labels)
    if (!states.count(s)) out.push_back({"reference", "label for unknown state '" + s + "'"});

  std::map<std::pair<std::string, std::string>, std::string> edge_action;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const auto& tr : t.transitions) {
    const std::string name = "(" + tr.from + ", " + tr.action + ", " + tr.to + ")";
    if (!states.count(tr.from) || !states.count(tr.to))
      out.push_back({"reference", "transition " + name + " uses an unknown state"});
    if (!actions.count(tr.action))
      out.push_back({"reference", "transition " + name + " uses an undeclared action"});
    if (!seen.insert({tr.from, tr.action, tr.to}).second) {
      out.push_back({"duplicate", "transition " + name + " listed twice"});
      continue;
    }
    auto [it, fresh] = edge_action.emplace(std::make_pair(tr.from, tr.to), tr.action);
    if (!fresh && it->second != tr.action)
      out.push_back({"edge-uniqueness", "transitions " + tr.from + " -> " + tr.to +
                                            " carry different actions '" + it->second +
                                            "' and '" + tr.action + "'"});
  }
  if (states.count(t.init)) {
    for (const auto& s : reachable_states(t))
      if (t.outgoing(s).empty())
        out.push_back({"dead-end", "reachable state '" + s + "' has no outgoing transition"});
  }
  return out;
}

void require_valid(const StitAutomaton& t) {
  const auto v = validate_automaton(t);
  if (v.empty()) return;
  std::string msg = "invalid automaton:";
  for (const auto& x : v) msg += "\n  " + x.kind + ": " + x.message;
  throw FormatError(msg);
}

// --------------------------------------------------------------- product

namespace {

std::string tuple_name(const std::vector<std::string>& parts) {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s + ")";
}

}  // namespace

StitAutomaton product(const std::vector<Component>& components, WeightPolicy weights) {
  if (components.empty()) throw std::invalid_argument("product of no automata");
  for (std::size_t i = 0; i < components.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (components[i].agent == components[j].agent)
        throw std::invalid_argument("agent '" + components[i].agent + "' appears twice in a product");
  for (const auto& c : components)
    if (c.automaton.accumulation != components.front().automaton.accumulation)
      throw UnsupportedError("product of automata with different accumulation kinds");
  const bool qualify = components.size() > 1;
  const std::size_t n = components.size();

  StitAutomaton p;
  p.accumulation = components.front().automaton.accumulation;

  // Odometer over index tuples.
  auto tuples = [&](auto size_of) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (size_of(i) == 0) return out;
    for (;;) {
      out.push_back(idx);
      std::size_t i = n;
      while (i > 0) {
        --i;
        if (++idx[i] < size_of(i)) break;
        idx[i] = 0;
        if (i == 0) return out;
      }
    }
  };

  for (const auto& idx :
       tuples([&](std::size_t i) { return components[i].automaton.states.size(); })) {
    std::vector<std::string> names;
    std::vector<std::string> atoms;
    bool final_all = true;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = components[i].automaton;
      const std::string& s = a.states[idx[i]];
      names.push_back(s);
      for (const auto& atom : a.label(s))
        atoms.push_back(qualify ? atom + "_" + components[i].agent : atom);
      final_all = final_all &&
                  std::find(a.final_states.begin(), a.final_states.end(), s) != a.final_states.end();
    }
    const std::string name = tuple_name(names);
    p.states.push_back(name);
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    if (!atoms.empty()) p.labels[name] = atoms;
    if (final_all) p.final_states.push_back(name);
  }
  {
    std::vector<std::string> inits;
    for (const auto& c : components) inits.push_back(c.automaton.init);
    p.init = tuple_name(inits);
  }
  for (const auto& idx :
       tuples([&](std::size_t i) { return components[i].automaton.actions.size(); })) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(components[i].automaton.actions[idx[i]]);
    p.actions.push_back(tuple_name(names));
  }
  for (const auto& idx :
       tuples([&](std::size_t i) { return components[i].automaton.transitions.size(); })) {
    std::vector<std::string> from, act, to;
    Rational w;
    for (std::size_t i = 0; i < n; ++i) {
      const Transition& tr = components[i].automaton.transitions[idx[i]];
      from.push_back(tr.from);
      act.push_back(tr.action);
      to.push_back(tr.to);
      if (i == 0)
        w = tr.weight;
      else
        w = weights == WeightPolicy::Min ? std::min(w, tr.weight) : w + tr.weight;
    }
    p.transitions.push_back({tuple_name(from), tuple_name(act), tuple_name(to), w});
  }
  return p;
}

// ------------------------------------------------------------- unrolling

tree::ModelData unroll(const StitAutomaton& t, unsigned depth, const std::string& agent) {
  if (depth == 0) throw std::invalid_argument("unroll depth must be positive");
  require_valid(t);

  struct Node {
    std::string state;
    std::optional<std::size_t> parent;
    std::string via_action;
    Rational via_weight;
    unsigned depth;
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes{{t.init, std::nullopt, "", Rational(0), 0, {}}};
  const std::size_t limit = resource_limit();
  std::size_t leaves = 1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].depth == depth) continue;
    const auto out = t.outgoing(nodes[i].state);
    leaves += out.size() - 1;
    if (leaves > limit)
      throw ResourceError("unrolling produces more than " + std::to_string(limit) + " histories");
    for (const Transition* tr : out) {
      nodes[i].children.push_back(nodes.size());
      nodes.push_back({tr->to, i, tr->action, tr->weight, nodes[i].depth + 1, {}});
    }
  }

  tree::ModelData md;
  md.agents = {agent};
  {
    std::set<std::string> atoms;
    for (const auto& [s, as] : t.labels) atoms.insert(as.begin(), as.end());
    md.atoms.assign(atoms.begin(), atoms.end());
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    tree::ModelData::Moment mo;
    mo.id = static_cast<int>(i);
    if (nodes[i].parent) mo.parent = static_cast<int>(*nodes[i].parent);
    md.moments.push_back(mo);
    const auto& l = t.label(nodes[i].state);
    if (!l.empty()) md.labels.push_back({static_cast<int>(i), std::nullopt, l});
  }

  // Histories in depth-first order; remember which histories pass each node.
  std::vector<std::vector<std::string>> through(nodes.size());
  std::function<void(std::size_t, std::vector<int>&, std::optional<Rational>)> walk =
      [&](std::size_t i, std::vector<int>& path, std::optional<Rational> bottleneck) {
        path.push_back(static_cast<int>(i));
        if (nodes[i].parent)
          bottleneck = bottleneck ? std::min(*bottleneck, nodes[i].via_weight) : nodes[i].via_weight;
        if (nodes[i].children.empty()) {
          const std::string id = "h" + std::to_string(md.histories.size());
          md.histories.push_back({id, path, bottleneck.value_or(Rational(0))});
          for (int m : path) through[static_cast<std::size_t>(m)].push_back(id);
        } else {
          for (std::size_t c : nodes[i].children) walk(c, path, bottleneck);
        }
        path.pop_back();
      };
  std::vector<int> path;
  walk(0, path, std::nullopt);

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].children.empty()) continue;
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::string>> by_action;
    for (std::size_t c : nodes[i].children) {
      const std::string& a = nodes[c].via_action;
      if (!by_action.count(a)) order.push_back(a);
      auto& cell = by_action[a];
      cell.insert(cell.end(), through[c].begin(), through[c].end());
    }
    tree::ModelData::Choice ch;
    ch.agent = agent;
    ch.moment = static_cast<int>(i);
    for (const auto& a : order) ch.actions.push_back(by_action[a]);
    md.choices.push_back(std::move(ch));
  }
  return md;
}

// ------------------------------------------------------------- surgeries

StitAutomaton restrict_first_action(const StitAutomaton& t, const std::string& k) {
  bool enabled = false;
  StitAutomaton r = t;
  r.transitions.clear();
  for (const auto& tr : t.transitions) {
    if (tr.from == t.init) {
      if (tr.action != k) continue;
      enabled = true;
    }
    r.transitions.push_back(tr);
  }
  if (!enabled) throw LookupError("action '" + k + "' is not enabled at '" + t.init + "'");
  return r;
}

PrimedAutomaton prime_automaton(const StitAutomaton& restricted, const StitAutomaton& full) {
  std::set<std::string> taken(full.states.begin(), full.states.end());
  std::map<std::string, std::string> rename;
  for (const auto& s : restricted.states) {
    std::string n = s + "'";
    while (taken.count(n)) n += "'";
    taken.insert(n);
    rename[s] = n;
  }
  auto renamed = [&](const std::string& s) {
    auto it = rename.find(s);
    return it == rename.end() ? s + "'" : it->second;
  };

  PrimedAutomaton out;
  StitAutomaton& p = out.automaton;
  p.accumulation = full.accumulation;
  p.init = renamed(restricted.init);
  for (const auto& s : restricted.states) {
    p.states.push_back(renamed(s));
    out.origin[renamed(s)] = s;
  }
  for (const auto& s : full.states) {
    p.states.push_back(s);
    out.origin[s] = s;
  }
  p.actions = full.actions;
  for (const auto& a : restricted.actions)
    if (std::find(p.actions.begin(), p.actions.end(), a) == p.actions.end()) p.actions.push_back(a);
  for (const auto& f : restricted.final_states) p.final_states.push_back(renamed(f));
  p.final_states.insert(p.final_states.end(), full.final_states.begin(), full.final_states.end());
  for (const auto& tr : restricted.transitions) {
    const std::string to = tr.to == restricted.init ? full.init : renamed(tr.to);
    p.transitions.push_back({renamed(tr.from), tr.action, to, tr.weight});
  }
  p.transitions.insert(p.transitions.end(), full.transitions.begin(), full.transitions.end());
  for (const auto& [s, atoms] : restricted.labels) p.labels[renamed(s)] = atoms;
  for (const auto& [s, atoms] : full.labels) p.labels[s] = atoms;
  return out;
}

StitAutomaton reroot(const StitAutomaton& t, const std::string& state) {
  if (std::find(t.states.begin(), t.states.end(), state) == t.states.end())
    throw LookupError("unknown state '" + state + "'");
  StitAutomaton r = t;
  r.init = state;
  return r;
}

// -------------------------------------------------------- extremal values

namespace {

// Does the subgraph of transitions with weight >= w contain a cycle that
// init reaches through that subgraph?
bool has_cycle_at_or_above(const StitAutomaton& t, const Rational& w) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& tr : t.transitions)
    if (tr.weight >= w) succ[tr.from].push_back(tr.to);
  std::vector<std::string> reach{t.init};
  std::set<std::string> seen{t.init};
  for (std::size_t i = 0; i < reach.size(); ++i)
    for (const auto& s : succ[reach[i]])
      if (seen.insert(s).second) reach.push_back(s);
  // Cycle detection by iterated removal of states without successors.
  std::map<std::string, int> out_deg;
  std::map<std::string, std::vector<std::string>> pred;
  for (const auto& s : reach) {
    out_deg[s] = static_cast<int>(succ[s].size());
    for (const auto& x : succ[s]) pred[x].push_back(s);
  }
  std::deque<std::string> sinks;
  for (const auto& [s, d] : out_deg)
    if (d == 0) sinks.push_back(s);
  std::size_t removed = 0;
  while (!sinks.empty()) {
    const std::string s = sinks.front();
    sinks.pop_front();
    ++removed;
    for (const auto& p : pred[s])
      if (--out_deg[p] == 0) sinks.push_back(p);
  }
  return removed < reach.size();
}

}  // namespace

ValueInterval extremal_values(const StitAutomaton& t) {
  if (t.accumulation != Accumulation::Min)
    throw UnsupportedError("extremal values are implemented for min accumulation only");
  const auto reach = reachable_states(t);
  const std::set<std::string> reach_set(reach.begin(), reach.end());
  std::set<Rational> weights;
  for (const auto& s : reach) {
    if (t.outgoing(s).empty())
      throw UnsupportedError("state '" + s + "' is reachable but has no outgoing transition");
  }
  for (const auto& tr : t.transitions)
    if (reach_set.count(tr.from)) weights.insert(tr.weight);

  ValueInterval v;
  const auto firsts = t.first_actions();
  if (firsts.size() == 1) v.action = firsts.front();
  // Totality makes every reachable transition part of some infinite run.
  v.lo = *weights.begin();
  v.hi = v.lo;
  for (auto it = weights.rbegin(); it != weights.rend(); ++it) {
    if (has_cycle_at_or_above(t, *it)) {
      v.hi = *it;
      break;
    }
  }
  return v;
}

}  // namespace deontic::automata
