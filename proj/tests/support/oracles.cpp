#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "deontic/formula.hpp"

namespace oracle {

using deontic::Op;

std::vector<Run> lassos(const StitAutomaton& t, const std::string& from, std::size_t max_stem,
                        std::size_t max_loop) {
  std::vector<Run> out;
  std::vector<const deontic::automata::Transition*> stem;
  std::vector<const deontic::automata::Transition*> loop;

  auto emit = [&] {
    Run r;
    r.states.push_back(from);
    for (const auto* tr : stem) r.states.push_back(tr->to);
    r.loop_start = stem.size();
    for (std::size_t i = 0; i + 1 < loop.size(); ++i) r.states.push_back(loop[i]->to);
    r.first_action = stem.empty() ? loop.front()->action : stem.front()->action;
    r.value = stem.empty() ? loop.front()->weight : stem.front()->weight;
    for (const auto* tr : stem) r.value = std::min(r.value, tr->weight);
    for (const auto* tr : loop) r.value = std::min(r.value, tr->weight);
    out.push_back(std::move(r));
  };

  std::function<void(const std::string&, const std::string&)> close =
      [&](const std::string& anchor, const std::string& at) {
        if (loop.size() == max_loop) return;
        for (const auto& tr : t.transitions) {
          if (tr.from != at) continue;
          loop.push_back(&tr);
          if (tr.to == anchor) emit();
          close(anchor, tr.to);
          loop.pop_back();
        }
      };
  std::function<void(const std::string&)> grow = [&](const std::string& at) {
    close(at, at);
    if (stem.size() == max_stem) return;
    for (const auto& tr : t.transitions) {
      if (tr.from != at) continue;
      stem.push_back(&tr);
      grow(tr.to);
      stem.pop_back();
    }
  };
  grow(from);
  return out;
}

LassoSemantics::LassoSemantics(const StitAutomaton& t) : t_(t), bound_(t.states.size()) {}

const std::vector<Run>& LassoSemantics::runs_from(const std::string& state) {
  auto it = runs_.find(state);
  if (it == runs_.end()) it = runs_.emplace(state, lassos(t_, state, bound_, bound_)).first;
  return it->second;
}

std::size_t LassoSemantics::next(const Run& r, std::size_t pos) const {
  return pos + 1 < r.states.size() ? pos + 1 : r.loop_start;
}

bool LassoSemantics::atom(const Run& r, std::size_t pos, const std::string& a) const {
  auto it = t_.labels.find(r.states[pos]);
  if (it == t_.labels.end()) return false;
  return std::find(it->second.begin(), it->second.end(), a) != it->second.end();
}

bool LassoSemantics::quantified(const std::string& state, const Formula& f) {
  const auto key = std::make_pair(state, deontic::render(f));
  auto it = state_cache_.find(key);
  if (it != state_cache_.end()) return it->second;
  const bool universal = f.op() == Op::ForallPaths;
  bool result = universal;
  for (const auto& r : runs_from(state)) {
    const bool h = holds(r, 0, f.child());
    if (universal && !h) {
      result = false;
      break;
    }
    if (!universal && h) {
      result = true;
      break;
    }
  }
  state_cache_[key] = result;
  return result;
}

bool LassoSemantics::holds(const Run& r, std::size_t pos, const Formula& f) {
  const std::size_t n = r.states.size();
  auto step = [&](std::size_t p, unsigned k) {
    for (unsigned i = 0; i < k; ++i) p = next(r, p);
    return p;
  };
  switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return atom(r, pos, f.name());
    case Op::Not: return !holds(r, pos, f.child());
    case Op::And: return holds(r, pos, f.left()) && holds(r, pos, f.right());
    case Op::Or: return holds(r, pos, f.left()) || holds(r, pos, f.right());
    case Op::Implies: return !holds(r, pos, f.left()) || holds(r, pos, f.right());
    case Op::Next: return holds(r, next(r, pos), f.child());
    case Op::NextPow: return holds(r, step(pos, f.lo()), f.child());
    case Op::Eventually:
      for (std::size_t k = 0, p = pos; k <= n; ++k, p = next(r, p))
        if (holds(r, p, f.child())) return true;
      return false;
    case Op::Always:
      for (std::size_t k = 0, p = pos; k <= n; ++k, p = next(r, p))
        if (!holds(r, p, f.child())) return false;
      return true;
    case Op::Until:
      for (std::size_t k = 0, p = pos; k <= n; ++k, p = next(r, p)) {
        if (holds(r, p, f.right())) return true;
        if (!holds(r, p, f.left())) return false;
      }
      return false;
    case Op::Release:
      for (std::size_t k = 0, p = pos; k <= n; ++k, p = next(r, p)) {
        if (!holds(r, p, f.right())) return false;
        if (holds(r, p, f.left())) return true;
      }
      return true;
    case Op::EventuallyBounded:
      for (unsigned k = f.lo(); k <= f.hi(); ++k)
        if (holds(r, step(pos, k), f.child())) return true;
      return false;
    case Op::BoundedRelease: {
      // left at k after right at 0..k-1, for some k <= N; or right at 0..N.
      for (unsigned k = 0; k <= f.lo(); ++k) {
        if (holds(r, step(pos, k), f.left())) return true;
        if (!holds(r, step(pos, k), f.right())) return false;
      }
      return true;
    }
    case Op::ForallPaths:
    case Op::ExistsPaths:
      return quantified(r.states[pos], f);
    case Op::Cstit:
    case Op::Dstit:
      throw std::invalid_argument("stit operator in a path formula");
  }
  return false;
}

namespace {

using RunSet = std::vector<bool>;

RunSet extension(LassoSemantics& sem, const std::vector<Run>& runs, const std::string& agent,
                 const Obligation& a) {
  RunSet out(runs.size());
  switch (a.kind()) {
    case Obligation::Kind::Plain:
      for (std::size_t i = 0; i < runs.size(); ++i) out[i] = sem.holds(runs[i], 0, a.formula());
      return out;
    case Obligation::Kind::Negated: {
      out = extension(sem, runs, agent, a.inner());
      out.flip();
      return out;
    }
    case Obligation::Kind::Dstit: {
      if (a.agent() != agent) throw std::invalid_argument("dstit about another agent");
      const RunSet body = extension(sem, runs, agent, a.inner());
      if (std::all_of(body.begin(), body.end(), [](bool b) { return b; })) return out;
      std::map<std::string, bool> inside;
      for (std::size_t i = 0; i < runs.size(); ++i) {
        auto [it, fresh] = inside.emplace(runs[i].first_action, true);
        it->second = it->second && body[i];
      }
      for (std::size_t i = 0; i < runs.size(); ++i) out[i] = inside[runs[i].first_action];
      return out;
    }
  }
  return out;
}

bool action_inside(const std::vector<Run>& runs, const RunSet& set, const std::string& k) {
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (runs[i].first_action == k && !set[i]) return false;
  return true;
}

}  // namespace

OughtAnswer ought_on_lassos(const StitAutomaton& t, const std::string& agent, const Obligation& a,
                            const std::optional<Obligation>& condition) {
  LassoSemantics sem(t);
  const auto& runs = sem.runs_from(t.init);
  std::map<std::string, std::pair<Rational, Rational>> range;
  for (const auto& r : runs) {
    auto [it, fresh] = range.emplace(r.first_action, std::make_pair(r.value, r.value));
    it->second.first = std::min(it->second.first, r.value);
    it->second.second = std::max(it->second.second, r.value);
  }
  // K <= K' iff max K <= min K' (a single background state).
  auto weak = [&](const std::string& k, const std::string& k2) {
    return range[k].second <= range[k2].first;
  };
  OughtAnswer ans;
  for (const auto& [k, _] : range) {
    bool dominated = false;
    for (const auto& [k2, __] : range)
      if (k2 != k && weak(k, k2) && !weak(k2, k)) dominated = true;
    if (!dominated) ans.optimal.insert(k);
  }
  const RunSet body = extension(sem, runs, agent, a);
  std::set<std::string> checked = ans.optimal;
  if (condition) {
    const RunSet cond = extension(sem, runs, agent, *condition);
    checked.clear();
    for (const auto& k : ans.optimal)
      if (action_inside(runs, cond, k)) checked.insert(k);
    if (checked.empty()) {
      ans.holds = true;
      ans.vacuous = true;
      return ans;
    }
  }
  ans.holds = std::all_of(checked.begin(), checked.end(),
                          [&](const std::string& k) { return action_inside(runs, body, k); });
  return ans;
}

std::pair<Rational, Rational> value_range(const StitAutomaton& t) {
  const auto runs = lassos(t, t.init, t.states.size(), t.states.size());
  if (runs.empty()) throw std::invalid_argument("no infinite execution");
  Rational lo = runs.front().value, hi = runs.front().value;
  for (const auto& r : runs) {
    lo = std::min(lo, r.value);
    hi = std::max(hi, r.value);
  }
  return {lo, hi};
}

std::set<std::vector<std::string>> traces(const StitAutomaton& t, std::size_t depth,
                                          const std::optional<std::string>& first) {
  auto label = [&](const std::string& s) {
    std::string out = "{";
    auto it = t.labels.find(s);
    if (it != t.labels.end()) {
      std::vector<std::string> atoms = it->second;
      std::sort(atoms.begin(), atoms.end());
      for (const auto& a : atoms) out += a + ",";
    }
    return out + "}";
  };
  std::set<std::vector<std::string>> out;
  std::vector<std::string> trace{label(t.init)};
  std::function<void(const std::string&)> walk = [&](const std::string& at) {
    if (trace.size() == depth + 1) {
      out.insert(trace);
      return;
    }
    for (const auto& tr : t.transitions) {
      if (tr.from != at) continue;
      if (trace.size() == 1 && first && tr.action != *first) continue;
      trace.push_back(tr.action + "/" + deontic::format_rational(tr.weight) + "/" + label(tr.to));
      walk(tr.to);
      trace.pop_back();
    }
  };
  walk(t.init);
  return out;
}

Action histories_through(const deontic::tree::ModelData& d, int m) {
  Action out;
  for (const auto& h : d.histories)
    if (std::find(h.moments.begin(), h.moments.end(), m) != h.moments.end()) out.insert(h.id);
  return out;
}

std::vector<Action> choice(const deontic::tree::ModelData& d, const std::string& agent, int m) {
  for (const auto& c : d.choices)
    if (c.agent == agent && c.moment == m) {
      std::vector<Action> out;
      for (const auto& a : c.actions) out.emplace_back(a.begin(), a.end());
      return out;
    }
  return {histories_through(d, m)};
}

std::vector<Action> joint_cells(const deontic::tree::ModelData& d,
                                const std::vector<std::string>& agents, int m) {
  std::vector<Action> cells{histories_through(d, m)};
  for (const auto& a : agents) {
    std::vector<Action> next;
    for (const auto& c : cells)
      for (const auto& k : choice(d, a, m)) {
        Action both;
        std::set_intersection(c.begin(), c.end(), k.begin(), k.end(),
                              std::inserter(both, both.end()));
        if (!both.empty()) next.push_back(both);
      }
    cells = next;
  }
  return cells;
}

std::vector<Action> optimal(const deontic::tree::ModelData& d,
                            const std::vector<std::string>& agents, int m) {
  std::map<std::string, Rational> value;
  for (const auto& h : d.histories) value[h.id] = h.value;
  std::vector<std::string> others;
  for (const auto& a : d.agents)
    if (std::find(agents.begin(), agents.end(), a) == agents.end()) others.push_back(a);
  const auto states = joint_cells(d, others, m);
  const auto actions = joint_cells(d, agents, m);

  auto weak = [&](const Action& k, const Action& k2) {
    for (const auto& s : states)
      for (const auto& h : k)
        for (const auto& h2 : k2)
          if (s.count(h) && s.count(h2) && value[h] > value[h2]) return false;
    return true;
  };
  std::vector<Action> out;
  for (const auto& k : actions) {
    bool dominated = false;
    for (const auto& k2 : actions)
      if (k2 != k && weak(k, k2) && !weak(k2, k)) dominated = true;
    if (!dominated) out.push_back(k);
  }
  return out;
}

}  // namespace oracle
