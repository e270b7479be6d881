#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "deontic/automaton.hpp"
#include "deontic/errors.hpp"

namespace deontic::automata {

namespace {

struct Graph {
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  // succ[q] = (target, transition index)
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> succ;

  explicit Graph(const StitAutomaton& t) {
    for (const auto& s : t.states)
      if (index.emplace(s, names.size()).second) names.push_back(s);
    succ.resize(names.size());
    for (std::size_t i = 0; i < t.transitions.size(); ++i) {
      const auto& tr = t.transitions[i];
      auto f = index.find(tr.from);
      auto g = index.find(tr.to);
      if (f == index.end() || g == index.end()) continue;
      succ[f->second].push_back({g->second, i});
    }
  }
};

void bump(std::size_t& count, const char* what) {
  if (++count > resource_limit())
    throw ResourceError(std::string("more than ") + std::to_string(resource_limit()) + " " + what);
}

// Simple paths from any state in `from` to any state in `to`, with every
// internal state outside `blocked`. Paths have at least one transition.
std::vector<std::vector<std::size_t>> simple_paths(const Graph& g, const std::set<std::size_t>& from,
                                                   const std::set<std::size_t>& to,
                                                   const std::set<std::size_t>& blocked,
                                                   std::size_t& count) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path;
  std::vector<bool> on_path(g.names.size(), false);
  std::function<void(std::size_t)> dfs = [&](std::size_t q) {
    for (const auto& [r, tr] : g.succ[q]) {
      if (on_path[r]) continue;
      path.push_back(tr);
      if (to.count(r)) {
        bump(count, "paths");
        out.push_back(path);
      } else if (!blocked.count(r)) {
        on_path[r] = true;
        dfs(r);
        on_path[r] = false;
      }
      path.pop_back();
    }
  };
  for (std::size_t s : from) {
    on_path[s] = true;
    dfs(s);
    on_path[s] = false;
  }
  return out;
}

}  // namespace

CycleAutomaton build_cycle_automaton(const StitAutomaton& t) {
  const Graph g(t);
  CycleAutomaton u;
  u.init = t.init;
  std::size_t count = 0;

  // Simple cycles, each found once from its lowest-index state.
  for (std::size_t s = 0; s < g.names.size(); ++s) {
    std::vector<std::size_t> states{s};
    std::vector<std::size_t> trs;
    std::vector<bool> on(g.names.size(), false);
    on[s] = true;
    std::function<void(std::size_t)> dfs = [&](std::size_t q) {
      for (const auto& [r, tr] : g.succ[q]) {
        if (r == s) {
          bump(count, "cycles");
          CycleAutomaton::Cycle c;
          for (std::size_t x : states) c.states.push_back(g.names[x]);
          c.transitions = trs;
          c.transitions.push_back(tr);
          u.cycles.push_back(std::move(c));
        } else if (r > s && !on[r]) {
          on[r] = true;
          states.push_back(r);
          trs.push_back(tr);
          dfs(r);
          trs.pop_back();
          states.pop_back();
          on[r] = false;
        }
      }
    };
    dfs(s);
  }

  std::vector<std::set<std::size_t>> members;
  for (const auto& c : u.cycles) {
    std::set<std::size_t> m;
    for (const auto& s : c.states) m.insert(g.index.at(s));
    members.push_back(std::move(m));
  }
  auto intersects = [](const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
    return std::any_of(a.begin(), a.end(), [&](std::size_t x) { return b.count(x) > 0; });
  };

  count = 0;
  auto init_it = g.index.find(t.init);
  for (std::size_t c = 0; c < u.cycles.size(); ++c) {
    if (init_it == g.index.end()) break;
    const std::size_t q0 = init_it->second;
    if (members[c].count(q0)) {
      u.edges.push_back({CycleAutomaton::EdgeKind::Entry, 0, c + 1, {}});
      continue;
    }
    for (auto& p : simple_paths(g, {q0}, members[c], members[c], count))
      u.edges.push_back({CycleAutomaton::EdgeKind::Entry, 0, c + 1, std::move(p)});
  }
  for (std::size_t c = 0; c < u.cycles.size(); ++c) {
    for (std::size_t d = 0; d < u.cycles.size(); ++d) {
      if (c == d) continue;
      if (intersects(members[c], members[d])) {
        u.edges.push_back({CycleAutomaton::EdgeKind::Link, c + 1, d + 1, {}});
        continue;
      }
      std::set<std::size_t> blocked = members[c];
      blocked.insert(members[d].begin(), members[d].end());
      for (auto& p : simple_paths(g, members[c], members[d], blocked, count))
        u.edges.push_back({CycleAutomaton::EdgeKind::Connect, c + 1, d + 1, std::move(p)});
    }
  }
  return u;
}

std::vector<AbstractSchedule> enumerate_abstract_schedules(const StitAutomaton& t,
                                                           const CycleAutomaton& u) {
  std::vector<std::vector<std::size_t>> out_edges(u.state_count());
  for (std::size_t e = 0; e < u.edges.size(); ++e) out_edges[u.edges[e].from].push_back(e);

  std::vector<AbstractSchedule> out;
  std::vector<std::size_t> trail;  // edge indices
  std::vector<bool> visited(u.state_count(), false);
  std::size_t count = 0;

  auto emit = [&] {
    bump(count, "abstract schedules");
    AbstractSchedule s;
    s.prefix = u.edges[trail.front()].path;
    for (std::size_t i = 0; i < trail.size(); ++i) {
      const auto& e = u.edges[trail[i]];
      s.cycles.push_back(e.to - 1);
      if (i > 0) s.connectors.push_back(e.path);
    }
    std::optional<Rational> v;
    auto take = [&](const std::vector<std::size_t>& trs) {
      for (std::size_t tr : trs) {
        const Rational& w = t.transitions.at(tr).weight;
        v = v ? std::min(*v, w) : w;
      }
    };
    take(s.prefix);
    for (const auto& c : s.connectors) take(c);
    for (std::size_t c : s.cycles) take(u.cycles.at(c).transitions);
    s.value = v.value_or(Rational(0));
    out.push_back(std::move(s));
  };

  std::function<void(std::size_t)> dfs = [&](std::size_t q) {
    for (std::size_t e : out_edges[q]) {
      const std::size_t r = u.edges[e].to;
      if (visited[r]) continue;
      visited[r] = true;
      trail.push_back(e);
      emit();
      dfs(r);
      trail.pop_back();
      visited[r] = false;
    }
  };
  visited[0] = true;
  dfs(0);
  return out;
}

}  // namespace deontic::automata
