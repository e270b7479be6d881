#include "deontic/random.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace deontic::random {

namespace {

unsigned pick(std::mt19937_64& rng, unsigned lo, unsigned hi) {
  return std::uniform_int_distribution<unsigned>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

const char* const agent_names[] = {"alpha", "beta", "gamma", "delta"};

}  // namespace

tree::ModelData model(std::mt19937_64& rng, const ModelBounds& b) {
  tree::ModelData d;
  const unsigned agents = pick(rng, 1, std::max(1u, std::min(b.max_agents, 4u)));
  for (unsigned i = 0; i < agents; ++i) d.agents.push_back(agent_names[i]);
  d.atoms = b.atoms;

  std::vector<std::optional<int>> parent{std::nullopt};
  std::vector<unsigned> depth{0};
  std::vector<std::vector<int>> children(1);
  std::vector<int> leaves{0};
  const unsigned rounds = pick(rng, 0, 2 * b.max_histories);
  for (unsigned r = 0; r < rounds; ++r) {
    std::vector<int> open;
    for (int l : leaves)
      if (depth[static_cast<std::size_t>(l)] < b.max_depth) open.push_back(l);
    if (open.empty()) break;
    const int at = open[pick(rng, 0, static_cast<unsigned>(open.size() - 1))];
    const unsigned room = b.max_histories + 1 - static_cast<unsigned>(leaves.size());
    if (room < 1) break;
    const unsigned k = pick(rng, 1, std::min(3u, room));
    leaves.erase(std::find(leaves.begin(), leaves.end(), at));
    for (unsigned i = 0; i < k; ++i) {
      const int id = static_cast<int>(parent.size());
      parent.push_back(at);
      depth.push_back(depth[static_cast<std::size_t>(at)] + 1);
      children.emplace_back();
      children[static_cast<std::size_t>(at)].push_back(id);
      leaves.push_back(id);
    }
  }
  for (std::size_t m = 0; m < parent.size(); ++m) d.moments.push_back({static_cast<int>(m), parent[m]});

  // Histories: one per leaf, in depth-first order.
  std::vector<std::vector<std::string>> below(parent.size());
  std::vector<int> path;
  std::function<void(int)> walk = [&](int m) {
    path.push_back(m);
    const auto& cs = children[static_cast<std::size_t>(m)];
    if (cs.empty()) {
      const std::string id = "h" + std::to_string(d.histories.size() + 1);
      d.histories.push_back({id, path, Rational(pick(rng, 0, static_cast<unsigned>(b.max_value)))});
      for (int x : path) below[static_cast<std::size_t>(x)].push_back(id);
    }
    for (int c : cs) walk(c);
    path.pop_back();
  };
  walk(0);

  // Choices: the children of a moment are laid out on a grid with one axis
  // per agent, which keeps undivided histories together and makes every
  // combination of actions possible.
  for (std::size_t m = 0; m < parent.size(); ++m) {
    const auto& cs = children[m];
    if (cs.size() < 2) continue;
    std::vector<unsigned> sizes(agents, 1);
    unsigned cells = 1;
    for (unsigned a = 0; a < agents; ++a) {
      const unsigned limit = static_cast<unsigned>(cs.size()) / cells;
      sizes[a] = pick(rng, 1, std::max(1u, limit));
      cells *= sizes[a];
    }
    std::vector<unsigned> cell(cs.size());
    std::vector<unsigned> order(cs.size());
    for (unsigned i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (unsigned i = 0; i < order.size(); ++i)
      cell[order[i]] = i < cells ? i : pick(rng, 0, cells - 1);
    unsigned stride = 1;
    for (unsigned a = 0; a < agents; ++a) {
      std::vector<std::vector<std::string>> actions(sizes[a]);
      for (std::size_t i = 0; i < cs.size(); ++i) {
        const unsigned coord = (cell[i] / stride) % sizes[a];
        const auto& hs = below[static_cast<std::size_t>(cs[i])];
        actions[coord].insert(actions[coord].end(), hs.begin(), hs.end());
      }
      stride *= sizes[a];
      if (sizes[a] > 1 || coin(rng)) d.choices.push_back({d.agents[a], static_cast<int>(m), actions});
    }
  }

  for (std::size_t m = 0; m < parent.size(); ++m)
    for (const auto& h : below[m]) {
      std::vector<std::string> atoms;
      for (const auto& p : b.atoms)
        if (coin(rng)) atoms.push_back(p);
      if (!atoms.empty()) d.labels.push_back({static_cast<int>(m), h, atoms});
    }
  return d;
}

automata::StitAutomaton automaton(std::mt19937_64& rng, const AutomatonBounds& b) {
  automata::StitAutomaton t;
  const unsigned n = pick(rng, 1, std::max(1u, b.max_states));
  for (unsigned i = 0; i < n; ++i) t.states.push_back("q" + std::to_string(i));
  t.init = t.states.front();
  const unsigned nact = std::max(1u, b.max_first_actions);
  for (unsigned i = 1; i <= nact; ++i) t.actions.push_back("K" + std::to_string(i));

  auto weight = [&] { return Rational(pick(rng, 1, static_cast<unsigned>(b.max_weight))); };
  for (unsigned s = 0; s < n; ++s) {
    std::vector<unsigned> targets(n);
    for (unsigned i = 0; i < n; ++i) targets[i] = i;
    std::shuffle(targets.begin(), targets.end(), rng);
    const unsigned limit = s == 0 ? std::max(nact, 1u) : std::max(1u, b.max_out_degree);
    const unsigned out = pick(rng, 1, std::min(limit, n));
    std::vector<std::string> first;
    if (s == 0) {
      // Distinct first actions on the first few edges, then random ones.
      first = t.actions;
      std::shuffle(first.begin(), first.end(), rng);
      first.resize(pick(rng, 1, std::min(out, nact)));
    }
    for (unsigned i = 0; i < out; ++i) {
      const std::string act = i < first.size() ? first[i]
                              : s == 0         ? first[pick(rng, 0, static_cast<unsigned>(first.size() - 1))]
                                               : t.actions[pick(rng, 0, nact - 1)];
      t.transitions.push_back({t.states[s], act, t.states[targets[i]], weight()});
    }
  }
  for (const auto& s : t.states) {
    std::vector<std::string> atoms;
    for (const auto& p : b.atoms)
      if (coin(rng)) atoms.push_back(p);
    if (!atoms.empty()) t.labels[s] = atoms;
  }
  return t;
}

Formula formula(std::mt19937_64& rng, const FormulaBounds& b) {
  std::function<Formula(unsigned)> gen = [&](unsigned budget) -> Formula {
    if (budget == 0 || coin(rng, 0.25)) {
      if (coin(rng, 0.1)) return coin(rng) ? fml::top() : fml::bottom();
      return fml::atom(b.atoms[pick(rng, 0, static_cast<unsigned>(b.atoms.size() - 1))]);
    }
    const unsigned h = std::max(1u, b.max_horizon);
    const unsigned kinds = b.bounded ? (b.quantifiers ? 15 : 13) : (b.quantifiers ? 12 : 10);
    unsigned k = pick(rng, 0, kinds - 1);
    if (!b.bounded && k >= 10) k += 3;  // skip the bounded operators
    switch (k) {
      case 0: return fml::Not(gen(budget - 1));
      case 1: return fml::And(gen(budget - 1), gen(budget - 1));
      case 2: return fml::Or(gen(budget - 1), gen(budget - 1));
      case 3: return fml::Implies(gen(budget - 1), gen(budget - 1));
      case 4: return fml::X(gen(budget - 1));
      case 5: return fml::F(gen(budget - 1));
      case 6: return fml::G(gen(budget - 1));
      case 7: return fml::U(gen(budget - 1), gen(budget - 1));
      case 8: return fml::R(gen(budget - 1), gen(budget - 1));
      case 9: return fml::Not(gen(budget - 1));
      case 10: return fml::Xn(pick(rng, 0, h), gen(budget - 1));
      case 11: {
        const unsigned lo = pick(rng, 0, h);
        return fml::F(lo, pick(rng, lo, h), gen(budget - 1));
      }
      case 12: return fml::BR(pick(rng, 0, h), gen(budget - 1), gen(budget - 1));
      case 13: return fml::A(gen(budget - 1));
      default: return fml::E(gen(budget - 1));
    }
  };
  return gen(b.max_depth);
}

Obligation obligation(std::mt19937_64& rng, const std::vector<std::string>& agents,
                      unsigned stit_depth, const FormulaBounds& b) {
  if (stit_depth == 0 || agents.empty() || coin(rng, 0.3)) return plain(formula(rng, b));
  const Obligation inner = obligation(rng, agents, stit_depth - 1, b);
  if (coin(rng)) return negate(inner);
  return dstit(agents[pick(rng, 0, static_cast<unsigned>(agents.size() - 1))], inner);
}

automata::StitAutomaton fan(unsigned first_actions, unsigned ring) {
  if (first_actions < 1 || ring < std::max(first_actions, 3u))
    throw std::invalid_argument("fan needs 1 <= first actions <= ring and ring >= 3");
  automata::StitAutomaton t;
  t.init = "q0";
  t.states.push_back("q0");
  t.labels["q0"] = {"p"};
  auto c = [](unsigned j) { return "c" + std::to_string(j); };
  for (unsigned j = 0; j < ring; ++j) {
    t.states.push_back(c(j));
    std::vector<std::string> l;
    if (j % 2 == 0) l.push_back("p");
    if (j % 3 == 0) l.push_back("q");
    if (!l.empty()) t.labels[c(j)] = l;
  }
  for (unsigned i = 1; i <= first_actions; ++i) {
    t.actions.push_back("K" + std::to_string(i));
    t.transitions.push_back({"q0", t.actions.back(), c(i - 1), Rational(3)});
  }
  t.actions.push_back("a");
  t.actions.push_back("b");
  for (unsigned j = 0; j < ring; ++j) {
    t.transitions.push_back({c(j), "a", c((j + 1) % ring), Rational(3)});
    t.transitions.push_back({c(j), "b", c((j + 2) % ring), Rational(3)});
  }
  return t;
}

}  // namespace deontic::random
