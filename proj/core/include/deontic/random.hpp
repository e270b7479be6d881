// Random models, automata and formulas for property tests and demos.
// Everything is driven by a caller-owned std::mt19937_64, so a seed fixes
// the whole sequence.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "deontic/automaton.hpp"
#include "deontic/formula.hpp"
#include "deontic/tree_model.hpp"

namespace deontic::random {

struct ModelBounds {
  unsigned max_depth = 3;
  unsigned max_histories = 6;
  unsigned max_agents = 2;
  std::vector<std::string> atoms{"p", "q"};
  int max_value = 5;
};

/// A model satisfying every choice axiom. Agents are alpha, beta, ...;
/// labels are drawn per moment/history pair.
tree::ModelData model(std::mt19937_64& rng, const ModelBounds& bounds = {});

struct AutomatonBounds {
  unsigned max_states = 6;
  unsigned max_first_actions = 3;
  unsigned max_out_degree = 2;
  int max_weight = 5;
  std::vector<std::string> atoms{"p", "q"};
};

/// A valid automaton: every state has 1..max_out_degree successors, at most
/// one transition per (from, to) pair, weights 1..max_weight. The initial
/// state has between 1 and max_first_actions distinct actions.
automata::StitAutomaton automaton(std::mt19937_64& rng, const AutomatonBounds& bounds = {});

/// Deterministic family for scaling measurements. The initial state has
/// actions K1..Km, Ki leading into state ci of a ring of `ring` states
/// (ring >= m), each with two successors. Every weight is 3, so every
/// first action is optimal; p labels even ring states, q every third.
automata::StitAutomaton fan(unsigned first_actions, unsigned ring = 10);

struct FormulaBounds {
  unsigned max_depth = 3;
  std::vector<std::string> atoms{"p", "q"};
  bool quantifiers = false;  // allow A and E
  bool bounded = false;      // allow X^n, F[n:m], BR[N]
  unsigned max_horizon = 3;  // bound for the bounded operators
};

/// A pure formula.
Formula formula(std::mt19937_64& rng, const FormulaBounds& bounds = {});

/// An obligation nesting dstit (about one of `agents`) and negation up to
/// `stit_depth` levels around a random pure formula.
Obligation obligation(std::mt19937_64& rng, const std::vector<std::string>& agents,
                      unsigned stit_depth, const FormulaBounds& bounds = {});

}  // namespace deontic::random
