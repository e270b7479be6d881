// Brute-force reference implementations used to cross-check the library.
// Nothing here calls the code under test except for plain data accessors.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "deontic/automaton.hpp"
#include "deontic/formula.hpp"
#include "deontic/tree_model.hpp"

namespace oracle {

using deontic::Formula;
using deontic::Obligation;
using deontic::Rational;
using deontic::automata::StitAutomaton;

/// An ultimately periodic execution: positions 0..n-1, position n-1 is
/// followed by `loop_start`.
struct Run {
  std::vector<std::string> states;
  std::size_t loop_start = 0;
  std::string first_action;
  Rational value;  // minimum weight over every transition used
};

/// Lassos from `from` with at most `max_stem` stem transitions and at most
/// `max_loop` loop transitions. Stem and loop are arbitrary walks.
std::vector<Run> lassos(const StitAutomaton& t, const std::string& from, std::size_t max_stem,
                        std::size_t max_loop);

/// Evaluates formulas on runs of one automaton. Path quantifiers at a
/// position range over the lassos leaving that position's state.
class LassoSemantics {
 public:
  explicit LassoSemantics(const StitAutomaton& t);

  const std::vector<Run>& runs_from(const std::string& state);
  bool holds(const Run& r, std::size_t pos, const Formula& f);

 private:
  std::size_t next(const Run& r, std::size_t pos) const;
  bool atom(const Run& r, std::size_t pos, const std::string& a) const;
  bool quantified(const std::string& state, const Formula& f);

  const StitAutomaton& t_;
  std::size_t bound_;
  std::map<std::string, std::vector<Run>> runs_;
  std::map<std::pair<std::string, std::string>, bool> state_cache_;
};

struct OughtAnswer {
  bool holds = false;
  bool vacuous = false;
  std::set<std::string> optimal;
};

/// Dominance ought at the root of the model generated by `t`, decided on
/// the lasso set from init. With a condition, only optimal actions inside
/// the condition are checked; none gives a vacuous yes.
OughtAnswer ought_on_lassos(const StitAutomaton& t, const std::string& agent, const Obligation& a,
                            const std::optional<Obligation>& condition = std::nullopt);

/// Least and greatest run value from init.
std::pair<Rational, Rational> value_range(const StitAutomaton& t);

/// Observable traces of `depth` steps from init: the initial label followed
/// by action, weight and target label per step. With `first`, only traces
/// whose first action is `first`.
std::set<std::vector<std::string>> traces(const StitAutomaton& t, std::size_t depth,
                                          const std::optional<std::string>& first = std::nullopt);

// ---------------------------------------------------------- explicit models

using Action = std::set<std::string>;

/// H_m straight from the history records.
Action histories_through(const deontic::tree::ModelData& d, int m);
/// Choice cells of one agent (or the trivial choice).
std::vector<Action> choice(const deontic::tree::ModelData& d, const std::string& agent, int m);
/// Non-empty intersections of one cell per listed agent; {H_m} for none.
std::vector<Action> joint_cells(const deontic::tree::ModelData& d,
                                const std::vector<std::string>& agents, int m);
/// Un-dominated group actions by sure-thing comparison against the other
/// agents' joint cells.
std::vector<Action> optimal(const deontic::tree::ModelData& d,
                            const std::vector<std::string>& agents, int m);

}  // namespace oracle
