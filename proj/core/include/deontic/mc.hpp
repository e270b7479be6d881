// Deciding dominance oughts at the root of the model generated by a stit
// automaton, without building that (infinite) model.
//
// For every first action K the checker builds the automaton restricted to
// K at the root (and its primed copy, whose executions are exactly the
// executions starting with K), computes the interval of bottleneck values
// reachable under K, keeps the actions no other interval strictly
// dominates, and asks CTL* questions about the survivors.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deontic/automaton.hpp"
#include "deontic/ctlstar.hpp"
#include "deontic/formula.hpp"

namespace deontic::mc {

/// How an optimal action was tested against the obligation.
enum class Case {
  Ctls,           // pure CTL*: every execution starting with K satisfies it
  DstitPositive,  // [a dstit: phi]
  DstitNegated,   // ![a dstit: phi]
};

std::string to_string(Case c);

struct ActionReport {
  std::string action;
  automata::ValueInterval interval;
  bool optimal = false;
  std::optional<Case> case_taken;       // set for optimal actions
  std::optional<bool> guarantees;       // K inside |A| (optimal actions only)
  std::optional<bool> meets_condition;  // K inside |B| (conditional checks)
  std::optional<ctlstar::Counterexample> counterexample;
};

struct Verdict {
  bool holds = false;
  /// Conditional check where no optimal action guarantees the condition.
  bool vacuous = false;
  /// Every first action, in declaration order.
  std::vector<ActionReport> actions;
  std::vector<std::string> optimal;
  /// Optimal actions kept by the condition (conditional checks only).
  std::vector<std::string> retained;
  std::optional<std::string> failing_action;
  std::optional<ctlstar::Counterexample> counterexample;
  std::string reason;
};

/// K is strictly dominated by K' when every value of K is at most every
/// value of K' and not the other way round.
bool interval_dominated(const automata::ValueInterval& k, const automata::ValueInterval& k2);

/// Does the model generated by `t` satisfy O[agent cstit: a] at its root?
/// Throws UnsupportedError for non-min accumulation or stit operators about
/// other agents, FormatError for invalid automata.
Verdict check_ought(const automata::StitAutomaton& t, const std::string& agent,
                    const Obligation& a);

/// O[agent cstit: a / b]: among the optimal actions, those that guarantee b
/// must guarantee a. Holds vacuously (with `vacuous` set) when none
/// guarantees b.
Verdict check_conditional_ought(const automata::StitAutomaton& t, const std::string& agent,
                                const Obligation& a, const Obligation& b);

/// Dispatches on the presence of a condition. Group oughts are rejected.
Verdict check(const automata::StitAutomaton& t, const OughtStatement& o);

}  // namespace deontic::mc
