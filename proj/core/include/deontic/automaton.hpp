// Weighted stit automata: validation, products, unrolling into explicit
// models, the first-action surgeries used by the ought checker, and exact
// extremal values under min-accumulation.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deontic/rational.hpp"
#include "deontic/tree_model.hpp"

namespace deontic::automata {

enum class Accumulation { Min };

std::string to_string(Accumulation a);

struct Transition {
  std::string from;
  std::string action;
  std::string to;
  Rational weight;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Plain data; use validate_automaton before relying on any invariant.
struct StitAutomaton {
  std::vector<std::string> states;
  std::string init;
  std::vector<std::string> actions;
  std::vector<std::string> final_states;  // carried, never consulted
  std::vector<Transition> transitions;
  std::map<std::string, std::vector<std::string>> labels;
  Accumulation accumulation = Accumulation::Min;

  const std::vector<std::string>& label(const std::string& state) const;
  std::vector<const Transition*> outgoing(const std::string& state) const;
  /// Actions on transitions leaving `init`, in declaration order of the
  /// action list (unlisted ones after, in transition order).
  std::vector<std::string> first_actions() const;
};

struct AutomatonViolation {
  /// initial, reference, duplicate, edge-uniqueness, dead-end.
  std::string kind;
  std::string message;
};

std::vector<AutomatonViolation> validate_automaton(const StitAutomaton& t);
/// Throws FormatError listing the violations when there are any.
void require_valid(const StitAutomaton& t);

/// States reachable from init.
std::vector<std::string> reachable_states(const StitAutomaton& t);

// --------------------------------------------------------------- product

enum class WeightPolicy { Min, Sum };

struct Component {
  std::string agent;
  StitAutomaton automaton;
};

/// Synchronous product over all state tuples. States and actions are named
/// "(a,b,...)"; with two or more components atoms are qualified as
/// "atom_agent" (p becomes p_alpha). A single component is returned with tuple names only.
/// Throws std::invalid_argument for no components or a repeated agent,
/// UnsupportedError when accumulation kinds differ.
StitAutomaton product(const std::vector<Component>& components, WeightPolicy weights);

// ------------------------------------------------------------- unrolling

/// Depth-bounded tree of executions as an explicit model for `agent`.
/// Moments are numbered breadth-first from 0, histories h0, h1, ... in
/// depth-first order; a history's value is the minimum weight it traverses
/// and every moment carries the label of its automaton state.
/// Throws std::invalid_argument for depth 0 and ResourceError when the tree
/// has more histories than resource_limit().
tree::ModelData unroll(const StitAutomaton& t, unsigned depth, const std::string& agent = "alpha");

// ------------------------------------------------------------- surgeries

/// Drops every transition leaving init with an action other than k.
/// Throws LookupError when k does not leave init.
StitAutomaton restrict_first_action(const StitAutomaton& t, const std::string& k);

struct PrimedAutomaton {
  StitAutomaton automaton;
  /// State of the result -> state of the original automaton it copies.
  std::map<std::string, std::string> origin;
};

/// Renamed copy of `restricted` (names get a trailing "'") united with
/// `full`; copied transitions into the copied init go to full's init
/// instead. Its executions are exactly full's executions that start with
/// the action kept in `restricted`.
PrimedAutomaton prime_automaton(const StitAutomaton& restricted, const StitAutomaton& full);

/// Same automaton started in another state.
StitAutomaton reroot(const StitAutomaton& t, const std::string& state);

// -------------------------------------------------------- extremal values

struct ValueInterval {
  std::string action;  // unique first action, empty when there are several
  Rational lo;
  Rational hi;
};

/// lo: least bottleneck (minimum traversed weight) of an infinite execution
/// from init; hi: greatest one. Throws UnsupportedError for a reachable dead
/// end.
ValueInterval extremal_values(const StitAutomaton& t);

// --------------------------------------------------------- cycle machinery

struct CycleAutomaton {
  struct Cycle {
    std::vector<std::string> states;       // starts at its lowest-index state
    std::vector<std::size_t> transitions;  // indices into the source automaton
  };
  enum class EdgeKind { Entry, Connect, Link };
  struct Edge {
    EdgeKind kind;
    std::size_t from;  // 0 is init, i > 0 is cycles[i - 1]
    std::size_t to;
    std::vector<std::size_t> path;  // source transitions; empty for links
  };

  std::string init;
  std::vector<Cycle> cycles;
  std::vector<Edge> edges;

  std::size_t state_count() const { return cycles.size() + 1; }
};

/// One state per simple cycle plus init. Entry edges carry simple paths
/// from init to a cycle, connect edges carry simple paths between disjoint
/// cycles, and cycles sharing a state are linked both ways by empty paths.
/// Throws ResourceError past resource_limit() cycles or paths.
CycleAutomaton build_cycle_automaton(const StitAutomaton& t);

struct AbstractSchedule {
  std::vector<std::size_t> prefix;          // source transitions
  std::vector<std::size_t> cycles;          // indices into CycleAutomaton::cycles
  std::vector<std::vector<std::size_t>> connectors;  // between consecutive cycles
  Rational value;                           // min over every transition involved
};

/// Every simple path of U leaving init (at least one edge).
std::vector<AbstractSchedule> enumerate_abstract_schedules(const StitAutomaton& t,
                                                           const CycleAutomaton& u);

}  // namespace deontic::automata
