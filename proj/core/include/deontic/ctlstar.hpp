// CTL* model checking over the unweighted view of a stit automaton.
//
// Path formulas go through a tableau translation to a transition-based
// generalized Büchi automaton and a product emptiness check. State
// subformulas nested in path formulas are labelled first and replaced by
// fresh atoms.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "deontic/automaton.hpp"
#include "deontic/formula.hpp"

namespace deontic::ctlstar {

struct TransitionSystem {
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::vector<std::vector<std::size_t>> succ;
  std::vector<std::set<std::string>> labels;

  std::size_t index(const std::string& state) const;  // throws LookupError
};

/// Forgets weights and actions; parallel edges collapse to one.
TransitionSystem strip_weights(const automata::StitAutomaton& t);

struct BuchiAutomaton {
  struct Edge {
    std::size_t from;
    std::size_t to;
    std::set<std::string> positive;  // atoms that must hold
    std::set<std::string> negative;  // atoms that must not hold
    std::vector<bool> accepting;     // membership in each acceptance set
  };
  std::size_t state_count = 0;
  std::vector<std::size_t> initial;
  std::vector<Edge> edges;
  std::size_t acceptance_sets = 0;
  /// Rendered obligations per state, for debugging and tests.
  std::vector<std::string> state_names;
};

/// Language = infinite words satisfying f. f must be quantifier-free and
/// stit-free; bounded operators are expanded first. Throws UnsupportedError.
BuchiAutomaton ltl_to_buchi(const Formula& f);

/// Ultimately periodic word stem . loop^omega, one atom set per position.
using Word = std::vector<std::set<std::string>>;

bool accepts(const BuchiAutomaton& b, const Word& stem, const Word& loop);

/// Direct LTL evaluation on stem . loop^omega (loop non-empty).
bool holds_on_lasso(const Formula& f, const Word& stem, const Word& loop);

struct Counterexample {
  std::vector<std::string> stem;  // states before the loop
  std::vector<std::string> loop;  // repeated forever, non-empty
  std::string formula;            // rendered formula that the lasso violates
};

struct UniversalResult {
  bool holds = false;
  std::optional<Counterexample> counterexample;
};

/// Every infinite path from the initial state satisfies f. f may contain
/// path-quantified state subformulas; stit operators are rejected.
UniversalResult check_universal(const TransitionSystem& ts, const Formula& f);

/// States satisfying the state formula f.
std::set<std::string> check_ctls(const TransitionSystem& ts, const Formula& f);

/// f with every maximal path-quantified subformula replaced by a fresh atom
/// ("$0", "$1", ... which the parser cannot produce), and the states of
/// `ts` where each fresh atom holds.
struct Abstraction {
  Formula formula;
  std::map<std::string, std::set<std::string>> holds_at;
};
Abstraction abstract_state_subformulas(const TransitionSystem& ts, const Formula& f);

/// Adds the fresh atoms of `a` to the labels of `ts`. A state x gets atom p
/// when origin(x) is in a.holds_at[p]; origin defaults to the identity.
TransitionSystem with_atoms(const TransitionSystem& ts, const Abstraction& a,
                            const std::map<std::string, std::string>& origin = {});

}  // namespace deontic::ctlstar
