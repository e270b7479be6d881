// Traffic rules written as ought statements, and the small models used to
// exercise them.
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "deontic/automaton.hpp"
#include "deontic/formula.hpp"
#include "deontic/tree_model.hpp"

namespace deontic::rss {

// Atom names are derived from agent names only.
std::string grow(const std::string& giver, const std::string& receiver);  // grow_<giver>_<receiver>
std::string proceeds(const std::string& agent);                            // p_<agent>
std::string granted(const std::string& agent);                             // g_<agent>
std::string wants_lane_change(const std::string& agent);                   // w_<agent>

/// p_a & !(grow_b_a & grow_c_a & ...) over the other agents.
Formula takes_row(const std::string& agent, const std::vector<std::string>& agents);

struct RearEnd {
  OughtStatement naive;    // O[a cstit: !phi]
  OughtStatement refined;  // O[a cstit: ![a dstit: phi]]
};

/// Do not hit someone from behind. `collision` must be pure.
RearEnd rss1(const std::string& agent, const Formula& collision);

/// O[a cstit: A G((cut_in | reckless) -> !reckless)].
OughtStatement rss2(const std::string& agent, const Formula& cut_in, const Formula& reckless);

struct RightOfWay {
  std::vector<OughtStatement> prohib0;  // O[a cstit: !TROW_a] per agent
  OughtStatement pos;                   // O[{agents} cstit: E (g_a | g_b | ...)]
  std::vector<OughtStatement> prohib;   // O[a cstit: G(!g_a -> !p_a)] per agent
};

/// Throws GrammarError for an empty or duplicated agent list.
RightOfWay rss3(const std::vector<std::string>& agents);

/// O[a cstit: ![a dstit: !p_a BR[n] g_a] / w_a].
OughtStatement rss6(const std::string& agent, unsigned n);

// ------------------------------------------------------------- fixtures
//
// Moment ids: the root is 0. In fig1 and fig2 the later moment discussed
// alongside the root is `fig1_later` / `fig2_later`; in fig3 it is
// `fig3_later`.

inline constexpr int fig1_later = 1;
inline constexpr int fig2_later = 6;
inline constexpr int fig3_later = 1;

/// Six histories; alpha chooses K1 = {h1..h4} or K2 = {h5, h6} at the root
/// and K3 = {h1}, K4 = {h2}, K5 = {h3, h4} at moment 1. A holds on h1, h2,
/// h3, h5, h6.
tree::ModelData fig1();
/// Overtaking: stay (hs1, hs2) or pass (hpi, h0, h1, h2). After passing,
/// moment 6 offers staying in the opposite lane (hpi) or returning (h0,
/// h1, h2, returning after 0, 1, 2 steps).
tree::ModelData fig2();
/// The optimal root action contains ht, which proceeds without being
/// granted right-of-way after moment 1 and is not optimal there.
tree::ModelData fig3();
/// fig3 without any w_alpha label.
tree::ModelData no_lane_change_wish();
/// hit_from_behind on every history.
tree::ModelData unavoidable_collision();
/// hit_from_behind only under the dominated action.
tree::ModelData avoidable_collision();
/// The optimal action contains a reckless cut-in.
tree::ModelData reckless_cut_in();
/// No cut-ins at all.
tree::ModelData no_cut_in();
/// alpha proceeds on every history; beta decides whether to give way.
tree::ModelData forced_to_proceed();
/// Group model where the best joint action grants alpha right-of-way.
tree::ModelData granted_to_one();
/// alpha's optimal action contains a history proceeding without right-of-way.
tree::ModelData prohibition_violated();

/// q0 -K1/4-> q1 (loop 5), q0 -K2/3-> q2 (loop 2); p holds in q0 and q1.
automata::StitAutomaton t0();
/// t0 with every weight 1.
automata::StitAutomaton t0_equal_weights();
/// Lane merge: waiting forever (value 1) or merging (value 5). Atoms
/// p_alpha, g_alpha, w_alpha.
automata::StitAutomaton merge();

struct Fixture {
  std::string name;
  std::string description;
  std::variant<tree::ModelData, automata::StitAutomaton> data;
};

/// Every fixture above, in a fixed order.
std::vector<Fixture> fixtures();

}  // namespace deontic::rss
