#include "deontic/rss.hpp"

#include <algorithm>

namespace deontic::rss {

namespace {

using tree::ModelData;
using automata::StitAutomaton;

struct Draft {
  ModelData d;

  Draft(std::vector<std::string> agents, std::vector<std::string> atoms) {
    d.agents = std::move(agents);
    d.atoms = std::move(atoms);
  }
  Draft& moment(int id, std::optional<int> parent) {
    d.moments.push_back({id, parent});
    return *this;
  }
  Draft& history(std::string id, std::vector<int> moments, long long value) {
    d.histories.push_back({std::move(id), std::move(moments), Rational(value)});
    return *this;
  }
  Draft& choice(std::string agent, int m, std::vector<std::vector<std::string>> actions) {
    d.choices.push_back({std::move(agent), m, std::move(actions)});
    return *this;
  }
  Draft& label(int m, std::optional<std::string> h, std::vector<std::string> atoms) {
    d.labels.push_back({m, std::move(h), std::move(atoms)});
    return *this;
  }
};

// Root 0 with one leaf child per history, values in order.
Draft flat(std::vector<std::string> agents, std::vector<std::string> atoms,
           const std::vector<long long>& values) {
  Draft m(std::move(agents), std::move(atoms));
  m.moment(0, std::nullopt);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int leaf = static_cast<int>(i) + 1;
    m.moment(leaf, 0);
    m.history("h" + std::to_string(i + 1), {0, leaf}, values[i]);
  }
  return m;
}

StitAutomaton automaton(std::vector<std::string> states, std::vector<std::string> actions,
                        std::vector<automata::Transition> transitions,
                        std::map<std::string, std::vector<std::string>> labels) {
  StitAutomaton t;
  t.states = std::move(states);
  t.init = t.states.front();
  t.actions = std::move(actions);
  t.transitions = std::move(transitions);
  t.labels = std::move(labels);
  return t;
}

}  // namespace

ModelData fig1() {
  Draft m({"alpha"}, {"A"});
  m.moment(0, std::nullopt).moment(1, 0).moment(2, 0);
  for (int leaf = 3; leaf <= 6; ++leaf) m.moment(leaf, 1);
  m.moment(7, 2).moment(8, 2);
  m.history("h1", {0, 1, 3}, 3)
      .history("h2", {0, 1, 4}, 5)
      .history("h3", {0, 1, 5}, 4)
      .history("h4", {0, 1, 6}, 6)
      .history("h5", {0, 2, 7}, 7)
      .history("h6", {0, 2, 8}, 8);
  m.choice("alpha", 0, {{"h1", "h2", "h3", "h4"}, {"h5", "h6"}});
  m.choice("alpha", 1, {{"h1"}, {"h2"}, {"h3", "h4"}});
  for (const char* h : {"h1", "h2", "h3"}) m.label(0, h, {"A"}).label(1, h, {"A"});
  for (const char* h : {"h5", "h6"}) m.label(0, h, {"A"}).label(2, h, {"A"});
  return m.d;
}

ModelData fig2() {
  Draft m({"alpha"}, {"p", "chi", "collision"});
  m.moment(0, std::nullopt).moment(1, 0).moment(2, 1).moment(3, 1);
  m.moment(4, 0).moment(5, 4).moment(6, 5);
  for (int i = 0; i < 4; ++i) m.moment(7 + i, 6).moment(11 + i, 7 + i);
  m.history("hs1", {0, 1, 2}, 10).history("hs2", {0, 1, 3}, 9);
  m.history("hpi", {0, 4, 5, 6, 7, 11}, 0)
      .history("h0", {0, 4, 5, 6, 8, 12}, 5)
      .history("h1", {0, 4, 5, 6, 9, 13}, 4)
      .history("h2", {0, 4, 5, 6, 10, 14}, 3);
  m.choice("alpha", 0, {{"hs1", "hs2"}, {"hpi", "h0", "h1", "h2"}});
  m.choice("alpha", 6, {{"hpi"}, {"h0", "h1", "h2"}});
  m.label(0, "hs1", {"chi"}).label(0, "hs2", {"chi"});
  m.label(6, "h0", {"p"}).label(9, "h1", {"p"}).label(14, "h2", {"p"});
  // Every history through moment 6 meets a collision eventually, so the
  // state formula A F collision holds there.
  for (int leaf = 11; leaf <= 14; ++leaf) m.label(leaf, std::nullopt, {"collision"});
  return m.d;
}

ModelData fig3() {
  Draft m({"alpha"}, {"p_alpha", "g_alpha", "w_alpha"});
  m.moment(0, std::nullopt).moment(1, 0).moment(2, 0).moment(3, 1).moment(4, 1);
  m.history("ht", {0, 1, 3}, 2).history("h4", {0, 1, 4}, 5).history("h5", {0, 2}, 1);
  m.choice("alpha", 0, {{"ht", "h4"}, {"h5"}});
  m.choice("alpha", 1, {{"ht"}, {"h4"}});
  m.label(0, std::nullopt, {"w_alpha"});
  m.label(0, "ht", {"p_alpha", "g_alpha"}).label(1, "ht", {"p_alpha"}).label(3, "ht", {"p_alpha"});
  m.label(1, "h4", {"g_alpha"}).label(4, "h4", {"g_alpha"});
  return m.d;
}

ModelData no_lane_change_wish() {
  ModelData d = fig3();
  for (auto& l : d.labels)
    l.atoms.erase(std::remove(l.atoms.begin(), l.atoms.end(), "w_alpha"), l.atoms.end());
  return d;
}

ModelData unavoidable_collision() {
  Draft m = flat({"alpha"}, {"hit_from_behind"}, {1, 2, 3, 4});
  m.choice("alpha", 0, {{"h1", "h2"}, {"h3", "h4"}});
  m.label(0, std::nullopt, {"hit_from_behind"});
  return m.d;
}

ModelData avoidable_collision() {
  Draft m = flat({"alpha"}, {"hit_from_behind"}, {1, 2, 3, 4});
  m.choice("alpha", 0, {{"h1", "h2"}, {"h3", "h4"}});
  m.label(0, "h1", {"hit_from_behind"}).label(0, "h2", {"hit_from_behind"});
  return m.d;
}

ModelData reckless_cut_in() {
  Draft m = flat({"alpha"}, {"cut_in", "reckless_cut_in"}, {5, 1});
  m.choice("alpha", 0, {{"h1"}, {"h2"}});
  m.label(1, "h1", {"reckless_cut_in"}).label(2, "h2", {"cut_in"});
  return m.d;
}

ModelData no_cut_in() {
  Draft m = flat({"alpha"}, {"cut_in", "reckless_cut_in"}, {5, 1});
  m.choice("alpha", 0, {{"h1"}, {"h2"}});
  return m.d;
}

ModelData forced_to_proceed() {
  Draft m = flat({"alpha", "beta"}, {"p_alpha", "grow_beta_alpha"}, {2, 1, 2, 1});
  m.choice("alpha", 0, {{"h1", "h2"}, {"h3", "h4"}});
  m.choice("beta", 0, {{"h1", "h3"}, {"h2", "h4"}});
  m.label(0, std::nullopt, {"p_alpha"});
  m.label(0, "h1", {"grow_beta_alpha"}).label(0, "h3", {"grow_beta_alpha"});
  return m.d;
}

ModelData granted_to_one() {
  Draft m = flat({"alpha", "beta"}, {"g_alpha", "g_beta"}, {4, 3, 2, 1});
  m.choice("alpha", 0, {{"h1", "h2"}, {"h3", "h4"}});
  m.choice("beta", 0, {{"h1", "h3"}, {"h2", "h4"}});
  m.label(0, "h1", {"g_alpha"}).label(0, "h2", {"g_beta"}).label(0, "h3", {"g_alpha"});
  return m.d;
}

ModelData prohibition_violated() {
  Draft m = flat({"alpha", "beta"}, {"p_alpha", "g_alpha", "p_beta", "g_beta"}, {5, 6, 1, 2});
  m.choice("alpha", 0, {{"h1", "h2"}, {"h3", "h4"}});
  m.choice("beta", 0, {{"h1", "h3"}, {"h2", "h4"}});
  m.label(1, "h1", {"p_alpha", "g_alpha"}).label(2, "h2", {"p_alpha"});
  return m.d;
}

StitAutomaton t0() {
  return automaton({"q0", "q1", "q2"}, {"K1", "K2"},
                   {{"q0", "K1", "q1", Rational(4)},
                    {"q1", "K1", "q1", Rational(5)},
                    {"q0", "K2", "q2", Rational(3)},
                    {"q2", "K2", "q2", Rational(2)}},
                   {{"q0", {"p"}}, {"q1", {"p"}}});
}

StitAutomaton t0_equal_weights() {
  StitAutomaton t = t0();
  for (auto& tr : t.transitions) tr.weight = Rational(1);
  return t;
}

StitAutomaton merge() {
  return automaton({"q0", "waiting", "merging", "merged"}, {"wait", "go"},
                   {{"q0", "wait", "waiting", Rational(1)},
                    {"waiting", "wait", "waiting", Rational(1)},
                    {"q0", "go", "merging", Rational(5)},
                    {"merging", "go", "merged", Rational(5)},
                    {"merged", "go", "merged", Rational(5)}},
                   {{"q0", {"w_alpha", "p_alpha", "g_alpha"}},
                    {"waiting", {"w_alpha", "g_alpha"}},
                    {"merging", {"w_alpha", "p_alpha"}}});
}

std::vector<Fixture> fixtures() {
  return {
      {"fig1", "two moments, five actions, values 3..8", fig1()},
      {"fig2", "overtaking: stay in lane or pass and return", fig2()},
      {"fig3", "witness for the right-of-way/assertive-driving inference condition", fig3()},
      {"no-lane-change-wish", "fig3 with no wish to change lanes", no_lane_change_wish()},
      {"unavoidable", "every history hits someone from behind", unavoidable_collision()},
      {"avoidable", "only the dominated action hits someone from behind",
       avoidable_collision()},
      {"reckless-cut-in", "the optimal action cuts in recklessly", reckless_cut_in()},
      {"no-cut-in", "nobody cuts in", no_cut_in()},
      {"forced-to-proceed", "alpha cannot avoid proceeding; beta decides on right-of-way",
       forced_to_proceed()},
      {"granted-to-one", "the best joint action grants alpha right-of-way", granted_to_one()},
      {"prohibition-violated", "alpha's optimal action proceeds without right-of-way",
       prohibition_violated()},
      {"t0", "two first actions with bottleneck values 4 and 2", t0()},
      {"t0-equal-weights", "t0 with every weight 1", t0_equal_weights()},
      {"merge", "lane merge: wait forever or go", merge()},
  };
}

}  // namespace deontic::rss
