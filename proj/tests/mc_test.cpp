#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "deontic/automaton.hpp"
#include "deontic/errors.hpp"
#include "deontic/formula.hpp"
#include "deontic/mc.hpp"
#include "deontic/random.hpp"
#include "deontic/rss.hpp"
#include "deontic/tree_model.hpp"
#include "support/oracles.hpp"

using namespace deontic;
using automata::StitAutomaton;
namespace f = deontic::fml;

namespace {

const mc::ActionReport& report(const mc::Verdict& v, const std::string& action) {
  for (const auto& r : v.actions)
    if (r.action == action) return r;
  throw std::logic_error("no action " + action);
}

StitAutomaton with_transitions(std::vector<automata::Transition> ts) {
  StitAutomaton t;
  for (const auto& tr : ts) {
    for (const auto& s : {tr.from, tr.to})
      if (std::find(t.states.begin(), t.states.end(), s) == t.states.end()) t.states.push_back(s);
    if (std::find(t.actions.begin(), t.actions.end(), tr.action) == t.actions.end())
      t.actions.push_back(tr.action);
  }
  t.init = ts.front().from;
  t.transitions = std::move(ts);
  return t;
}

bool has_incoming(const StitAutomaton& t, const std::string& s) {
  return std::any_of(t.transitions.begin(), t.transitions.end(),
                     [&](const auto& tr) { return tr.to == s; });
}

}  // namespace

TEST(CheckOught, T0GloballyP) {
  const auto v = mc::check_ought(rss::t0(), "alpha", plain(parse_formula("G p")));
  EXPECT_TRUE(v.holds);
  EXPECT_FALSE(v.vacuous);
  EXPECT_EQ(v.optimal, std::vector<std::string>{"K1"});
  EXPECT_EQ(report(v, "K1").interval.lo, Rational(4));
  EXPECT_EQ(report(v, "K1").interval.hi, Rational(4));
  EXPECT_EQ(report(v, "K2").interval.lo, Rational(2));
  EXPECT_EQ(report(v, "K2").interval.hi, Rational(2));
  EXPECT_EQ(report(v, "K1").case_taken, mc::Case::Ctls);
  EXPECT_FALSE(report(v, "K2").case_taken);
}

TEST(CheckOught, DstitWithoutRootLabel) {
  StitAutomaton t = rss::t0();
  t.labels.erase("q0");
  const auto v = mc::check_ought(t, "alpha", parse_obligation("[alpha dstit: F p]"));
  EXPECT_TRUE(v.holds) << v.reason;
  EXPECT_EQ(report(v, "K1").case_taken, mc::Case::DstitPositive);
  // p everywhere reachable under K1 is not deliberate when K2 has it too.
  const auto w = mc::check_ought(rss::t0(), "alpha", parse_obligation("[alpha dstit: p]"));
  EXPECT_FALSE(w.holds);
  EXPECT_NE(w.reason.find("every history"), std::string::npos);
}

TEST(CheckOught, EqualWeights) {
  const auto v = mc::check_ought(rss::t0_equal_weights(), "alpha", plain(parse_formula("G p")));
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.optimal, (std::vector<std::string>{"K1", "K2"}));
  EXPECT_EQ(v.failing_action, "K2");
  ASSERT_TRUE(v.counterexample);
  const auto& loop = v.counterexample->loop;
  EXPECT_NE(std::find(loop.begin(), loop.end(), "q2"), loop.end());
  EXPECT_EQ(v.counterexample->formula, "G p");
}

TEST(CheckOught, NegatedDstit) {
  // K1 guarantees G p while K2 violates it, so alpha deliberately sees to it.
  const auto v = mc::check_ought(rss::t0(), "alpha", parse_obligation("![alpha dstit: G p]"));
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(report(v, "K1").case_taken, mc::Case::DstitNegated);
  const auto w = mc::check_ought(rss::t0(), "alpha", parse_obligation("![alpha dstit: G !p]"));
  EXPECT_TRUE(w.holds);
}

TEST(CheckOught, TrueIsAlwaysObligatory) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i)
    EXPECT_TRUE(mc::check_ought(random::automaton(rng), "alpha", plain(f::top())).holds);
}

TEST(CheckOught, Errors) {
  EXPECT_THROW(mc::check_ought(rss::t0(), "alpha", parse_obligation("[beta dstit: p]")),
               UnsupportedError);
  StitAutomaton bad = rss::t0();
  bad.transitions.pop_back();
  EXPECT_THROW(mc::check_ought(bad, "alpha", plain(f::top())), FormatError);
  EXPECT_THROW(mc::check(rss::t0(), parse_ought("O[{alpha, beta} cstit: p]")), UnsupportedError);
}

TEST(CheckOught, TieUsesExactDominance) {
  // K1 values in [1,3], K2 values in [3,5]: every K1 value is at most every
  // K2 value, so K1 is dominated even though the intervals touch.
  const StitAutomaton t = with_transitions({{"q0", "K1", "a", Rational(3)},
                                            {"a", "x", "b", Rational(1)},
                                            {"a", "y", "c", Rational(3)},
                                            {"b", "x", "b", Rational(5)},
                                            {"c", "x", "c", Rational(5)},
                                            {"q0", "K2", "d", Rational(5)},
                                            {"d", "x", "e", Rational(3)},
                                            {"d", "y", "f", Rational(5)},
                                            {"e", "x", "e", Rational(5)},
                                            {"f", "x", "f", Rational(5)}});
  const auto v = mc::check_ought(t, "alpha", plain(f::top()));
  EXPECT_EQ(report(v, "K1").interval.lo, Rational(1));
  EXPECT_EQ(report(v, "K1").interval.hi, Rational(3));
  EXPECT_EQ(report(v, "K2").interval.lo, Rational(3));
  EXPECT_EQ(report(v, "K2").interval.hi, Rational(5));
  EXPECT_EQ(v.optimal, std::vector<std::string>{"K2"});
  EXPECT_EQ(oracle::ought_on_lassos(t, "alpha", plain(f::top())).optimal,
            std::set<std::string>{"K2"});
}

TEST(IntervalDominance, Cases) {
  auto iv = [](long long lo, long long hi) {
    return automata::ValueInterval{"", Rational(lo), Rational(hi)};
  };
  EXPECT_TRUE(mc::interval_dominated(iv(1, 3), iv(3, 5)));
  EXPECT_TRUE(mc::interval_dominated(iv(1, 2), iv(4, 4)));
  EXPECT_FALSE(mc::interval_dominated(iv(2, 2), iv(2, 2)));
  EXPECT_FALSE(mc::interval_dominated(iv(1, 4), iv(3, 5)));
  EXPECT_FALSE(mc::interval_dominated(iv(3, 5), iv(1, 3)));
}

TEST(Conditional, TrueConditionMatchesPlain) {
  const Obligation a = plain(parse_formula("G p"));
  const auto plain_v = mc::check_ought(rss::t0(), "alpha", a);
  const auto cond_v = mc::check_conditional_ought(rss::t0(), "alpha", a, plain(f::top()));
  EXPECT_EQ(plain_v.holds, cond_v.holds);
  EXPECT_EQ(cond_v.retained, plain_v.optimal);
  EXPECT_FALSE(cond_v.vacuous);
}

TEST(Conditional, UnmetConditionIsVacuous) {
  const auto v = mc::check_conditional_ought(rss::t0(), "alpha", plain(f::bottom()),
                                             plain(parse_formula("G !p")));
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(v.vacuous);
  EXPECT_TRUE(v.retained.empty());
  EXPECT_EQ(report(v, "K1").meets_condition, false);
}

TEST(Conditional, MergeWaitingIsNotOptimal) {
  const StitAutomaton t = rss::merge();
  for (unsigned n : {0u, 1u, 2u, 3u}) {
    const OughtStatement o = rss::rss6("alpha", n);
    const auto v = mc::check(t, o);
    EXPECT_TRUE(v.holds) << n << ": " << v.reason;
    EXPECT_FALSE(v.vacuous);
    EXPECT_EQ(v.optimal, std::vector<std::string>{"go"});
    // The same question on explicit unrollings deep enough for the horizon.
    const tree::ExplicitStitModel m(automata::unroll(t, n + 3));
    const auto h = m.history_id(0);
    EXPECT_EQ(tree::sat_statement(m, 0, h, o), v.holds) << n;
    EXPECT_EQ(oracle::ought_on_lassos(t, "alpha", o.body(), o.condition()).holds, v.holds);
  }
}

TEST(Verdict, IntervalsMatchLassoValues) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const StitAutomaton t = random::automaton(rng);
    const auto v = mc::check_ought(t, "alpha", plain(f::top()));
    const auto runs = oracle::lassos(t, t.init, t.states.size(), t.states.size());
    for (const auto& r : v.actions) {
      EXPECT_LE(r.interval.lo, r.interval.hi);
      std::optional<Rational> lo, hi;
      for (const auto& run : runs)
        if (run.first_action == r.action) {
          lo = lo ? std::min(*lo, run.value) : run.value;
          hi = hi ? std::max(*hi, run.value) : run.value;
        }
      ASSERT_TRUE(lo);
      EXPECT_EQ(r.interval.lo, *lo) << i << " " << r.action;
      EXPECT_EQ(r.interval.hi, *hi) << i << " " << r.action;
    }
  }
}

TEST(Verdict, AddingDominatedActionChangesNothing) {
  std::mt19937_64 rng(12);
  random::FormulaBounds fb;
  fb.bounded = true;
  for (int i = 0; i < 100; ++i) {
    // A fresh initial state nothing returns to, so only the root sees the
    // extra action.
    StitAutomaton t = random::automaton(rng);
    t.states.push_back("start");
    t.labels["start"] = t.label(t.init);
    for (const auto* tr : StitAutomaton(t).outgoing(t.init))
      t.transitions.push_back({"start", tr->action, tr->to, tr->weight});
    t.init = "start";
    ASSERT_FALSE(has_incoming(t, t.init));
    StitAutomaton worse = t;
    worse.states.push_back("sink");
    worse.actions.push_back("Kbad");
    worse.transitions.push_back({t.init, "Kbad", "sink", Rational(0)});
    worse.transitions.push_back({"sink", "Kbad", "sink", Rational(0)});
    const Obligation a = plain(random::formula(rng, fb));
    EXPECT_EQ(mc::check_ought(t, "alpha", a).holds, mc::check_ought(worse, "alpha", a).holds)
        << render(a);
  }
}

TEST(Oracle, SmallEquivalence) {
  std::mt19937_64 rng(17);
  random::FormulaBounds fb;
  fb.quantifiers = true;
  fb.bounded = true;
  for (int i = 0; i < 150; ++i) {
    const StitAutomaton t = random::automaton(rng);
    const Obligation a = random::obligation(rng, {"alpha"}, 2, fb);
    const auto v = mc::check_ought(t, "alpha", a);
    const auto o = oracle::ought_on_lassos(t, "alpha", a);
    ASSERT_EQ(v.holds, o.holds) << i << ": " << render(a);
    EXPECT_EQ(std::set<std::string>(v.optimal.begin(), v.optimal.end()), o.optimal);
    if (i % 3 == 0) {
      const Obligation b = random::obligation(rng, {"alpha"}, 1, fb);
      const auto cv = mc::check_conditional_ought(t, "alpha", a, b);
      const auto co = oracle::ought_on_lassos(t, "alpha", a, b);
      ASSERT_EQ(cv.holds, co.holds) << i << ": " << render(a) << " / " << render(b);
      EXPECT_EQ(cv.vacuous, co.vacuous);
    }
  }
}
