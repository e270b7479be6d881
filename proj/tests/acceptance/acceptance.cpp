// One PASS/FAIL line per acceptance criterion. Exit status 0 iff all pass.
//
// Tolerances: every comparison is exact (rational arithmetic, set
// equality) except criterion 10, which allows a factor of 2 over the
// linear extrapolation from m = 2, 3. Time limits are wall-clock seconds.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "deontic/automaton.hpp"
#include "deontic/errors.hpp"
#include "deontic/formula.hpp"
#include "deontic/mc.hpp"
#include "deontic/properties.hpp"
#include "deontic/random.hpp"
#include "deontic/rss.hpp"
#include "deontic/tree_model.hpp"
#include "oracles.hpp"

using namespace deontic;
using automata::StitAutomaton;
using tree::Evaluator;
using tree::ExplicitStitModel;
namespace f = deontic::fml;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects named exact claims; the first failures are kept for the report.
class Claims {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (failures_.size() < 3) failures_.push_back(what);
  }
  std::size_t total() const { return total_; }
  std::size_t failed() const { return failed_; }

  Outcome outcome(const std::string& unit) const {
    std::ostringstream s;
    s << (total_ - failed_) << "/" << total_ << " " << unit;
    for (const auto& x : failures_) s << "; failed: " << x;
    return {failed_ == 0, s.str()};
  }

 private:
  std::size_t total_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

using Ids = std::vector<std::string>;

Ids ids(const ExplicitStitModel& m, const tree::HistorySet& s) { return m.to_ids(s); }

std::vector<Ids> ids(const ExplicitStitModel& m, const std::vector<tree::HistorySet>& ss) {
  std::vector<Ids> out;
  for (const auto& s : ss) out.push_back(m.to_ids(s));
  std::sort(out.begin(), out.end());
  return out;
}

tree::HistorySet action_containing(Evaluator& ev, int m, const std::string& h) {
  const auto i = ev.model().history_index(h);
  for (const auto& k : ev.group_choice({"alpha"}, m))
    if (k.test(i)) return k;
  throw std::logic_error("no action contains " + h);
}

bool holds_at(const tree::ModelData& d, int m, const OughtStatement& o) {
  const ExplicitStitModel model(d);
  return tree::sat_statement(model, m, model.to_ids(model.histories_through(m)).front(), o);
}

// 1 -------------------------------------------------------------------
Outcome fig1_claims() {
  const ExplicitStitModel m(rss::fig1());
  Evaluator ev(m);
  const int root = 0, later = rss::fig1_later;
  const Formula a = f::atom("A");
  Claims c;
  c.expect(ids(m, m.histories_through(root)) == Ids{"h1", "h2", "h3", "h4", "h5", "h6"} &&
               ids(m, m.histories_through(later)) == Ids{"h1", "h2", "h3", "h4"},
           "H_m and H_m' memberships");
  const auto k2 = action_containing(ev, root, "h5");
  const auto k4 = action_containing(ev, later, "h2");
  const auto k5 = action_containing(ev, later, "h3");
  c.expect(ids(m, k2) == Ids{"h5", "h6"} && ids(m, k4) == Ids{"h2"}, "K2 = {h5,h6}, K4 = {h2}");
  c.expect(ev.sat(root, "h5", f::cstit("alpha", plain(a))), "m/h5 |= [alpha cstit: A]");
  c.expect(!ev.sat(root, "h1", f::cstit("alpha", plain(a))), "m/h1 |/= [alpha cstit: A]");
  c.expect(ids(m, ev.optimal_actions({"alpha"}, root).actions) == std::vector<Ids>{ids(m, k2)},
           "Optimal_m = {K2}");
  c.expect(ev.sat(root, "h5", OughtStatement("alpha", plain(a))), "m/h5 |= O[alpha cstit: A]");
  std::set<std::string> atoms(m.data().atoms.begin(), m.data().atoms.end());
  for (const auto& l : m.data().labels) atoms.insert(l.atoms.begin(), l.atoms.end());
  bool atomic = false;
  for (const auto& x : atoms)
    atomic = atomic || ev.ought_holds({"alpha"}, later, f::atom(x)) ||
             ev.ought_holds({"alpha"}, later, f::Not(f::atom(x)));
  c.expect(ids(m, ev.optimal_actions({"alpha"}, later).actions) ==
                   ids(m, std::vector<tree::HistorySet>{k4, k5}) &&
               !atomic,
           "Optimal_m' = {K4, K5}, no atomic obligation");
  c.expect(ev.sat(root, "h5", f::dstit("alpha", plain(a))) &&
               ids(m, ev.extension(root, a)) == Ids{"h1", "h2", "h3", "h5", "h6"},
           "m/h5 |= [alpha dstit: A], |A|_m = {h1,h2,h3,h5,h6}");
  return c.outcome("claims");
}

// 2 -------------------------------------------------------------------
Outcome fig2_suite() {
  const auto d = rss::fig2();
  const int root = 0, later = rss::fig2_later;
  Claims c;
  c.expect(holds_at(d, root, parse_ought("O[alpha cstit: G !p & chi]")),
           "O[alpha cstit: psi & chi] at m");
  c.expect(holds_at(d, later, parse_ought("O[alpha cstit: F[0:2] p]")),
           "O[alpha cstit: phi2] at m'");
  c.expect(!holds_at(d, later, parse_ought("O[alpha cstit: F[0:1] p]")),
           "not O[alpha cstit: phi1] at m'");
  c.expect(!holds_at(d, root, parse_ought("O[alpha cstit: E F[1:2] p]")),
           "not O[alpha cstit: E F[1:2] p] at m");
  return c.outcome("claims");
}

// 3 -------------------------------------------------------------------
Outcome theorem_suites() {
  const std::size_t models = 1000;
  random::ModelBounds b;
  b.max_depth = 3;
  b.max_histories = 6;
  b.max_agents = 2;
  Outcome o;
  std::ostringstream s;
  for (const auto& r : props::all_suites(20240601, models, b)) {
    const bool ok = r.violations == 0 && r.models >= models;
    o.pass = o.pass && ok;
    s << r.name << " " << r.violations << "/" << r.checks;
    if (!ok) s << " (" << r.first_violation << ")";
    s << "; ";
  }
  o.detail = s.str() + "violations/checks over " + std::to_string(models) + " models each";
  return o;
}

// 4 -------------------------------------------------------------------
Outcome rss1_dichotomy() {
  const auto r = rss::rss1("alpha", f::atom("hit_from_behind"));
  const auto d = rss::unavoidable_collision();
  Claims c;
  c.expect(!holds_at(d, 0, r.naive), "naive rule fails");
  c.expect(holds_at(d, 0, r.refined), "refined rule holds");
  return c.outcome("claims");
}

// 5 -------------------------------------------------------------------
Outcome oracle_equivalence() {
  std::mt19937_64 rng(5005);
  random::AutomatonBounds ab;
  ab.max_states = 6;
  ab.max_first_actions = 3;
  ab.max_weight = 5;
  random::FormulaBounds fb;
  fb.max_depth = 3;
  fb.quantifiers = true;
  fb.bounded = true;
  fb.max_horizon = 3;
  Claims c;
  std::size_t conditional = 0, held = 0;
  for (int i = 0; i < 500; ++i) {
    const StitAutomaton t = random::automaton(rng, ab);
    const Obligation a = random::obligation(rng, {"alpha"}, static_cast<unsigned>(i % 3), fb);
    const auto v = mc::check_ought(t, "alpha", a);
    const auto o = oracle::ought_on_lassos(t, "alpha", a);
    held += o.holds ? 1 : 0;
    c.expect(v.holds == o.holds &&
                 std::set<std::string>(v.optimal.begin(), v.optimal.end()) == o.optimal,
             "pair " + std::to_string(i) + ": " + render(a));
    if (i % 4 == 0) {
      const Obligation b = random::obligation(rng, {"alpha"}, 1, fb);
      const auto cv = mc::check_conditional_ought(t, "alpha", a, b);
      const auto co = oracle::ought_on_lassos(t, "alpha", a, b);
      ++conditional;
      c.expect(cv.holds == co.holds && cv.vacuous == co.vacuous,
               "conditional pair " + std::to_string(i) + ": " + render(a) + " / " + render(b));
    }
  }
  auto out = c.outcome("agreements");
  out.detail += " (" + std::to_string(conditional) + " of them conditional; " +
                std::to_string(held) + " of 500 plain oughts hold)";
  return out;
}

// 6 -------------------------------------------------------------------
Outcome extremal_values() {
  std::mt19937_64 rng(6006);
  Claims c;
  for (int i = 0; i < 500; ++i) {
    const StitAutomaton t = random::automaton(rng);
    const auto v = automata::extremal_values(t);
    const auto [lo, hi] = oracle::value_range(t);
    c.expect(v.lo == lo && v.hi == hi, "automaton " + std::to_string(i));
  }
  // The heaviest reachable transition (10) is not the best bottleneck value.
  StitAutomaton trap;
  trap.states = {"q0", "q1", "q2"};
  trap.init = "q0";
  trap.actions = {"a"};
  trap.transitions = {{"q0", "a", "q1", Rational(10)},
                      {"q1", "a", "q1", Rational(1)},
                      {"q0", "a", "q2", Rational(2)},
                      {"q2", "a", "q2", Rational(3)}};
  Rational heaviest = trap.transitions.front().weight;
  for (const auto& tr : trap.transitions) heaviest = std::max(heaviest, tr.weight);
  const auto v = automata::extremal_values(trap);
  c.expect(v.hi == Rational(2) && heaviest == Rational(10) && v.hi != heaviest,
           "bottleneck regression u = 2");
  return c.outcome("exact matches");
}

// 7 -------------------------------------------------------------------
Outcome unroll_validity() {
  std::mt19937_64 rng(7007);
  Claims c;
  for (int i = 0; i < 200; ++i) {
    const StitAutomaton t = random::automaton(rng);
    for (unsigned d = 1; d <= 4; ++d) {
      const ExplicitStitModel m(automata::unroll(t, d));
      const auto v = tree::validate_model(m);
      c.expect(v.empty(), "automaton " + std::to_string(i) + " depth " + std::to_string(d) +
                              (v.empty() ? "" : ": " + tree::describe(v.front())));
    }
  }
  return c.outcome("valid unrollings (200 automata x depth 1..4)");
}

// 8 -------------------------------------------------------------------
Outcome primed_traces() {
  std::mt19937_64 rng(8008);
  Claims c;
  for (int i = 0; i < 200; ++i) {
    const StitAutomaton t = random::automaton(rng);
    for (const auto& k : t.first_actions()) {
      const auto p = automata::prime_automaton(automata::restrict_first_action(t, k), t);
      c.expect(oracle::traces(p.automaton, 5) == oracle::traces(t, 5, k),
               "automaton " + std::to_string(i) + " action " + k);
    }
  }
  return c.outcome("first actions with equal depth-5 traces (200 automata)");
}

// 9 -------------------------------------------------------------------
Outcome fig3_inference() {
  const auto d = rss::fig3();
  const ExplicitStitModel m(d);
  Claims c;
  c.expect(tree::check_inference_condition(m, "alpha", 0, rss::granted("alpha"),
                                           rss::proceeds("alpha"))
               .holds,
           "inference condition at m");
  c.expect(holds_at(d, rss::fig3_later, rss::rss3({"alpha"}).prohib[0]),
           "right-of-way prohibition at m'");
  for (unsigned n = 0; n <= 3; ++n)
    c.expect(holds_at(d, 0, rss::rss6("alpha", n)), "lane-change rule N=" + std::to_string(n));
  return c.outcome("claims");
}

// 10 ------------------------------------------------------------------
double seconds_per_check(unsigned first_actions, const Obligation& a) {
  const StitAutomaton t = random::fan(first_actions);
  double best = 1e9;
  for (int rep = 0; rep < 5; ++rep) {
    const auto start = Clock::now();
    std::size_t calls = 0;
    do {
      (void)mc::check_ought(t, "alpha", a);
      ++calls;
    } while (seconds_since(start) < 0.05);
    best = std::min(best, seconds_since(start) / static_cast<double>(calls));
  }
  return best;
}

Outcome complexity_shape() {
  const Obligation a = plain(parse_formula("G (p -> F q)"));
  std::vector<double> t(11, 0);
  for (unsigned m = 2; m <= 10; ++m) t[m] = seconds_per_check(m, a);
  const double slope = t[3] - t[2];
  Outcome o;
  std::ostringstream s;
  s.precision(3);
  for (unsigned m = 2; m <= 10; ++m) {
    const double linear = t[2] + slope * (m - 2.0);
    const double ratio = t[m] / linear;
    o.pass = o.pass && linear > 0 && ratio <= 2.0;
    s << "m=" << m << " " << t[m] * 1e3 << "ms x" << ratio << (m < 10 ? ", " : "");
  }
  o.detail = s.str() + " (ratio to linear extrapolation, limit 2)";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0: no time limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  set_warning_handler([](std::string_view) {});
  const std::vector<Criterion> criteria = {
      {1, "fig1 claims", 1, fig1_claims},
      {2, "fig2 obligations", 1, fig2_suite},
      {3, "theorem suites", 60, theorem_suites},
      {4, "rear-end rule dichotomy", 0, rss1_dichotomy},
      {5, "model checker vs lasso oracle", 120, oracle_equivalence},
      {6, "extremal values vs lasso oracle", 0, extremal_values},
      {7, "unrolled models are valid", 0, unroll_validity},
      {8, "primed automaton traces", 0, primed_traces},
      {9, "fig3 inference and rules", 0, fig3_inference},
      {10, "linear growth in first actions", 0, complexity_shape},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double took = seconds_since(start);
    std::string timing = std::to_string(took).substr(0, 6) + " s";
    if (c.limit_s > 0) {
      timing += " (limit " + std::to_string(static_cast<int>(c.limit_s)) + " s)";
      if (took >= c.limit_s) o.pass = false;
    }
    if (!o.pass) ++failed;
    std::printf("%s  %2d  %-34s %s  [%s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
