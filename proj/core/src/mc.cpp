#include "deontic/mc.hpp"

#include <map>

#include "deontic/errors.hpp"

namespace deontic::mc {

std::string to_string(Case c) {
  switch (c) {
    case Case::Ctls: return "ctls";
    case Case::DstitPositive: return "dstit_positive";
    case Case::DstitNegated: return "dstit_negated";
  }
  return "?";
}

bool interval_dominated(const automata::ValueInterval& k, const automata::ValueInterval& k2) {
  return k.hi <= k2.lo && !(k2.hi <= k.lo);
}

namespace {

using automata::StitAutomaton;
using ctlstar::Counterexample;

Case case_of(const Obligation& a) {
  Obligation cur = a;
  bool negated = false;
  while (cur.kind() == Obligation::Kind::Negated) {
    negated = !negated;
    cur = cur.inner();
  }
  if (cur.kind() == Obligation::Kind::Plain) return Case::Ctls;
  return negated ? Case::DstitNegated : Case::DstitPositive;
}

// Per first action: is K inside |A|_root, does K meet |A|_root, and a
// lasso explaining a "not inside" answer when one exists.
struct Extension {
  std::vector<bool> inside;
  std::vector<bool> meets;
  std::vector<std::optional<Counterexample>> witness;
  bool everything = false;  // |A|_root = H_root
  std::string why_everything;
};

struct Branch {
  std::string action;
  automata::PrimedAutomaton primed;
  ctlstar::TransitionSystem ts;
  automata::ValueInterval interval;
};

class Checker {
 public:
  Checker(const StitAutomaton& t, std::string agent) : t_(t), agent_(std::move(agent)) {
    automata::require_valid(t_);
    if (t_.accumulation != automata::Accumulation::Min)
      throw UnsupportedError("only min accumulation is supported");
    full_ = ctlstar::strip_weights(t_);
    for (const auto& k : t_.first_actions()) {
      Branch b;
      b.action = k;
      const StitAutomaton restricted = automata::restrict_first_action(t_, k);
      b.primed = automata::prime_automaton(restricted, t_);
      // Values come from the primed automaton: the restricted one would also
      // forbid other actions whenever an execution returns to the root state.
      b.interval = automata::extremal_values(b.primed.automaton);
      b.interval.action = k;
      b.ts = ctlstar::strip_weights(b.primed.automaton);
      branches_.push_back(std::move(b));
    }
  }

  Verdict skeleton() const {
    Verdict v;
    for (const auto& b : branches_) {
      ActionReport r;
      r.action = b.action;
      r.interval = b.interval;
      r.optimal = true;
      for (const auto& other : branches_)
        if (&other != &b && interval_dominated(b.interval, other.interval)) r.optimal = false;
      if (r.optimal) v.optimal.push_back(b.action);
      v.actions.push_back(std::move(r));
    }
    return v;
  }

  Extension extension(const Obligation& a) {
    switch (a.kind()) {
      case Obligation::Kind::Plain:
        return plain(a.formula());
      case Obligation::Kind::Dstit: {
        if (a.agent() != agent_)
          throw UnsupportedError("the automaton models agent '" + agent_ + "' only, not '" +
                                 a.agent() + "'");
        Extension body = extension(a.inner());
        Extension e;
        e.everything = !branches_.empty();
        for (std::size_t k = 0; k < branches_.size(); ++k) {
          const bool in = body.inside[k] && !body.everything;
          e.inside.push_back(in);
          e.meets.push_back(in);
          e.witness.push_back(body.everything ? std::nullopt : body.witness[k]);
          e.everything = e.everything && in;
        }
        e.why_everything = body.why_everything;
        return e;
      }
      case Obligation::Kind::Negated: {
        Extension inner = extension(a.inner());
        Extension e;
        e.everything = !branches_.empty();
        for (std::size_t k = 0; k < branches_.size(); ++k) {
          e.inside.push_back(!inner.meets[k]);
          e.meets.push_back(!inner.inside[k]);
          e.witness.push_back(std::nullopt);
          e.everything = e.everything && e.inside.back();
        }
        return e;
      }
    }
    throw UnsupportedError("unknown obligation kind");
  }

  const std::vector<Branch>& branches() const { return branches_; }

 private:
  Extension plain(const Formula& phi) {
    // State subformulas are decided on the full automaton: at the root they
    // quantify over every history, later on a primed state behaves like
    // the state it copies.
    const ctlstar::Abstraction abs = ctlstar::abstract_state_subformulas(full_, phi);
    Extension e;
    for (const auto& b : branches_) {
      const auto ts = ctlstar::with_atoms(b.ts, abs, b.primed.origin);
      auto all = ctlstar::check_universal(ts, abs.formula);
      const auto none = ctlstar::check_universal(ts, fml::Not(abs.formula));
      if (all.counterexample) {
        auto& cx = *all.counterexample;
        for (auto& s : cx.stem) s = b.primed.origin.at(s);
        for (auto& s : cx.loop) s = b.primed.origin.at(s);
        cx.formula = render(phi);
      }
      e.inside.push_back(all.holds);
      e.meets.push_back(!none.holds);
      e.witness.push_back(std::move(all.counterexample));
    }
    e.everything =
        ctlstar::check_universal(ctlstar::with_atoms(full_, abs), abs.formula).holds;
    if (e.everything) e.why_everything = render(phi) + " holds on every history";
    return e;
  }

  const StitAutomaton& t_;
  std::string agent_;
  ctlstar::TransitionSystem full_;
  std::vector<Branch> branches_;
};

std::string failure_reason(Case c, const Extension& ext) {
  switch (c) {
    case Case::Ctls:
      return "an optimal action has an execution violating the obligation";
    case Case::DstitPositive:
      return ext.why_everything.empty()
                 ? "an optimal action does not guarantee the dstit body"
                 : ext.why_everything + ", so no action deliberately sees to it";
    case Case::DstitNegated:
      return "an optimal action guarantees the body although some history violates it, so "
             "the agent deliberately sees to it";
  }
  return {};
}

}  // namespace

Verdict check_ought(const StitAutomaton& t, const std::string& agent, const Obligation& a) {
  const Obligation norm = rewrite_dstit_idempotent(a);
  Checker c(t, agent);
  Verdict v = c.skeleton();
  const Extension ext = c.extension(norm);
  const Case kind = case_of(norm);
  v.holds = true;
  for (std::size_t k = 0; k < v.actions.size(); ++k) {
    auto& r = v.actions[k];
    if (!r.optimal) continue;
    r.case_taken = kind;
    r.guarantees = ext.inside[k];
    r.counterexample = ext.witness[k];
    if (!ext.inside[k] && v.holds) {
      v.holds = false;
      v.failing_action = r.action;
      v.counterexample = ext.witness[k];
      v.reason = failure_reason(kind, ext);
    }
  }
  return v;
}

Verdict check_conditional_ought(const StitAutomaton& t, const std::string& agent,
                                const Obligation& a, const Obligation& b) {
  const Obligation na = rewrite_dstit_idempotent(a);
  const Obligation nb = rewrite_dstit_idempotent(b);
  Checker c(t, agent);
  Verdict v = c.skeleton();
  const Extension cond = c.extension(nb);
  const Extension ext = c.extension(na);
  const Case kind = case_of(na);
  v.holds = true;
  for (std::size_t k = 0; k < v.actions.size(); ++k) {
    auto& r = v.actions[k];
    if (!r.optimal) continue;
    r.meets_condition = cond.inside[k];
    if (!cond.inside[k]) continue;
    v.retained.push_back(r.action);
    r.case_taken = kind;
    r.guarantees = ext.inside[k];
    r.counterexample = ext.witness[k];
    if (!ext.inside[k] && v.holds) {
      v.holds = false;
      v.failing_action = r.action;
      v.counterexample = ext.witness[k];
      v.reason = failure_reason(kind, ext);
    }
  }
  if (v.retained.empty()) {
    v.holds = true;
    v.vacuous = true;
    v.reason = "no optimal action guarantees the condition";
  }
  return v;
}

Verdict check(const StitAutomaton& t, const OughtStatement& o) {
  if (o.is_group()) throw UnsupportedError("group oughts are checked on explicit models only");
  if (o.condition()) return check_conditional_ought(t, o.agents().front(), o.body(), *o.condition());
  return check_ought(t, o.agents().front(), o.body());
}

}  // namespace deontic::mc
