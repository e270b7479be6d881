#include <algorithm>

#include "deontic/errors.hpp"
#include "deontic/tree_model.hpp"

namespace deontic::tree {

Evaluator::Evaluator(const ExplicitStitModel& model) : model_(&model) {}

HistorySet Evaluator::extension(int m, const Formula& f) {
  return cached(model_->moment_index(m), f);
}

HistorySet Evaluator::cached(std::size_t m, const Formula& f) {
  const auto key = std::make_pair(f.identity(), m);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second.second;
  HistorySet result = compute(m, f);
  cache_.emplace(key, std::make_pair(f, result));
  return result;
}

bool Evaluator::at(std::size_t h, std::size_t pos, const Formula& f) {
  const auto& path = model_->path(h);
  const int mid = path[std::min(pos, path.size() - 1)];
  return cached(model_->moment_index(mid), f).test(h);
}

HistorySet Evaluator::compute(std::size_t mi, const Formula& f) {
  const ExplicitStitModel& M = *model_;
  const int mid = M.moment_id(mi);
  const HistorySet hm = M.histories_through(mid);
  const std::size_t d = M.depth(mid);
  HistorySet out = M.empty_set();

  auto each = [&](auto&& pred) {
    for (auto h = hm.find_first(); h != HistorySet::npos; h = hm.find_next(h))
      if (pred(h)) out.set(h);
    return out;
  };
  auto last = [&](std::size_t h) { return M.path(h).size() - 1; };

  switch (f.op()) {
    case Op::True:
      return hm;
    case Op::False:
      return out;
    case Op::Atom: {
      if (!M.knows_atom(f.name()) && warned_.emplace(f.name(), true).second)
        warn("atom '" + f.name() + "' does not occur in the model; treated as false");
      return each([&](std::size_t h) { return M.has_atom(mid, h, f.name()); });
    }
    case Op::Not:
      return hm - cached(mi, f.child());
    case Op::And:
      return cached(mi, f.left()) & cached(mi, f.right());
    case Op::Or:
      return cached(mi, f.left()) | cached(mi, f.right());
    case Op::Implies:
      return (hm - cached(mi, f.left())) | cached(mi, f.right());
    case Op::Next:
      return each([&](std::size_t h) { return at(h, d + 1, f.child()); });
    case Op::NextPow:
      return each([&](std::size_t h) { return at(h, d + f.lo(), f.child()); });
    case Op::Eventually:
      return each([&](std::size_t h) {
        for (std::size_t j = d; j <= last(h); ++j)
          if (at(h, j, f.child())) return true;
        return false;
      });
    case Op::Always:
      return each([&](std::size_t h) {
        for (std::size_t j = d; j <= last(h); ++j)
          if (!at(h, j, f.child())) return false;
        return true;
      });
    case Op::EventuallyBounded:
      return each([&](std::size_t h) {
        for (std::size_t t = f.lo(); t <= f.hi(); ++t) {
          if (at(h, d + t, f.child())) return true;
          if (d + t >= last(h)) break;  // every later position repeats the leaf
        }
        return false;
      });
    case Op::Until:
      return each([&](std::size_t h) {
        for (std::size_t j = d; j <= last(h); ++j) {
          if (at(h, j, f.right())) return true;
          if (!at(h, j, f.left())) return false;
        }
        return false;
      });
    case Op::Release:
      return each([&](std::size_t h) {
        for (std::size_t j = d; j <= last(h); ++j) {
          if (!at(h, j, f.right())) return false;
          if (at(h, j, f.left())) return true;
        }
        return true;
      });
    case Op::BoundedRelease:
      return each([&](std::size_t h) {
        for (std::size_t k = 0;; ++k) {
          if (at(h, d + k, f.left())) return true;
          if (k == f.lo()) return at(h, d + k, f.right());
          if (!at(h, d + k, f.right())) return false;
        }
      });
    case Op::ForallPaths:
      return hm.is_subset_of(cached(mi, f.child())) ? hm : out;
    case Op::ExistsPaths:
      return (hm & cached(mi, f.child())).any() ? hm : out;
    case Op::Cstit:
    case Op::Dstit: {
      const HistorySet body = cached(mi, f.child());
      if (f.op() == Op::Dstit && body == hm) return out;
      for (const auto& k : M.choice(f.name(), mid))
        if (k.is_subset_of(body)) out |= k;
      return out;
    }
  }
  return out;
}

bool Evaluator::sat(int m, const std::string& h, const Formula& f) {
  const std::size_t hi = model_->history_index(h);
  const HistorySet hm = model_->histories_through(m);
  if (!hm.test(hi))
    throw LookupError("history '" + h + "' does not pass through moment " + std::to_string(m));
  return extension(m, f).test(hi);
}

bool Evaluator::sat(int m, const std::string& h, const OughtStatement& o) {
  const std::size_t hi = model_->history_index(h);
  if (!model_->histories_through(m).test(hi))
    throw LookupError("history '" + h + "' does not pass through moment " + std::to_string(m));
  std::optional<Formula> cond;
  if (o.condition()) cond = o.condition()->formula();
  return ought_holds(o.agents(), m, o.body().formula(), cond);
}

bool Evaluator::sat(int m, const std::string& h, const Statement& s) {
  return std::visit([&](const auto& x) { return sat(m, h, x); }, s);
}

std::vector<HistorySet> Evaluator::cells(const std::vector<std::string>& agents, std::size_t mi) {
  const int mid = model_->moment_id(mi);
  std::vector<HistorySet> acc{model_->histories_through(mid)};
  for (const auto& a : agents) {
    std::vector<HistorySet> next;
    for (const auto& partial : acc)
      for (const auto& k : model_->choice(a, mid)) {
        HistorySet s = partial & k;
        if (s.any()) next.push_back(std::move(s));
      }
    acc = std::move(next);
  }
  return acc;
}

std::vector<HistorySet> Evaluator::group_choice(const std::vector<std::string>& agents, int m) {
  for (const auto& a : agents)
    if (!model_->has_agent(a)) throw LookupError("unknown agent '" + a + "'");
  return cells(agents, model_->moment_index(m));
}

std::vector<HistorySet> Evaluator::background_states(const std::vector<std::string>& agents,
                                                     int m) {
  for (const auto& a : agents)
    if (!model_->has_agent(a)) throw LookupError("unknown agent '" + a + "'");
  std::vector<std::string> others;
  for (const auto& a : model_->agents())
    if (std::find(agents.begin(), agents.end(), a) == agents.end()) others.push_back(a);
  return cells(others, model_->moment_index(m));
}

bool weakly_dominated(const ExplicitStitModel& m, const HistorySet& k, const HistorySet& k2,
                      const std::vector<HistorySet>& states) {
  for (const auto& s : states) {
    const HistorySet a = k & s;
    const HistorySet b = k2 & s;
    if (a.none() || b.none()) continue;
    std::optional<Rational> hi;
    for (auto h = a.find_first(); h != HistorySet::npos; h = a.find_next(h))
      if (!hi || m.value(h) > *hi) hi = m.value(h);
    for (auto h = b.find_first(); h != HistorySet::npos; h = b.find_next(h))
      if (m.value(h) < *hi) return false;
  }
  return true;
}

bool strictly_dominated(const ExplicitStitModel& m, const HistorySet& k, const HistorySet& k2,
                        const std::vector<HistorySet>& states) {
  return weakly_dominated(m, k, k2, states) && !weakly_dominated(m, k2, k, states);
}

ActionSet Evaluator::optimal_actions(const std::vector<std::string>& agents, int m,
                                     const std::optional<Formula>& condition) {
  ActionSet result{m, agents, {}};
  const auto choices = group_choice(agents, m);
  const auto states = background_states(agents, m);
  HistorySet scope = model_->histories_through(m);
  if (condition) {
    scope = extension(m, *condition);
    if (scope.none())
      throw Error("condition unsatisfiable at moment " + std::to_string(m));
  }
  std::vector<HistorySet> restricted;
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    HistorySet r = choices[i] & scope;
    if (r.none()) continue;
    restricted.push_back(std::move(r));
    candidates.push_back(i);
  }
  for (std::size_t i = 0; i < restricted.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < restricted.size() && !dominated; ++j)
      dominated = i != j && strictly_dominated(*model_, restricted[i], restricted[j], states);
    if (!dominated) result.actions.push_back(choices[candidates[i]]);
  }
  return result;
}

bool Evaluator::ought_holds(const std::vector<std::string>& agents, int m, const Formula& body,
                            const std::optional<Formula>& condition) {
  if (condition && extension(m, *condition).none()) return true;
  const HistorySet target = extension(m, body);
  for (const auto& k : optimal_actions(agents, m, condition).actions)
    if (!k.is_subset_of(target)) return false;
  return true;
}

// ------------------------------------------------------------- wrappers

HistorySet histories_through(const ExplicitStitModel& m, int moment) {
  return m.histories_through(moment);
}

bool sat_path(const ExplicitStitModel& m, int moment, const std::string& h, const Formula& f) {
  if (!is_pure(f)) throw UnsupportedError("sat_path takes pure CTL* formulas; use sat_statement");
  return Evaluator(m).sat(moment, h, f);
}

HistorySet extension(const ExplicitStitModel& m, int moment, const Obligation& a) {
  return Evaluator(m).extension(moment, a);
}

bool sat_statement(const ExplicitStitModel& m, int moment, const std::string& h,
                   const Statement& s) {
  return Evaluator(m).sat(moment, h, s);
}

ActionSet optimal_actions(const ExplicitStitModel& m, const std::string& agent, int moment,
                          const std::optional<Obligation>& condition) {
  return optimal_actions(m, std::vector<std::string>{agent}, moment, condition);
}

ActionSet optimal_actions(const ExplicitStitModel& m, const std::vector<std::string>& agents,
                          int moment, const std::optional<Obligation>& condition) {
  std::optional<Formula> cond;
  if (condition) cond = condition->formula();
  return Evaluator(m).optimal_actions(agents, moment, cond);
}

InferenceResult check_inference_condition(const ExplicitStitModel& m, const std::string& agent,
                                          int moment, const std::string& g_atom,
                                          const std::string& p_atom) {
  Evaluator ev(m);
  InferenceResult r;
  const Formula yield =
      fml::G(fml::Implies(fml::Not(fml::atom(g_atom)), fml::Not(fml::atom(p_atom))));
  const HistorySet keeps_rule = ev.extension(moment, yield);
  const std::size_t d = m.depth(moment);
  for (const auto& k : ev.optimal_actions({agent}, moment).actions) {
    if (k.count() < 2) {
      r.reason = "optimal action {" + [&] {
        std::string s;
        for (const auto& id : m.to_ids(k)) s += (s.empty() ? "" : ",") + id;
        return s;
      }() + "} is a singleton";
      return r;
    }
    std::optional<InferenceWitness> found;
    for (auto h = k.find_first(); h != HistorySet::npos && !found; h = k.find_next(h)) {
      if (keeps_rule.test(h)) continue;
      const auto& path = m.path(h);
      for (std::size_t pos = d + 1; pos < path.size() && !found; ++pos) {
        const int later = path[pos];
        if (m.choice(agent, later).size() < 2) continue;
        bool in_optimal = false;
        for (const auto& k2 : ev.optimal_actions({agent}, later).actions)
          in_optimal = in_optimal || k2.test(h);
        if (!in_optimal) found = InferenceWitness{k, m.history_id(h), later};
      }
    }
    if (!found) {
      r.reason = "an optimal action has no history that breaks the rule at a later "
                 "non-optimal choice";
      return r;
    }
    r.witnesses.push_back(*found);
  }
  r.holds = true;
  return r;
}

}  // namespace deontic::tree
