#include "deontic/properties.hpp"

#include <functional>

#include "deontic/tree_model.hpp"

namespace deontic::props {

namespace {

namespace f = deontic::fml;
using tree::Evaluator;
using tree::ExplicitStitModel;
using tree::HistorySet;

struct Site {
  const ExplicitStitModel& model;
  Evaluator& ev;
  int moment;
  std::size_t index;  // model number within the suite
};

// Runs `body` at every moment of `models` random models. The body returns
// an empty string when the instance holds, a description otherwise.
SuiteResult run(std::string name, std::mt19937_64& rng, std::size_t models,
                const random::ModelBounds& bounds,
                const std::function<std::string(const Site&)>& body) {
  SuiteResult r;
  r.name = std::move(name);
  for (std::size_t i = 0; i < models; ++i) {
    const ExplicitStitModel m(random::model(rng, bounds));
    Evaluator ev(m);
    ++r.models;
    for (const auto& mo : m.data().moments) {
      const std::string bad = body({m, ev, mo.id, i});
      ++r.checks;
      if (bad.empty()) continue;
      if (r.violations++ == 0)
        r.first_violation = "model " + std::to_string(i) + ", moment " + std::to_string(mo.id) +
                            ": " + bad;
    }
  }
  return r;
}

random::FormulaBounds formula_bounds(const random::ModelBounds& b) {
  random::FormulaBounds fb;
  fb.atoms = b.atoms;
  fb.bounded = true;
  return fb;
}

const std::string& pick_agent(std::mt19937_64& rng, const ExplicitStitModel& m) {
  const auto& a = m.agents();
  return a[std::uniform_int_distribution<std::size_t>(0, a.size() - 1)(rng)];
}

}  // namespace

SuiteResult force_others(std::mt19937_64& rng, std::size_t models,
                         const random::ModelBounds& bounds) {
  const auto fb = formula_bounds(bounds);
  return run("force-others", rng, models, bounds, [&](const Site& s) -> std::string {
    const std::string& a = pick_agent(rng, s.model);
    Formula x = random::formula(rng, fb);
    // Half the instances use a contradiction so the antecedent holds often.
    if (std::bernoulli_distribution(0.5)(rng)) x = f::And(x, f::Not(x));
    const Formula y = random::formula(rng, fb);
    const Formula both = f::Or(x, y);
    const HistorySet ex = s.ev.extension(s.moment, x);
    if (s.ev.extension(s.moment, both) != (ex | s.ev.extension(s.moment, y)))
      return "extension of " + render(both) + " is not the union";
    if (ex.none() &&
        s.ev.ought_holds({a}, s.moment, both) != s.ev.ought_holds({a}, s.moment, y))
      return a + " ought " + render(both) + " differs from ought " + render(y);
    return {};
  });
}

SuiteResult dstit_idempotence(std::mt19937_64& rng, std::size_t models,
                              const random::ModelBounds& bounds) {
  const auto fb = formula_bounds(bounds);
  return run("dstit-idempotence", rng, models, bounds, [&](const Site& s) -> std::string {
    const std::string& a = pick_agent(rng, s.model);
    const Obligation phi = random::obligation(rng, s.model.agents(), 1, fb);
    const Obligation once = deontic::dstit(a, phi);
    const Obligation twice = deontic::dstit(a, once);
    if (s.ev.extension(s.moment, once) == s.ev.extension(s.moment, twice)) return {};
    return render(twice) + " differs from " + render(once);
  });
}

SuiteResult refrain_refrain(std::mt19937_64& rng, std::size_t models,
                            const random::ModelBounds& bounds) {
  const auto fb = formula_bounds(bounds);
  return run("refrain-refrain", rng, models, bounds, [&](const Site& s) -> std::string {
    const std::string& a = pick_agent(rng, s.model);
    const Obligation phi = random::obligation(rng, s.model.agents(), 1, fb);
    const Obligation does = deontic::dstit(a, phi);
    const Obligation rr = deontic::dstit(a, refrain(a, refrain(a, phi)));
    if (s.ev.extension(s.moment, does) == s.ev.extension(s.moment, rr)) return {};
    return render(rr) + " differs from " + render(does);
  });
}

SuiteResult history_independence(std::mt19937_64& rng, std::size_t models,
                                  const random::ModelBounds& bounds) {
  const auto fb = formula_bounds(bounds);
  return run("history-independence", rng, models, bounds, [&](const Site& s) -> std::string {
    std::vector<std::string> group;
    for (const auto& a : s.model.agents())
      if (std::bernoulli_distribution(0.5)(rng)) group.push_back(a);
    if (group.empty()) group.push_back(pick_agent(rng, s.model));
    std::optional<Obligation> cond;
    if (std::bernoulli_distribution(0.3)(rng))
      cond = random::obligation(rng, s.model.agents(), 0, fb);
    const OughtStatement o(group, random::obligation(rng, s.model.agents(), 1, fb), cond);
    std::optional<bool> first;
    for (const auto& h : s.model.to_ids(s.model.histories_through(s.moment))) {
      const bool v = s.ev.sat(s.moment, h, o);
      if (first && *first != v) return render(o) + " depends on the history";
      first = v;
    }
    return {};
  });
}

SuiteResult conjunction(std::mt19937_64& rng, std::size_t models,
                        const random::ModelBounds& bounds) {
  const auto fb = formula_bounds(bounds);
  return run("conjunction", rng, models, bounds, [&](const Site& s) -> std::string {
    const std::string& a = pick_agent(rng, s.model);
    const Formula x = random::obligation(rng, s.model.agents(), 1, fb).formula();
    const Formula y = random::obligation(rng, s.model.agents(), 1, fb).formula();
    const bool apart = s.ev.ought_holds({a}, s.moment, x) && s.ev.ought_holds({a}, s.moment, y);
    if (apart == s.ev.ought_holds({a}, s.moment, f::And(x, y))) return {};
    return a + " ought " + render(x) + " and " + render(y) + " differs from the conjunction";
  });
}

SuiteResult optimal_nonempty(std::mt19937_64& rng, std::size_t models,
                             const random::ModelBounds& bounds) {
  const auto fb = formula_bounds(bounds);
  return run("optimal-nonempty", rng, models, bounds, [&](const Site& s) -> std::string {
    std::vector<std::vector<std::string>> groups;
    for (const auto& a : s.model.agents()) groups.push_back({a});
    if (s.model.agents().size() > 1) groups.push_back(s.model.agents());
    const Formula b = random::formula(rng, fb);
    const bool satisfiable = s.ev.extension(s.moment, b).any();
    for (const auto& g : groups) {
      if (s.ev.optimal_actions(g, s.moment).actions.empty())
        return "no optimal action for " + g.front();
      if (satisfiable && s.ev.optimal_actions(g, s.moment, b).actions.empty())
        return "no optimal action for " + g.front() + " under " + render(b);
    }
    return {};
  });
}

SuiteResult dominance_order(std::mt19937_64& rng, std::size_t models,
                            const random::ModelBounds& bounds) {
  return run("dominance-order", rng, models, bounds, [&](const Site& s) -> std::string {
    const std::string& a = pick_agent(rng, s.model);
    const auto acts = s.ev.group_choice({a}, s.moment);
    const auto states = s.ev.background_states({a}, s.moment);
    auto lt = [&](std::size_t i, std::size_t j) {
      return tree::strictly_dominated(s.model, acts[i], acts[j], states);
    };
    for (std::size_t i = 0; i < acts.size(); ++i) {
      if (lt(i, i)) return "an action of " + a + " dominates itself";
      for (std::size_t j = 0; j < acts.size(); ++j)
        for (std::size_t k = 0; k < acts.size(); ++k)
          if (lt(i, j) && lt(j, k) && !lt(i, k)) return "dominance of " + a + " is not transitive";
    }
    return {};
  });
}

std::vector<SuiteResult> all_suites(std::uint64_t seed, std::size_t models,
                                    const random::ModelBounds& bounds) {
  using Suite = SuiteResult (*)(std::mt19937_64&, std::size_t, const random::ModelBounds&);
  const Suite suites[] = {force_others,     dstit_idempotence, refrain_refrain,
                          history_independence, conjunction,  optimal_nonempty,
                          dominance_order};
  std::vector<SuiteResult> out;
  std::uint64_t k = 0;
  for (Suite s : suites) {
    std::mt19937_64 rng(seed + k++);
    out.push_back(s(rng, models, bounds));
  }
  return out;
}

}  // namespace deontic::props
