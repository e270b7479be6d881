#include "deontic/ctlstar.hpp"

#include <algorithm>

#include "deontic/errors.hpp"
#include "ltl.hpp"

namespace deontic::ctlstar {

std::size_t TransitionSystem::index(const std::string& state) const {
  auto it = std::find(states.begin(), states.end(), state);
  if (it == states.end()) throw LookupError("unknown state '" + state + "'");
  return static_cast<std::size_t>(it - states.begin());
}

TransitionSystem strip_weights(const automata::StitAutomaton& t) {
  TransitionSystem ts;
  std::map<std::string, std::size_t> idx;
  for (const auto& s : t.states)
    if (idx.emplace(s, ts.states.size()).second) ts.states.push_back(s);
  ts.succ.resize(ts.states.size());
  ts.labels.resize(ts.states.size());
  auto it = idx.find(t.init);
  if (it == idx.end()) throw LookupError("initial state '" + t.init + "' is not a state");
  ts.initial = it->second;
  for (const auto& tr : t.transitions) {
    auto f = idx.find(tr.from);
    auto g = idx.find(tr.to);
    if (f == idx.end() || g == idx.end()) throw LookupError("transition uses an unknown state");
    auto& out = ts.succ[f->second];
    if (std::find(out.begin(), out.end(), g->second) == out.end()) out.push_back(g->second);
  }
  for (std::size_t i = 0; i < ts.states.size(); ++i) {
    const auto& l = t.label(ts.states[i]);
    ts.labels[i].insert(l.begin(), l.end());
  }
  return ts;
}

namespace {

struct Path {
  std::vector<std::size_t> stem;
  std::vector<std::size_t> loop;
};

// A path from `start` whose trace satisfies the quantifier-free formula f.
std::optional<Path> find_path(const TransitionSystem& ts, std::size_t start, const Formula& f) {
  const BuchiAutomaton b = ltl_to_buchi(f);
  const std::size_t nb = b.state_count;
  std::vector<std::vector<detail::Edge>> graph(ts.states.size() * nb);
  for (std::size_t s = 0; s < ts.states.size(); ++s) {
    for (const auto& e : b.edges) {
      bool ok = true;
      for (const auto& p : e.positive) ok = ok && ts.labels[s].count(p);
      for (const auto& p : e.negative) ok = ok && !ts.labels[s].count(p);
      if (!ok) continue;
      std::uint64_t mask = 0;
      for (std::size_t j = 0; j < e.accepting.size(); ++j)
        if (e.accepting[j]) mask |= std::uint64_t{1} << j;
      for (std::size_t t : ts.succ[s]) graph[s * nb + e.from].push_back({t * nb + e.to, mask});
    }
  }
  std::vector<std::size_t> init;
  for (std::size_t q : b.initial) init.push_back(start * nb + q);
  auto lasso = detail::find_accepting_lasso(graph, init, b.acceptance_sets);
  if (!lasso) return std::nullopt;
  Path p;
  for (std::size_t v : lasso->stem) p.stem.push_back(v / nb);
  for (std::size_t v : lasso->loop) p.loop.push_back(v / nb);
  return p;
}

class Labeler {
 public:
  explicit Labeler(const TransitionSystem& ts) : ts_(ts) {}

  std::vector<bool> state(const Formula& f) {
    const std::size_t n = ts_.states.size();
    switch (f.op()) {
      case Op::True: return std::vector<bool>(n, true);
      case Op::False: return std::vector<bool>(n, false);
      case Op::Atom: {
        std::vector<bool> v(n);
        for (std::size_t s = 0; s < n; ++s) v[s] = ts_.labels[s].count(f.name()) > 0;
        return v;
      }
      case Op::Not: {
        auto v = state(f.child());
        v.flip();
        return v;
      }
      case Op::And:
      case Op::Or:
      case Op::Implies: {
        auto a = state(f.left());
        const auto b = state(f.right());
        for (std::size_t s = 0; s < n; ++s)
          a[s] = f.op() == Op::And ? (a[s] && b[s])
                                   : f.op() == Op::Or ? (a[s] || b[s]) : (!a[s] || b[s]);
        return a;
      }
      case Op::ExistsPaths:
        return exists(f.child());
      case Op::ForallPaths: {
        auto v = exists(fml::Not(f.child()));
        v.flip();
        return v;
      }
      case Op::Cstit:
      case Op::Dstit:
        throw UnsupportedError("stit operator is not part of CTL*: " + render(f));
      default:
        throw UnsupportedError("not a state formula: " + render(f));
    }
  }

  // Replace maximal quantified subformulas by fresh atoms.
  Formula abstract(const Formula& f, std::map<std::string, std::set<std::string>>& out) {
    switch (f.op()) {
      case Op::True:
      case Op::False:
      case Op::Atom:
        return f;
      case Op::ForallPaths:
      case Op::ExistsPaths: {
        const auto v = state(f);
        const std::string name = "$" + std::to_string(out.size());
        auto& set = out[name];
        for (std::size_t s = 0; s < v.size(); ++s)
          if (v[s]) set.insert(ts_.states[s]);
        return fml::atom(name);
      }
      case Op::Cstit:
      case Op::Dstit:
        throw UnsupportedError("stit operator is not part of CTL*: " + render(f));
      case Op::Not: return fml::Not(abstract(f.child(), out));
      case Op::Next: return fml::X(abstract(f.child(), out));
      case Op::NextPow: return fml::Xn(f.lo(), abstract(f.child(), out));
      case Op::Eventually: return fml::F(abstract(f.child(), out));
      case Op::EventuallyBounded: return fml::F(f.lo(), f.hi(), abstract(f.child(), out));
      case Op::Always: return fml::G(abstract(f.child(), out));
      case Op::And: return fml::And(abstract(f.left(), out), abstract(f.right(), out));
      case Op::Or: return fml::Or(abstract(f.left(), out), abstract(f.right(), out));
      case Op::Implies: return fml::Implies(abstract(f.left(), out), abstract(f.right(), out));
      case Op::Until: return fml::U(abstract(f.left(), out), abstract(f.right(), out));
      case Op::Release: return fml::R(abstract(f.left(), out), abstract(f.right(), out));
      case Op::BoundedRelease:
        return fml::BR(f.lo(), abstract(f.left(), out), abstract(f.right(), out));
    }
    return f;
  }

 private:
  std::vector<bool> exists(const Formula& path) {
    std::map<std::string, std::set<std::string>> fresh;
    const Formula inner = abstract(path, fresh);
    Abstraction a{inner, fresh};
    const TransitionSystem labeled = with_atoms(ts_, a);
    std::vector<bool> v(ts_.states.size(), false);
    for (std::size_t s = 0; s < v.size(); ++s) v[s] = find_path(labeled, s, inner).has_value();
    return v;
  }

  const TransitionSystem& ts_;
};

}  // namespace

Abstraction abstract_state_subformulas(const TransitionSystem& ts, const Formula& f) {
  if (!is_pure(f)) throw UnsupportedError("stit operator is not part of CTL*: " + render(f));
  Labeler l(ts);
  Abstraction a;
  a.formula = l.abstract(f, a.holds_at);
  return a;
}

TransitionSystem with_atoms(const TransitionSystem& ts, const Abstraction& a,
                            const std::map<std::string, std::string>& origin) {
  TransitionSystem out = ts;
  for (std::size_t s = 0; s < out.states.size(); ++s) {
    auto it = origin.find(out.states[s]);
    const std::string& o = it == origin.end() ? out.states[s] : it->second;
    for (const auto& [atom, where] : a.holds_at)
      if (where.count(o)) out.labels[s].insert(atom);
  }
  return out;
}

std::set<std::string> check_ctls(const TransitionSystem& ts, const Formula& f) {
  if (!is_pure(f)) throw UnsupportedError("stit operator is not part of CTL*: " + render(f));
  if (!is_state_formula(f)) throw UnsupportedError("not a state formula: " + render(f));
  const auto v = Labeler(ts).state(f);
  std::set<std::string> out;
  for (std::size_t s = 0; s < v.size(); ++s)
    if (v[s]) out.insert(ts.states[s]);
  return out;
}

UniversalResult check_universal(const TransitionSystem& ts, const Formula& f) {
  const Abstraction a = abstract_state_subformulas(ts, f);
  const TransitionSystem labeled = with_atoms(ts, a);
  UniversalResult r;
  auto path = find_path(labeled, labeled.initial, fml::Not(a.formula));
  if (!path) {
    r.holds = true;
    return r;
  }
  Word stem, loop;
  Counterexample cx;
  for (std::size_t s : path->stem) {
    stem.push_back(labeled.labels[s]);
    cx.stem.push_back(ts.states[s]);
  }
  for (std::size_t s : path->loop) {
    loop.push_back(labeled.labels[s]);
    cx.loop.push_back(ts.states[s]);
  }
  if (holds_on_lasso(a.formula, stem, loop))
    throw std::logic_error("internal error: counterexample satisfies " + render(f));
  cx.formula = render(f);
  r.counterexample = std::move(cx);
  return r;
}

}  // namespace deontic::ctlstar
