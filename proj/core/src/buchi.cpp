#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "deontic/ctlstar.hpp"
#include "deontic/errors.hpp"
#include "ltl.hpp"

namespace deontic::ctlstar {

namespace detail {

int Ltl::intern(Node n) {
  auto key = std::make_tuple(n.kind, n.atom, n.negated, n.l, n.r);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(std::move(n));
  index_.emplace(std::move(key), id);
  return id;
}

int Ltl::add(const Formula& f, bool negate) { return build(expand_bounded(f), negate); }

int Ltl::build(const Formula& f, bool neg) {
  auto mk = [&](K k, int l = -1, int r = -1) { return intern({k, {}, false, l, r}); };
  switch (f.op()) {
    case Op::True: return mk(neg ? K::False : K::True);
    case Op::False: return mk(neg ? K::True : K::False);
    case Op::Atom: return intern({K::Lit, f.name(), neg, -1, -1});
    case Op::Not: return build(f.child(), !neg);
    case Op::And:
      return mk(neg ? K::Or : K::And, build(f.left(), neg), build(f.right(), neg));
    case Op::Or:
      return mk(neg ? K::And : K::Or, build(f.left(), neg), build(f.right(), neg));
    case Op::Implies:
      return mk(neg ? K::And : K::Or, build(f.left(), !neg), build(f.right(), neg));
    case Op::Next: return mk(K::Next, build(f.child(), neg));
    case Op::Until:
      return mk(neg ? K::Release : K::Until, build(f.left(), neg), build(f.right(), neg));
    case Op::Release:
      return mk(neg ? K::Until : K::Release, build(f.left(), neg), build(f.right(), neg));
    case Op::Eventually:
      // F a = true U a; !F a = false R !a.
      return neg ? mk(K::Release, mk(K::False), build(f.child(), true))
                 : mk(K::Until, mk(K::True), build(f.child(), false));
    case Op::Always:
      return neg ? mk(K::Until, mk(K::True), build(f.child(), true))
                 : mk(K::Release, mk(K::False), build(f.child(), false));
    case Op::NextPow:
    case Op::EventuallyBounded:
    case Op::BoundedRelease:
      return build(expand_bounded(f), neg);
    case Op::ForallPaths:
    case Op::ExistsPaths:
      throw UnsupportedError("path quantifier inside an LTL formula: " + deontic::render(f));
    case Op::Cstit:
    case Op::Dstit:
      throw UnsupportedError("stit operator is not part of CTL*: " + deontic::render(f));
  }
  throw UnsupportedError("unknown operator");
}

std::vector<int> Ltl::untils(int root) const {
  std::vector<int> out;
  std::set<int> seen;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (id < 0 || !seen.insert(id).second) continue;
    const Node& n = node(id);
    if (n.kind == K::Until) out.push_back(id);
    stack.push_back(n.r);
    stack.push_back(n.l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Ltl::render(int id) const {
  const Node& n = node(id);
  switch (n.kind) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Lit: return (n.negated ? "!" : "") + n.atom;
    case K::And: return "(" + render(n.l) + " & " + render(n.r) + ")";
    case K::Or: return "(" + render(n.l) + " | " + render(n.r) + ")";
    case K::Next: return "X (" + render(n.l) + ")";
    case K::Until: return "(" + render(n.l) + " U " + render(n.r) + ")";
    case K::Release: return "(" + render(n.l) + " R " + render(n.r) + ")";
  }
  return "?";
}

std::vector<Cover> expand(const Ltl& ltl, const std::vector<int>& now,
                          const std::vector<int>& until_order) {
  std::vector<Cover> out;
  auto bit = [&](int until) -> std::uint64_t {
    auto it = std::find(until_order.begin(), until_order.end(), until);
    return std::uint64_t{1} << (it - until_order.begin());
  };
  auto add_next = [](Cover& c, int id) {
    auto it = std::lower_bound(c.next.begin(), c.next.end(), id);
    if (it == c.next.end() || *it != id) c.next.insert(it, id);
  };
  auto contains = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };

  // `done` holds the nodes already imposed on this branch. Revisiting one
  // adds nothing, and a disjunction (or until/release) one of whose
  // sufficient parts is already imposed needs no further branching.
  std::set<std::tuple<std::vector<std::string>, std::vector<std::string>, std::vector<int>,
                      std::uint64_t>>
      seen;
  std::function<void(std::vector<int>, Cover, std::set<int>)> step =
      [&](std::vector<int> todo, Cover c, std::set<int> done) {
    while (!todo.empty()) {
      const int id = todo.back();
      todo.pop_back();
      if (!done.insert(id).second) continue;
      const Node& n = ltl.node(id);
      switch (n.kind) {
        case K::True:
          break;
        case K::False:
          return;
        case K::Lit:
          if (contains(n.negated ? c.positive : c.negative, n.atom)) return;
          if (!contains(n.negated ? c.negative : c.positive, n.atom))
            (n.negated ? c.negative : c.positive).push_back(n.atom);
          break;
        case K::And:
          todo.push_back(n.r);
          todo.push_back(n.l);
          break;
        case K::Or: {
          if (done.count(n.l) || done.count(n.r)) break;
          auto alt = todo;
          alt.push_back(n.r);
          step(std::move(alt), c, done);
          todo.push_back(n.l);
          break;
        }
        case K::Next:
          add_next(c, n.l);
          break;
        case K::Until: {
          if (done.count(n.r)) break;
          auto now_branch = todo;
          now_branch.push_back(n.r);
          step(std::move(now_branch), c, done);
          todo.push_back(n.l);
          add_next(c, id);
          c.postponed |= bit(id);
          break;
        }
        case K::Release: {
          if (done.count(n.l) && done.count(n.r)) break;
          auto now_branch = todo;
          now_branch.push_back(n.r);
          now_branch.push_back(n.l);
          step(std::move(now_branch), c, done);
          todo.push_back(n.r);
          add_next(c, id);
          break;
        }
      }
    }
    std::sort(c.positive.begin(), c.positive.end());
    std::sort(c.negative.begin(), c.negative.end());
    if (seen.emplace(c.positive, c.negative, c.next, c.postponed).second) out.push_back(std::move(c));
  };
  step(now, Cover{}, {});
  return out;
}

std::optional<Lasso> find_accepting_lasso(const std::vector<std::vector<Edge>>& graph,
                                          const std::vector<std::size_t>& initial,
                                          std::size_t acceptance_sets) {
  const std::size_t n = graph.size();
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, none), low(n, 0), comp(n, none);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  std::size_t comps = 0;

  // Iterative Tarjan over nodes reachable from the initial set.
  for (std::size_t root : initial) {
    if (index[root] != none) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < graph[v].size()) {
        const std::size_t w = graph[v][i].to;
        ++i;
        if (index[w] == none) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }

  const std::uint64_t full =
      acceptance_sets == 0 ? 0 : (acceptance_sets >= 64 ? ~std::uint64_t{0}
                                                         : (std::uint64_t{1} << acceptance_sets) - 1);
  std::vector<std::uint64_t> mask(comps, 0);
  std::vector<bool> has_edge(comps, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (comp[v] == none) continue;
    for (const auto& e : graph[v])
      if (comp[e.to] == comp[v]) {
        has_edge[comp[v]] = true;
        mask[comp[v]] |= e.accepting;
      }
  }
  std::size_t target = none;
  for (std::size_t c = 0; c < comps && target == none; ++c)
    if (has_edge[c] && (mask[c] & full) == full) target = c;
  if (target == none) return std::nullopt;

  // Stem: BFS from the initial nodes to the component.
  std::vector<std::size_t> parent(n, none);
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t r : initial)
    if (!seen[r]) {
      seen[r] = true;
      queue.push_back(r);
    }
  std::size_t entry = none;
  while (!queue.empty() && entry == none) {
    const std::size_t v = queue.front();
    queue.pop_front();
    if (comp[v] == target) {
      entry = v;
      break;
    }
    for (const auto& e : graph[v])
      if (!seen[e.to]) {
        seen[e.to] = true;
        parent[e.to] = v;
        queue.push_back(e.to);
      }
  }
  Lasso lasso;
  for (std::size_t v = parent[entry]; v != none; v = parent[v]) lasso.stem.push_back(v);
  std::reverse(lasso.stem.begin(), lasso.stem.end());

  // Loop: inside the component, cover each acceptance set, return to entry.
  lasso.loop.push_back(entry);
  std::size_t cur = entry;
  auto walk = [&](auto&& accept_edge) {
    std::vector<std::size_t> par(n, none);
    std::vector<bool> vis(n, false);
    std::deque<std::size_t> q{cur};
    vis[cur] = true;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop_front();
      for (const auto& e : graph[v]) {
        if (comp[e.to] != target) continue;
        if (accept_edge(e)) {
          std::vector<std::size_t> path;
          for (std::size_t x = v; x != cur; x = par[x]) path.push_back(x);
          std::reverse(path.begin(), path.end());
          for (std::size_t x : path) lasso.loop.push_back(x);
          lasso.loop.push_back(e.to);
          cur = e.to;
          return;
        }
        if (!vis[e.to]) {
          vis[e.to] = true;
          par[e.to] = v;
          q.push_back(e.to);
        }
      }
    }
  };
  if (acceptance_sets == 0) walk([](const Edge&) { return true; });
  for (std::size_t j = 0; j < acceptance_sets; ++j)
    walk([&](const Edge& e) { return (e.accepting >> j) & 1U; });
  if (cur != entry) walk([&](const Edge& e) { return e.to == entry; });
  lasso.loop.pop_back();  // the walk ended back at entry
  return lasso;
}

}  // namespace detail

using detail::K;

BuchiAutomaton ltl_to_buchi(const Formula& f) {
  if (!is_pure(f)) throw UnsupportedError("stit operator is not part of CTL*");
  if (!is_quantifier_free(f)) throw UnsupportedError("ltl_to_buchi takes quantifier-free formulas");
  detail::Ltl ltl;
  const int root = ltl.add(f);
  const auto untils = ltl.untils(root);
  if (untils.size() > 64) throw UnsupportedError("formula has more than 64 until operators");

  BuchiAutomaton b;
  b.acceptance_sets = untils.size();
  std::map<std::vector<int>, std::size_t> ids;
  std::vector<std::vector<int>> states;
  auto state = [&](const std::vector<int>& s) {
    auto [it, fresh] = ids.emplace(s, states.size());
    if (fresh) states.push_back(s);
    return it->second;
  };
  b.initial.push_back(state({root}));
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::vector<int> now = states[i];
    for (const auto& c : detail::expand(ltl, now, untils)) {
      BuchiAutomaton::Edge e;
      e.from = i;
      e.to = state(c.next);
      e.positive.insert(c.positive.begin(), c.positive.end());
      e.negative.insert(c.negative.begin(), c.negative.end());
      for (std::size_t j = 0; j < untils.size(); ++j) e.accepting.push_back(!((c.postponed >> j) & 1U));
      b.edges.push_back(std::move(e));
    }
  }
  b.state_count = states.size();
  for (const auto& s : states) {
    std::string name = "{";
    for (std::size_t k = 0; k < s.size(); ++k) name += (k ? ", " : "") + ltl.render(s[k]);
    b.state_names.push_back(name + "}");
  }
  return b;
}

namespace {

bool consistent(const BuchiAutomaton::Edge& e, const std::set<std::string>& letter) {
  for (const auto& p : e.positive)
    if (!letter.count(p)) return false;
  for (const auto& p : e.negative)
    if (letter.count(p)) return false;
  return true;
}

std::uint64_t mask_of(const BuchiAutomaton::Edge& e) {
  std::uint64_t m = 0;
  for (std::size_t j = 0; j < e.accepting.size(); ++j)
    if (e.accepting[j]) m |= std::uint64_t{1} << j;
  return m;
}

}  // namespace

bool accepts(const BuchiAutomaton& b, const Word& stem, const Word& loop) {
  if (loop.empty()) throw std::invalid_argument("lasso loop must be non-empty");
  const std::size_t len = stem.size() + loop.size();
  auto letter = [&](std::size_t i) -> const std::set<std::string>& {
    return i < stem.size() ? stem[i] : loop[i - stem.size()];
  };
  auto succ = [&](std::size_t i) { return i + 1 < len ? i + 1 : stem.size(); };
  std::vector<std::vector<detail::Edge>> graph(len * b.state_count);
  for (std::size_t i = 0; i < len; ++i)
    for (const auto& e : b.edges)
      if (consistent(e, letter(i)))
        graph[i * b.state_count + e.from].push_back({succ(i) * b.state_count + e.to, mask_of(e)});
  std::vector<std::size_t> init;
  for (std::size_t q : b.initial) init.push_back(q);
  return detail::find_accepting_lasso(graph, init, b.acceptance_sets).has_value();
}

bool holds_on_lasso(const Formula& f, const Word& stem, const Word& loop) {
  if (loop.empty()) throw std::invalid_argument("lasso loop must be non-empty");
  detail::Ltl ltl;
  const int root = ltl.add(f);
  const std::size_t len = stem.size() + loop.size();
  auto letter = [&](std::size_t i) -> const std::set<std::string>& {
    return i < stem.size() ? stem[i] : loop[i - stem.size()];
  };
  auto succ = [&](std::size_t i) { return i + 1 < len ? i + 1 : stem.size(); };

  std::map<int, std::vector<bool>> memo;
  std::function<const std::vector<bool>&(int)> eval = [&](int id) -> const std::vector<bool>& {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const detail::Node& n = ltl.node(id);
    std::vector<bool> v(len, false);
    switch (n.kind) {
      case K::True: v.assign(len, true); break;
      case K::False: break;
      case K::Lit:
        for (std::size_t i = 0; i < len; ++i) v[i] = letter(i).count(n.atom) != n.negated;
        break;
      case K::And: {
        const auto a = eval(n.l);
        const auto& b = eval(n.r);
        for (std::size_t i = 0; i < len; ++i) v[i] = a[i] && b[i];
        break;
      }
      case K::Or: {
        const auto a = eval(n.l);
        const auto& b = eval(n.r);
        for (std::size_t i = 0; i < len; ++i) v[i] = a[i] || b[i];
        break;
      }
      case K::Next: {
        const auto& a = eval(n.l);
        for (std::size_t i = 0; i < len; ++i) v[i] = a[succ(i)];
        break;
      }
      case K::Until:
      case K::Release: {
        const auto a = eval(n.l);
        const auto b = eval(n.r);
        const bool until = n.kind == K::Until;
        v.assign(len, !until);
        for (std::size_t round = 0; round <= len; ++round)
          for (std::size_t k = len; k-- > 0;)
            v[k] = until ? (b[k] || (a[k] && v[succ(k)])) : (b[k] && (a[k] || v[succ(k)]));
        break;
      }
    }
    return memo.emplace(id, std::move(v)).first->second;
  };
  return eval(root)[0];
}

}  // namespace deontic::ctlstar
