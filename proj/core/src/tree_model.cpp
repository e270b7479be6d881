#include <algorithm>
#include <set>
#include <sstream>

#include "deontic/errors.hpp"
#include "deontic/tree_model.hpp"

namespace deontic::tree {

std::string describe(const Violation& v) {
  std::ostringstream os;
  os << v.axiom << ": " << v.message;
  if (!v.agent.empty()) os << " [agent " << v.agent << "]";
  if (v.moment) os << " [moment " << *v.moment << "]";
  if (!v.histories.empty()) {
    os << " [histories";
    for (const auto& h : v.histories) os << ' ' << h;
    os << "]";
  }
  return os.str();
}

ExplicitStitModel::ExplicitStitModel(ModelData data) : data_(std::move(data)) {
  for (const auto& mo : data_.moments) {
    if (moment_index_.count(mo.id)) continue;
    moment_index_[mo.id] = moment_ids_.size();
    moment_ids_.push_back(mo.id);
  }
  const std::size_t n = moment_ids_.size();
  parent_.assign(n, std::nullopt);
  children_.assign(n, {});
  std::vector<bool> seen(n, false);
  for (const auto& mo : data_.moments) {
    const std::size_t i = moment_index_.at(mo.id);
    if (seen[i]) continue;
    seen[i] = true;
    if (mo.parent) {
      auto it = moment_index_.find(*mo.parent);
      if (it != moment_index_.end() && it->second != i) {
        parent_[i] = it->second;
        children_[it->second].push_back(i);
      }
    }
  }
  depth_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    unsigned d = 0;
    std::optional<std::size_t> cur = parent_[i];
    while (cur && d <= n) {
      ++d;
      cur = parent_[*cur];
    }
    depth_[i] = d > n ? 0 : d;
  }

  for (const auto& h : data_.histories) {
    if (history_index_.count(h.id)) continue;
    history_index_[h.id] = history_ids_.size();
    history_ids_.push_back(h.id);
    paths_.push_back(h.moments);
    values_.push_back(h.value);
  }
  const std::size_t hc = history_ids_.size();
  through_.assign(n, HistorySet(hc));
  for (std::size_t h = 0; h < hc; ++h)
    for (int mid : paths_[h])
      if (auto it = moment_index_.find(mid); it != moment_index_.end()) through_[it->second].set(h);

  for (const auto& c : data_.choices) {
    auto mit = moment_index_.find(c.moment);
    if (mit == moment_index_.end()) continue;
    auto key = std::make_pair(mit->second, c.agent);
    if (choices_.count(key)) continue;
    std::vector<HistorySet> actions;
    for (const auto& act : c.actions) {
      HistorySet s(hc);
      for (const auto& id : act)
        if (auto it = history_index_.find(id); it != history_index_.end()) s.set(it->second);
      actions.push_back(std::move(s));
    }
    choices_.emplace(std::move(key), std::move(actions));
  }

  for (const auto& a : data_.atoms) known_atoms_[a] = 1;
  for (const auto& l : data_.labels) {
    auto mit = moment_index_.find(l.moment);
    if (mit == moment_index_.end()) continue;
    std::vector<std::size_t> targets;
    if (l.history) {
      if (auto it = history_index_.find(*l.history); it != history_index_.end())
        targets.push_back(it->second);
    } else {
      for (std::size_t h = 0; h < hc; ++h)
        if (through_[mit->second].test(h)) targets.push_back(h);
    }
    for (std::size_t h : targets) {
      auto& atoms = labels_[{mit->second, h}];
      atoms.insert(atoms.end(), l.atoms.begin(), l.atoms.end());
      std::sort(atoms.begin(), atoms.end());
      atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    }
    for (const auto& a : l.atoms) known_atoms_[a] = 1;
  }
}

int ExplicitStitModel::root() const {
  for (std::size_t i = 0; i < moment_ids_.size(); ++i)
    if (!parent_[i]) return moment_ids_[i];
  throw LookupError("model has no root moment");
}

bool ExplicitStitModel::has_agent(const std::string& agent) const {
  return std::find(data_.agents.begin(), data_.agents.end(), agent) != data_.agents.end();
}

std::size_t ExplicitStitModel::moment_index(int id) const {
  auto it = moment_index_.find(id);
  if (it == moment_index_.end()) throw LookupError("unknown moment " + std::to_string(id));
  return it->second;
}

std::size_t ExplicitStitModel::history_index(const std::string& id) const {
  auto it = history_index_.find(id);
  if (it == history_index_.end()) throw LookupError("unknown history '" + id + "'");
  return it->second;
}

std::optional<int> ExplicitStitModel::parent(int m) const {
  const auto p = parent_[moment_index(m)];
  if (!p) return std::nullopt;
  return moment_ids_[*p];
}

std::vector<int> ExplicitStitModel::children(int m) const {
  std::vector<int> out;
  for (std::size_t c : children_[moment_index(m)]) out.push_back(moment_ids_[c]);
  return out;
}

unsigned ExplicitStitModel::depth(int m) const { return depth_[moment_index(m)]; }

HistorySet ExplicitStitModel::histories_through(int m) const { return through_[moment_index(m)]; }

HistorySet ExplicitStitModel::to_set(const std::vector<std::string>& ids) const {
  HistorySet s = empty_set();
  for (const auto& id : ids) s.set(history_index(id));
  return s;
}

std::vector<std::string> ExplicitStitModel::to_ids(const HistorySet& s) const {
  std::vector<std::string> out;
  for (auto i = s.find_first(); i != HistorySet::npos; i = s.find_next(i))
    out.push_back(history_ids_[i]);
  return out;
}

std::vector<HistorySet> ExplicitStitModel::choice(const std::string& agent, int m) const {
  const std::size_t mi = moment_index(m);
  if (!has_agent(agent)) throw LookupError("unknown agent '" + agent + "'");
  auto it = choices_.find({mi, agent});
  if (it == choices_.end()) return {through_[mi]};
  return it->second;
}

const std::vector<std::string>& ExplicitStitModel::label(int m, std::size_t h) const {
  auto it = labels_.find({moment_index(m), h});
  return it == labels_.end() ? no_atoms_ : it->second;
}

bool ExplicitStitModel::has_atom(int m, std::size_t h, const std::string& atom) const {
  const auto& l = label(m, h);
  return std::binary_search(l.begin(), l.end(), atom);
}

// ------------------------------------------------------------ validation

namespace {

class Checker {
 public:
  explicit Checker(const ExplicitStitModel& m) : m_(m), d_(m.data()) {}

  std::vector<Violation> run() {
    moments();
    histories();
    agents();
    choices();
    independence();
    undivided();
    labels();
    return std::move(out_);
  }

 private:
  void add(std::string axiom, std::string message, std::optional<int> moment = std::nullopt,
           std::string agent = {}, std::vector<std::string> hs = {}) {
    out_.push_back({std::move(axiom), std::move(agent), moment, std::move(hs), std::move(message)});
  }

  void moments() {
    if (d_.moments.empty()) {
      add("tree", "model has no moments");
      return;
    }
    std::set<int> ids;
    std::vector<int> roots;
    for (const auto& mo : d_.moments) {
      if (!ids.insert(mo.id).second) add("tree", "duplicate moment id", mo.id);
      if (!mo.parent) {
        roots.push_back(mo.id);
      } else if (!m_.has_moment(*mo.parent)) {
        add("tree", "parent " + std::to_string(*mo.parent) + " does not exist", mo.id);
      } else if (*mo.parent == mo.id) {
        add("tree", "moment is its own parent", mo.id);
      }
    }
    if (roots.size() != 1) {
      add("tree", "expected exactly one root moment, found " + std::to_string(roots.size()));
    } else if (roots.front() != 0) {
      add("tree", "root moment must have id 0", roots.front());
    }
    for (int id : ids) {
      std::set<int> visited{id};
      std::optional<int> cur = m_.parent(id);
      while (cur) {
        if (!visited.insert(*cur).second) {
          add("tree", "parent chain is cyclic", id);
          break;
        }
        cur = m_.parent(*cur);
      }
    }
  }

  void histories() {
    std::set<std::string> ids;
    std::map<std::vector<int>, std::string> paths;
    std::set<int> leaves_covered;
    for (const auto& h : d_.histories) {
      if (!ids.insert(h.id).second) {
        add("history", "duplicate history id", std::nullopt, {}, {h.id});
        continue;
      }
      if (h.moments.empty()) {
        add("history", "history has no moments", std::nullopt, {}, {h.id});
        continue;
      }
      bool ok = true;
      for (int mid : h.moments) {
        if (!m_.has_moment(mid)) {
          add("history", "unknown moment " + std::to_string(mid), std::nullopt, {}, {h.id});
          ok = false;
        }
      }
      if (!ok) continue;
      if (m_.parent(h.moments.front())) {
        add("history", "does not start at the root", h.moments.front(), {}, {h.id});
        ok = false;
      }
      for (std::size_t i = 1; i < h.moments.size(); ++i) {
        if (m_.parent(h.moments[i]) != h.moments[i - 1]) {
          add("history", "moments do not form a parent-child path", h.moments[i], {}, {h.id});
          ok = false;
        }
      }
      if (!m_.is_leaf(h.moments.back())) {
        add("history", "does not end at a leaf", h.moments.back(), {}, {h.id});
        ok = false;
      }
      if (ok) {
        leaves_covered.insert(h.moments.back());
        auto [it, fresh] = paths.emplace(h.moments, h.id);
        if (!fresh)
          add("history", "two histories share all their moments", std::nullopt, {},
              {it->second, h.id});
      }
    }
    for (std::size_t i = 0; i < m_.moment_count(); ++i) {
      const int mid = m_.moment_id(i);
      if (m_.is_leaf(mid) && !leaves_covered.count(mid))
        add("history", "leaf is not the end of any history", mid);
    }
  }

  void agents() {
    std::set<std::string> seen;
    for (const auto& a : d_.agents) {
      if (a.empty() || is_reserved_word(a)) add("reference", "invalid agent name '" + a + "'");
      if (!seen.insert(a).second) add("reference", "duplicate agent", std::nullopt, a);
    }
  }

  void choices() {
    std::set<std::pair<std::string, int>> seen;
    for (const auto& c : d_.choices) {
      if (!m_.has_agent(c.agent)) {
        add("reference", "choice for unknown agent", c.moment, c.agent);
        continue;
      }
      if (!m_.has_moment(c.moment)) {
        add("reference", "choice at unknown moment", c.moment, c.agent);
        continue;
      }
      if (!seen.insert({c.agent, c.moment}).second) {
        add("partition", "duplicate choice entry", c.moment, c.agent);
        continue;
      }
      const HistorySet hm = m_.histories_through(c.moment);
      HistorySet covered = m_.empty_set();
      std::map<std::string, int> owner;
      for (std::size_t k = 0; k < c.actions.size(); ++k) {
        if (c.actions[k].empty()) add("partition", "empty action", c.moment, c.agent);
        for (const auto& id : c.actions[k]) {
          if (!m_.has_history(id)) {
            add("reference", "action names unknown history", c.moment, c.agent, {id});
            continue;
          }
          const std::size_t h = m_.history_index(id);
          if (!hm.test(h)) {
            add("partition", "action contains a history not through the moment", c.moment,
                c.agent, {id});
            continue;
          }
          auto [it, fresh] = owner.emplace(id, static_cast<int>(k));
          if (!fresh && it->second != static_cast<int>(k))
            add("partition", "actions overlap", c.moment, c.agent, {id});
          covered.set(h);
        }
      }
      const HistorySet missing = hm - covered;
      if (missing.any())
        add("partition", "actions do not cover H_m", c.moment, c.agent, m_.to_ids(missing));
    }
  }

  void independence() {
    if (d_.agents.size() < 2) return;
    for (std::size_t i = 0; i < m_.moment_count(); ++i) {
      const int mid = m_.moment_id(i);
      std::vector<std::pair<HistorySet, std::vector<std::size_t>>> partial{
          {m_.histories_through(mid), {}}};
      bool reported = false;
      for (const auto& agent : d_.agents) {
        std::vector<std::pair<HistorySet, std::vector<std::size_t>>> next;
        const auto actions = m_.choice(agent, mid);
        for (const auto& [set, picks] : partial) {
          for (std::size_t k = 0; k < actions.size(); ++k) {
            auto p = picks;
            p.push_back(k);
            next.emplace_back(set & actions[k], std::move(p));
          }
        }
        partial = std::move(next);
        if (partial.size() > resource_limit()) {
          add("independence", "too many action combinations to check", mid);
          reported = true;
          break;
        }
      }
      if (reported) continue;
      for (const auto& [set, picks] : partial) {
        if (set.none()) {
          std::string sel;
          for (std::size_t a = 0; a < picks.size(); ++a) {
            if (a) sel += ", ";
            sel += d_.agents[a] + "#" + std::to_string(picks[a]);
          }
          add("independence", "empty intersection of actions (" + sel + ")", mid);
        }
      }
    }
  }

  void undivided() {
    for (const auto& c : d_.choices) {
      if (!m_.has_agent(c.agent) || !m_.has_moment(c.moment)) continue;
      const unsigned d = m_.depth(c.moment);
      const auto actions = m_.choice(c.agent, c.moment);
      const HistorySet hm = m_.histories_through(c.moment);
      auto action_of = [&](std::size_t h) -> int {
        for (std::size_t k = 0; k < actions.size(); ++k)
          if (actions[k].test(h)) return static_cast<int>(k);
        return -1;
      };
      for (auto a = hm.find_first(); a != HistorySet::npos; a = hm.find_next(a)) {
        for (auto b = hm.find_next(a); b != HistorySet::npos; b = hm.find_next(b)) {
          const auto& pa = m_.path(a);
          const auto& pb = m_.path(b);
          if (pa.size() <= d + 1 || pb.size() <= d + 1 || pa[d + 1] != pb[d + 1]) continue;
          if (action_of(a) != action_of(b))
            add("no-choice-between-undivided", "histories share a later moment but are split",
                c.moment, c.agent, {m_.history_id(a), m_.history_id(b)});
        }
      }
    }
  }

  void labels() {
    const std::set<std::string> declared(d_.atoms.begin(), d_.atoms.end());
    for (const auto& l : d_.labels) {
      if (!m_.has_moment(l.moment)) {
        add("label", "label at unknown moment", l.moment);
        continue;
      }
      if (l.history) {
        if (!m_.has_history(*l.history)) {
          add("label", "label for unknown history", l.moment, {}, {*l.history});
          continue;
        }
        if (!m_.histories_through(l.moment).test(m_.history_index(*l.history)))
          add("label", "history does not pass through the moment", l.moment, {}, {*l.history});
      }
      for (const auto& a : l.atoms)
        if (!declared.count(a)) add("label", "undeclared atom '" + a + "'", l.moment);
    }
  }

  const ExplicitStitModel& m_;
  const ModelData& d_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate_model(const ExplicitStitModel& m) { return Checker(m).run(); }

}  // namespace deontic::tree
