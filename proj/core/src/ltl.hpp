// Internal: negation normal form LTL, the tableau translation and the
// accepting-lasso search shared by the Büchi and CTL* code.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "deontic/formula.hpp"

namespace deontic::ctlstar::detail {

enum class K : std::uint8_t { True, False, Lit, And, Or, Next, Until, Release };

struct Node {
  K kind;
  std::string atom;  // Lit
  bool negated = false;
  int l = -1;
  int r = -1;
};

class Ltl {
 public:
  /// Interns the negation normal form of f (or of !f when `negate`).
  int add(const Formula& f, bool negate = false);

  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return nodes_.size(); }
  /// Until nodes reachable from `root`, in a fixed order.
  std::vector<int> untils(int root) const;
  std::string render(int id) const;

 private:
  int intern(Node n);
  int build(const Formula& f, bool neg);

  std::vector<Node> nodes_;
  std::map<std::tuple<K, std::string, bool, int, int>, int> index_;
};

struct Cover {
  std::vector<std::string> positive;
  std::vector<std::string> negative;
  std::vector<int> next;        // sorted node ids
  std::uint64_t postponed = 0;  // bit j: until j deferred to the next step
};

/// All consistent ways to satisfy every formula in `now` at one position.
std::vector<Cover> expand(const Ltl& ltl, const std::vector<int>& now,
                          const std::vector<int>& until_order);

struct Edge {
  std::size_t to;
  std::uint64_t accepting;  // bit j: edge belongs to acceptance set j
};

struct Lasso {
  std::vector<std::size_t> stem;  // nodes before the loop
  std::vector<std::size_t> loop;  // loop nodes, first one is where it starts
};

/// Accepting lasso of a generalized Büchi graph with transition
/// acceptance, or nullopt when the language is empty.
std::optional<Lasso> find_accepting_lasso(const std::vector<std::vector<Edge>>& graph,
                                          const std::vector<std::size_t>& initial,
                                          std::size_t acceptance_sets);

}  // namespace deontic::ctlstar::detail
