// Explicit finite-depth utilitarian stit models and their satisfaction
// relation.
//
// Histories are finite root-to-leaf paths; temporal operators read them with
// the leaf repeated forever, so X at a leaf stays at the leaf and G/F/U/R are
// decided on the ultimately constant extension.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "deontic/formula.hpp"
#include "deontic/rational.hpp"

namespace deontic::tree {

/// Bit i is history number i in declaration order.
using HistorySet = boost::dynamic_bitset<>;

/// Raw records, as read from a model file. Nothing here is validated.
struct ModelData {
  struct Moment {
    int id = 0;
    std::optional<int> parent;
  };
  struct History {
    std::string id;
    std::vector<int> moments;
    Rational value;
  };
  struct Choice {
    std::string agent;
    int moment = 0;
    std::vector<std::vector<std::string>> actions;
  };
  struct Label {
    int moment = 0;
    std::optional<std::string> history;  // nullopt: every history through the moment
    std::vector<std::string> atoms;
  };

  std::vector<std::string> agents;
  std::vector<std::string> atoms;
  std::vector<Moment> moments;
  std::vector<History> histories;
  std::vector<Choice> choices;
  std::vector<Label> labels;
};

struct Violation {
  /// tree, history, partition, independence, no-choice-between-undivided,
  /// label, reference.
  std::string axiom;
  std::string agent;
  std::optional<int> moment;
  std::vector<std::string> histories;
  std::string message;
};

std::string describe(const Violation& v);

/// Immutable indexed view of a ModelData. Construction never throws on
/// semantic problems; they are reported by validate_model. Evaluating an
/// invalid model gives unspecified (but memory-safe) answers.
class ExplicitStitModel {
 public:
  explicit ExplicitStitModel(ModelData data);

  const ModelData& data() const noexcept { return data_; }
  const std::vector<std::string>& agents() const noexcept { return data_.agents; }

  std::size_t moment_count() const noexcept { return moment_ids_.size(); }
  std::size_t history_count() const noexcept { return history_ids_.size(); }

  int root() const;
  bool has_moment(int id) const { return moment_index_.count(id) > 0; }
  bool has_history(const std::string& id) const { return history_index_.count(id) > 0; }
  bool has_agent(const std::string& agent) const;

  /// Throw LookupError for unknown ids.
  std::size_t moment_index(int id) const;
  std::size_t history_index(const std::string& id) const;
  int moment_id(std::size_t index) const { return moment_ids_.at(index); }
  const std::string& history_id(std::size_t index) const { return history_ids_.at(index); }

  std::optional<int> parent(int m) const;
  std::vector<int> children(int m) const;
  unsigned depth(int m) const;
  bool is_leaf(int m) const { return children(m).empty(); }
  /// Moment ids of history h from the root to its leaf.
  const std::vector<int>& path(std::size_t h) const { return paths_.at(h); }
  const Rational& value(std::size_t h) const { return values_.at(h); }

  HistorySet empty_set() const { return HistorySet(history_count()); }
  HistorySet histories_through(int m) const;
  HistorySet to_set(const std::vector<std::string>& ids) const;
  std::vector<std::string> to_ids(const HistorySet& s) const;

  /// Actions of `agent` at m. A missing choice entry is the trivial choice
  /// {H_m}. Throws LookupError for unknown agents or moments.
  std::vector<HistorySet> choice(const std::string& agent, int m) const;

  /// Atoms labelling (m, h). Empty when h does not pass through m.
  const std::vector<std::string>& label(int m, std::size_t h) const;
  bool has_atom(int m, std::size_t h, const std::string& atom) const;
  /// True when the atom is declared or appears in some label.
  bool knows_atom(const std::string& atom) const { return known_atoms_.count(atom) > 0; }

 private:
  ModelData data_;
  std::vector<int> moment_ids_;
  std::map<int, std::size_t> moment_index_;
  std::vector<std::optional<std::size_t>> parent_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<unsigned> depth_;
  std::vector<HistorySet> through_;
  std::vector<std::string> history_ids_;
  std::map<std::string, std::size_t> history_index_;
  std::vector<std::vector<int>> paths_;
  std::vector<Rational> values_;
  std::map<std::pair<std::size_t, std::string>, std::vector<HistorySet>> choices_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> labels_;
  std::map<std::string, int> known_atoms_;
  std::vector<std::string> no_atoms_;
};

/// Structural checks plus the three choice axioms (partition, independence
/// of agents, no choice between undivided histories). Empty iff valid.
std::vector<Violation> validate_model(const ExplicitStitModel& m);

// ------------------------------------------------------------ evaluation

/// Actions of a single agent or of a group at one moment.
struct ActionSet {
  int moment = 0;
  std::vector<std::string> agents;
  std::vector<HistorySet> actions;
};

struct InferenceWitness {
  HistorySet action;
  std::string history;
  int later_moment = 0;
};

struct InferenceResult {
  bool holds = false;
  /// One entry per optimal action when `holds`; otherwise the witnesses
  /// found before the first optimal action without one.
  std::vector<InferenceWitness> witnesses;
  std::string reason;
};

/// Evaluation context. Caches formula extensions per moment, so reuse one
/// Evaluator for many queries against the same model. Not thread-safe;
/// create one per thread (the model itself may be shared).
class Evaluator {
 public:
  explicit Evaluator(const ExplicitStitModel& model);

  const ExplicitStitModel& model() const noexcept { return *model_; }

  /// {h in H_m : m/h |= f}.
  HistorySet extension(int m, const Formula& f);
  HistorySet extension(int m, const Obligation& a) { return extension(m, a.formula()); }

  bool sat(int m, const std::string& h, const Formula& f);
  bool sat(int m, const std::string& h, const Obligation& a) { return sat(m, h, a.formula()); }
  bool sat(int m, const std::string& h, const OughtStatement& o);
  bool sat(int m, const std::string& h, const Statement& s);

  /// Choices of a group: non-empty intersections of one action per member.
  std::vector<HistorySet> group_choice(const std::vector<std::string>& agents, int m);
  /// Non-empty intersections of one action per agent outside `agents`.
  /// {H_m} when there is no such agent.
  std::vector<HistorySet> background_states(const std::vector<std::string>& agents, int m);

  /// Un-dominated actions. With a condition, every comparison is restricted
  /// to |B|_m and actions disjoint from |B|_m are not candidates. Throws
  /// Error("condition unsatisfiable ...") when |B|_m is empty.
  ActionSet optimal_actions(const std::vector<std::string>& agents, int m,
                            const std::optional<Formula>& condition = std::nullopt);

  /// Every optimal (or conditionally optimal) action is inside |body|_m.
  /// Accepts any formula as body, not only obligations. A conditional ought
  /// whose condition has empty extension holds vacuously.
  bool ought_holds(const std::vector<std::string>& agents, int m, const Formula& body,
                   const std::optional<Formula>& condition = std::nullopt);

 private:
  HistorySet compute(std::size_t m, const Formula& f);
  HistorySet cached(std::size_t m, const Formula& f);
  bool at(std::size_t h, std::size_t pos, const Formula& f);
  std::vector<HistorySet> cells(const std::vector<std::string>& agents, std::size_t m);

  const ExplicitStitModel* model_;
  std::map<std::pair<const void*, std::size_t>, std::pair<Formula, HistorySet>> cache_;
  std::map<std::string, bool> warned_;
};

/// K <= K' against the given background states: inside every state, every
/// value in K is at most every value in K'. Empty sides compare vacuously.
bool weakly_dominated(const ExplicitStitModel& m, const HistorySet& k, const HistorySet& k2,
                      const std::vector<HistorySet>& states);
/// K < K': K <= K' and not K' <= K.
bool strictly_dominated(const ExplicitStitModel& m, const HistorySet& k, const HistorySet& k2,
                        const std::vector<HistorySet>& states);

// Convenience wrappers that build a fresh Evaluator per call.

HistorySet histories_through(const ExplicitStitModel& m, int moment);
bool sat_path(const ExplicitStitModel& m, int moment, const std::string& h, const Formula& f);
HistorySet extension(const ExplicitStitModel& m, int moment, const Obligation& a);
bool sat_statement(const ExplicitStitModel& m, int moment, const std::string& h,
                   const Statement& s);
ActionSet optimal_actions(const ExplicitStitModel& m, const std::string& agent, int moment,
                          const std::optional<Obligation>& condition = std::nullopt);
ActionSet optimal_actions(const ExplicitStitModel& m, const std::vector<std::string>& agents,
                          int moment, const std::optional<Obligation>& condition = std::nullopt);

/// For every optimal action K of `agent` at m: |K| >= 2 and some h in K and
/// later moment m' on h have |Choice(m')| >= 2, m/h violating
/// G(!g -> !p), and h outside every optimal action at m'.
InferenceResult check_inference_condition(const ExplicitStitModel& m, const std::string& agent,
                                          int moment, const std::string& g_atom,
                                          const std::string& p_atom);

}  // namespace deontic::tree
