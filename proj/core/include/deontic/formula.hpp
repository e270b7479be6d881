// Formulas, obligations and ought statements.
//
// One immutable AST serves both CTL* state and path formulas; whether a
// formula is used as a state or a path formula is decided by the evaluator
// that consumes it. Stit operators are ordinary nodes whose body must be an
// obligation:
//
//     A ::= phi | [agent dstit: A] | !A          (phi pure CTL*)
//
// Ought statements sit on top and never nest inside formulas:
//
//     O[agent cstit: A]      O[agent cstit: A / B]      O[{a, b} cstit: A]
//
// The text grammar is documented in docs/grammar.md.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace deontic {

enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Next,
  NextPow,            // X^t f
  Until,
  Release,
  Eventually,
  EventuallyBounded,  // F[n:m] f
  Always,
  BoundedRelease,     // left BR[N] right
  ForallPaths,
  ExistsPaths,
  Cstit,
  Dstit,
};

class Obligation;

/// Shared immutable formula node. Copies are cheap; equality is structural.
class Formula {
 public:
  /// The constant `true`.
  Formula();

  Op op() const noexcept;
  /// Atom name for Atom, agent name for Cstit/Dstit, empty otherwise.
  const std::string& name() const noexcept;
  /// NextPow: exponent. EventuallyBounded: lower bound. BoundedRelease: N.
  unsigned lo() const noexcept;
  /// EventuallyBounded: upper bound.
  unsigned hi() const noexcept;

  /// Operand of a unary node, body of a stit node.
  Formula child() const;
  Formula left() const;
  Formula right() const;

  std::size_t arity() const noexcept;

  /// Stable address for identity-keyed caches during a single evaluation.
  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, std::string name, unsigned lo, unsigned hi, const Formula* l,
                      const Formula* r);

  std::shared_ptr<const Node> node_;

  friend struct FormulaFactory;
};

/// Grammar-checked obligation: a pure CTL* formula, a dstit over an
/// obligation, or the negation of an obligation.
class Obligation {
 public:
  enum class Kind { Plain, Dstit, Negated };

  /// Validates `f` against the obligation grammar; throws GrammarError.
  explicit Obligation(Formula f);

  Kind kind() const noexcept { return kind_; }
  const Formula& formula() const noexcept { return formula_; }
  /// Dstit agent. Only meaningful for Kind::Dstit.
  const std::string& agent() const noexcept { return formula_.name(); }
  /// Body of a dstit, operand of a negation.
  Obligation inner() const;

  friend bool operator==(const Obligation& a, const Obligation& b) {
    return a.formula_ == b.formula_;
  }

 private:
  Formula formula_;
  Kind kind_;
};

/// O[agents cstit: body] or O[agents cstit: body / condition].
class OughtStatement {
 public:
  /// Throws GrammarError when `agents` is empty or has duplicates.
  OughtStatement(std::vector<std::string> agents, Obligation body,
                 std::optional<Obligation> condition = std::nullopt);
  OughtStatement(std::string agent, Obligation body,
                 std::optional<Obligation> condition = std::nullopt);

  const std::vector<std::string>& agents() const noexcept { return agents_; }
  bool is_group() const noexcept { return agents_.size() > 1; }
  const Obligation& body() const noexcept { return body_; }
  const std::optional<Obligation>& condition() const noexcept { return condition_; }

  friend bool operator==(const OughtStatement& a, const OughtStatement& b) {
    return a.agents_ == b.agents_ && a.body_ == b.body_ && a.condition_ == b.condition_;
  }

 private:
  std::vector<std::string> agents_;
  Obligation body_;
  std::optional<Obligation> condition_;
};

/// Result of parse(): the most specific production that matched. Pure CTL*
/// text is a Formula; stit text conforming to the obligation grammar is an
/// Obligation; anything else containing stit operators is a Formula.
using Statement = std::variant<Formula, Obligation, OughtStatement>;

/// Builders. Names follow the usual LTL shorthands.
namespace fml {
Formula top();
Formula bottom();
/// Throws std::invalid_argument for empty or reserved names (U, R, BR, ...).
Formula atom(std::string name);
Formula Not(const Formula& f);
Formula And(const Formula& a, const Formula& b);
Formula Or(const Formula& a, const Formula& b);
Formula Implies(const Formula& a, const Formula& b);
Formula X(const Formula& f);
Formula Xn(unsigned t, const Formula& f);
Formula U(const Formula& a, const Formula& b);
Formula R(const Formula& a, const Formula& b);
Formula F(const Formula& f);
/// F[n:m] f. Throws GrammarError unless n <= m.
Formula F(unsigned n, unsigned m, const Formula& f);
Formula G(const Formula& f);
/// left BR[N] right.
Formula BR(unsigned n, const Formula& left, const Formula& right);
Formula A(const Formula& f);
Formula E(const Formula& f);
Formula cstit(std::string agent, const Obligation& body);
Formula dstit(std::string agent, const Obligation& body);
/// Conjunction/disjunction of a list; empty list gives true/false.
Formula all_of(const std::vector<Formula>& fs);
Formula any_of(const std::vector<Formula>& fs);
}  // namespace fml

/// Obligation shorthands.
Obligation plain(const Formula& f);
Obligation dstit(std::string agent, const Obligation& body);
Obligation refrain(std::string agent, const Obligation& body);  // ![agent dstit: body]
Obligation negate(const Obligation& a);

// ---------------------------------------------------------------- queries

bool is_reserved_word(std::string_view word);
/// No cstit/dstit anywhere.
bool is_pure(const Formula& f);
/// Boolean combination of atoms, constants and path-quantified formulas.
bool is_state_formula(const Formula& f);
/// Contains no A/E.
bool is_quantifier_free(const Formula& f);
bool has_bounded_operators(const Formula& f);
std::set<std::string> atoms_of(const Formula& f);
std::size_t depth(const Formula& f);
std::size_t size(const Formula& f);

// ------------------------------------------------------- text and rewrites

/// Throws ParseError (with line/column) or GrammarError.
Statement parse(std::string_view text);
/// Any statement except an ought; obligations come back as their formula.
Formula parse_formula(std::string_view text);
Obligation parse_obligation(std::string_view text);
OughtStatement parse_ought(std::string_view text);

/// Canonical, re-parsable text. parse(render(x)) == x.
std::string render(const Formula& f);
std::string render(const Obligation& a);
std::string render(const OughtStatement& o);
std::string render(const Statement& s);

/// Replaces X^t, F[n:m] and BR[N] by their definitions over X, | and &.
Formula expand_bounded(const Formula& f);
Obligation expand_bounded(const Obligation& a);

/// Collapses [a dstit: [a dstit: A]] and [a dstit: ![a dstit: ![a dstit: A]]]
/// to [a dstit: A] bottom-up until nothing changes. Other agents untouched.
Obligation rewrite_dstit_idempotent(const Obligation& a);

}  // namespace deontic
