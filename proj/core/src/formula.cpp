#include "deontic/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

#include "deontic/errors.hpp"

namespace deontic {

struct Formula::Node {
  Op op = Op::True;
  std::string name;
  unsigned lo = 0;
  unsigned hi = 0;
  std::shared_ptr<const Node> l;
  std::shared_ptr<const Node> r;
};

struct FormulaFactory {
  static Formula make(Op op, std::string name, unsigned lo, unsigned hi, const Formula* l,
                      const Formula* r) {
    return Formula::make(op, std::move(name), lo, hi, l, r);
  }
};

Formula::Formula() {
  static const std::shared_ptr<const Node> true_node = std::make_shared<const Node>();
  node_ = true_node;
}

Formula Formula::make(Op op, std::string name, unsigned lo, unsigned hi, const Formula* l,
                      const Formula* r) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->name = std::move(name);
  n->lo = lo;
  n->hi = hi;
  if (l) n->l = l->node_;
  if (r) n->r = r->node_;
  return Formula(std::move(n));
}

Op Formula::op() const noexcept { return node_->op; }
const std::string& Formula::name() const noexcept { return node_->name; }
unsigned Formula::lo() const noexcept { return node_->lo; }
unsigned Formula::hi() const noexcept { return node_->hi; }

Formula Formula::child() const {
  if (!node_->l) throw std::logic_error("formula node has no child");
  return Formula(node_->l);
}
Formula Formula::left() const { return child(); }
Formula Formula::right() const {
  if (!node_->r) throw std::logic_error("formula node has no right operand");
  return Formula(node_->r);
}

std::size_t Formula::arity() const noexcept {
  return (node_->l ? 1 : 0) + (node_->r ? 1 : 0);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.op != y.op || x.name != y.name || x.lo != y.lo || x.hi != y.hi) return false;
  if (static_cast<bool>(x.l) != static_cast<bool>(y.l)) return false;
  if (static_cast<bool>(x.r) != static_cast<bool>(y.r)) return false;
  if (x.l && !(a.child() == b.child())) return false;
  if (x.r && !(a.right() == b.right())) return false;
  return true;
}

// ------------------------------------------------------------ obligations

namespace {

// Identifiers as the lexer reads them. "$<digits>" names are the fresh
// atoms the model checker introduces; text can never produce them.
bool is_name(const std::string& s) {
  if (s.empty()) return false;
  if (s[0] == '$')
    return s.size() > 1 && std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; });
  auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto tail = [&](char c) {
    return head(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '\'';
  };
  return head(s[0]) && std::all_of(s.begin() + 1, s.end(), tail) && !is_reserved_word(s);
}

Obligation::Kind classify_obligation(const Formula& f) {
  if (is_pure(f)) return Obligation::Kind::Plain;
  if (f.op() == Op::Dstit) {
    // Body was checked when the node was built.
    return Obligation::Kind::Dstit;
  }
  if (f.op() == Op::Not) {
    (void)classify_obligation(f.child());
    return Obligation::Kind::Negated;
  }
  if (f.op() == Op::Cstit)
    throw GrammarError("obligation", "cstit is not an obligation; only dstit may nest");
  throw GrammarError("obligation",
                     "stit operators may only appear as [agent dstit: A] or !A, not under a "
                     "temporal or boolean connective");
}

}  // namespace

Obligation::Obligation(Formula f) : formula_(std::move(f)), kind_(classify_obligation(formula_)) {}

Obligation Obligation::inner() const {
  switch (kind_) {
    case Kind::Dstit:
    case Kind::Negated:
      return Obligation(formula_.child());
    case Kind::Plain:
      break;
  }
  throw std::logic_error("plain obligation has no inner obligation");
}

OughtStatement::OughtStatement(std::vector<std::string> agents, Obligation body,
                               std::optional<Obligation> condition)
    : agents_(std::move(agents)), body_(std::move(body)), condition_(std::move(condition)) {
  if (agents_.empty()) throw GrammarError("ought", "agent list is empty");
  std::vector<std::string> sorted = agents_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw GrammarError("ought", "agent list has duplicates");
  for (const auto& a : agents_)
    if (!is_name(a) || a[0] == '$') throw GrammarError("ought", "bad agent name '" + a + "'");
}

OughtStatement::OughtStatement(std::string agent, Obligation body,
                               std::optional<Obligation> condition)
    : OughtStatement(std::vector<std::string>{std::move(agent)}, std::move(body),
                     std::move(condition)) {}

// ---------------------------------------------------------------- builders

namespace fml {

Formula top() { return Formula(); }
Formula bottom() { return FormulaFactory::make(Op::False, {}, 0, 0, nullptr, nullptr); }

Formula atom(std::string name) {
  if (!is_name(name)) throw std::invalid_argument("bad atom name '" + name + "'");
  return FormulaFactory::make(Op::Atom, std::move(name), 0, 0, nullptr, nullptr);
}

namespace {
Formula unary(Op op, const Formula& f, unsigned lo = 0, unsigned hi = 0) {
  return FormulaFactory::make(op, {}, lo, hi, &f, nullptr);
}
Formula binary(Op op, const Formula& a, const Formula& b, unsigned lo = 0) {
  return FormulaFactory::make(op, {}, lo, 0, &a, &b);
}
}  // namespace

Formula Not(const Formula& f) { return unary(Op::Not, f); }
Formula And(const Formula& a, const Formula& b) { return binary(Op::And, a, b); }
Formula Or(const Formula& a, const Formula& b) { return binary(Op::Or, a, b); }
Formula Implies(const Formula& a, const Formula& b) { return binary(Op::Implies, a, b); }
Formula X(const Formula& f) { return unary(Op::Next, f); }
Formula Xn(unsigned t, const Formula& f) { return unary(Op::NextPow, f, t); }
Formula U(const Formula& a, const Formula& b) { return binary(Op::Until, a, b); }
Formula R(const Formula& a, const Formula& b) { return binary(Op::Release, a, b); }
Formula F(const Formula& f) { return unary(Op::Eventually, f); }
Formula F(unsigned n, unsigned m, const Formula& f) {
  if (n > m)
    throw GrammarError("bounded-eventually",
                       "F[" + std::to_string(n) + ":" + std::to_string(m) + "] needs n <= m");
  return unary(Op::EventuallyBounded, f, n, m);
}
Formula G(const Formula& f) { return unary(Op::Always, f); }
Formula BR(unsigned n, const Formula& left, const Formula& right) {
  return binary(Op::BoundedRelease, left, right, n);
}
Formula A(const Formula& f) { return unary(Op::ForallPaths, f); }
Formula E(const Formula& f) { return unary(Op::ExistsPaths, f); }

Formula cstit(std::string agent, const Obligation& body) {
  if (!is_name(agent) || agent[0] == '$')
    throw std::invalid_argument("bad agent name '" + agent + "'");
  const Formula& b = body.formula();
  return FormulaFactory::make(Op::Cstit, std::move(agent), 0, 0, &b, nullptr);
}

Formula dstit(std::string agent, const Obligation& body) {
  if (!is_name(agent) || agent[0] == '$')
    throw std::invalid_argument("bad agent name '" + agent + "'");
  const Formula& b = body.formula();
  return FormulaFactory::make(Op::Dstit, std::move(agent), 0, 0, &b, nullptr);
}

Formula all_of(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = And(acc, fs[i]);
  return acc;
}

Formula any_of(const std::vector<Formula>& fs) {
  if (fs.empty()) return bottom();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Or(acc, fs[i]);
  return acc;
}

}  // namespace fml

Obligation plain(const Formula& f) {
  if (!is_pure(f)) throw GrammarError("obligation", "plain obligation must be pure CTL*");
  return Obligation(f);
}

Obligation dstit(std::string agent, const Obligation& body) {
  return Obligation(fml::dstit(std::move(agent), body));
}

Obligation negate(const Obligation& a) { return Obligation(fml::Not(a.formula())); }

Obligation refrain(std::string agent, const Obligation& body) {
  return negate(dstit(std::move(agent), body));
}

// ---------------------------------------------------------------- queries

bool is_reserved_word(std::string_view w) {
  static constexpr std::array<std::string_view, 7> reserved = {"U",     "R",     "BR",   "true",
                                                               "false", "cstit", "dstit"};
  return std::find(reserved.begin(), reserved.end(), w) != reserved.end();
}

bool is_pure(const Formula& f) {
  if (f.op() == Op::Cstit || f.op() == Op::Dstit) return false;
  if (f.arity() >= 1 && !is_pure(f.child())) return false;
  if (f.arity() == 2 && !is_pure(f.right())) return false;
  return true;
}

bool is_state_formula(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
    case Op::ForallPaths:
    case Op::ExistsPaths:
    case Op::Cstit:
    case Op::Dstit:
      return true;
    case Op::Not:
      return is_state_formula(f.child());
    case Op::And:
    case Op::Or:
    case Op::Implies:
      return is_state_formula(f.left()) && is_state_formula(f.right());
    default:
      return false;
  }
}

bool is_quantifier_free(const Formula& f) {
  if (f.op() == Op::ForallPaths || f.op() == Op::ExistsPaths) return false;
  if (f.arity() >= 1 && !is_quantifier_free(f.child())) return false;
  if (f.arity() == 2 && !is_quantifier_free(f.right())) return false;
  return true;
}

bool has_bounded_operators(const Formula& f) {
  if (f.op() == Op::NextPow || f.op() == Op::EventuallyBounded || f.op() == Op::BoundedRelease)
    return true;
  if (f.arity() >= 1 && has_bounded_operators(f.child())) return true;
  if (f.arity() == 2 && has_bounded_operators(f.right())) return true;
  return false;
}

namespace {
void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.op() == Op::Atom) out.insert(f.name());
  if (f.arity() >= 1) collect_atoms(f.child(), out);
  if (f.arity() == 2) collect_atoms(f.right(), out);
}
}  // namespace

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::size_t depth(const Formula& f) {
  std::size_t d = 0;
  if (f.arity() >= 1) d = depth(f.child());
  if (f.arity() == 2) d = std::max(d, depth(f.right()));
  return f.arity() == 0 ? 0 : d + 1;
}

std::size_t size(const Formula& f) {
  std::size_t n = 1;
  if (f.arity() >= 1) n += size(f.child());
  if (f.arity() == 2) n += size(f.right());
  return n;
}

}  // namespace deontic
