#include <string>

#include "deontic/formula.hpp"

namespace deontic {

namespace {

bool is_quantifier(Op op) { return op == Op::ForallPaths || op == Op::ExistsPaths; }

bool is_binary_temporal(Op op) {
  return op == Op::Until || op == Op::Release || op == Op::BoundedRelease;
}

// Nodes whose rendering is self-delimiting in every position.
bool is_closed(Op op) {
  switch (op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
    case Op::Cstit:
    case Op::Dstit:
    case Op::And:
    case Op::Or:
    case Op::Implies:
      return true;
    default:
      return false;
  }
}

std::string text(const Formula& f);

std::string wrapped(const Formula& f) { return "(" + text(f) + ")"; }

std::string prefix_operand(const Formula& f) {
  return is_binary_temporal(f.op()) || is_quantifier(f.op()) ? wrapped(f) : text(f);
}

std::string binary_operand(const Formula& f) { return is_closed(f.op()) ? text(f) : wrapped(f); }

std::string connective_operand(const Formula& f) {
  return is_quantifier(f.op()) ? wrapped(f) : text(f);
}

std::string text(const Formula& f) {
  switch (f.op()) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return f.name();
    case Op::Not: return "!" + prefix_operand(f.child());
    case Op::And:
      return "(" + connective_operand(f.left()) + " & " + connective_operand(f.right()) + ")";
    case Op::Or:
      return "(" + connective_operand(f.left()) + " | " + connective_operand(f.right()) + ")";
    case Op::Implies:
      return "(" + connective_operand(f.left()) + " -> " + connective_operand(f.right()) + ")";
    case Op::Next: return "X " + prefix_operand(f.child());
    case Op::NextPow: return "X[" + std::to_string(f.lo()) + "] " + prefix_operand(f.child());
    case Op::Eventually: return "F " + prefix_operand(f.child());
    case Op::EventuallyBounded:
      return "F[" + std::to_string(f.lo()) + ":" + std::to_string(f.hi()) + "] " +
             prefix_operand(f.child());
    case Op::Always: return "G " + prefix_operand(f.child());
    case Op::Until: return binary_operand(f.left()) + " U " + binary_operand(f.right());
    case Op::Release: return binary_operand(f.left()) + " R " + binary_operand(f.right());
    case Op::BoundedRelease:
      return binary_operand(f.left()) + " BR[" + std::to_string(f.lo()) + "] " +
             binary_operand(f.right());
    case Op::ForallPaths: return "A " + text(f.child());
    case Op::ExistsPaths: return "E " + text(f.child());
    case Op::Cstit: return "[" + f.name() + " cstit: " + text(f.child()) + "]";
    case Op::Dstit: return "[" + f.name() + " dstit: " + text(f.child()) + "]";
  }
  return "?";
}

}  // namespace

std::string render(const Formula& f) { return text(f); }

std::string render(const Obligation& a) { return text(a.formula()); }

std::string render(const OughtStatement& o) {
  std::string who;
  if (o.is_group()) {
    who = "{";
    for (std::size_t i = 0; i < o.agents().size(); ++i) {
      if (i) who += ", ";
      who += o.agents()[i];
    }
    who += "}";
  } else {
    who = o.agents().front();
  }
  std::string out = "O[" + who + " cstit: " + render(o.body());
  if (o.condition()) out += " / " + render(*o.condition());
  return out + "]";
}

std::string render(const Statement& s) {
  return std::visit([](const auto& x) { return render(x); }, s);
}

}  // namespace deontic
