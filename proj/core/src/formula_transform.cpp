#include "deontic/formula.hpp"

namespace deontic {

namespace {

Formula next_pow(unsigned t, Formula f) {
  for (unsigned i = 0; i < t; ++i) f = fml::X(f);
  return f;
}

Formula expand(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return f;
    case Op::NextPow:
      return next_pow(f.lo(), expand(f.child()));
    case Op::EventuallyBounded: {
      const Formula body = expand(f.child());
      std::vector<Formula> terms;
      for (unsigned t = f.lo(); t <= f.hi(); ++t) terms.push_back(next_pow(t, body));
      return fml::any_of(terms);
    }
    case Op::BoundedRelease: {
      // left BR[N] right: left holds within N steps while right holds
      // up to that point, or right holds for N+1 steps.
      const Formula released = expand(f.left());
      const Formula held = expand(f.right());
      const unsigned n = f.lo();
      std::vector<Formula> terms;
      for (unsigned k = 0; k <= n; ++k) {
        std::vector<Formula> conj;
        for (unsigned i = 0; i < k; ++i) conj.push_back(next_pow(i, held));
        conj.push_back(next_pow(k, released));
        terms.push_back(fml::all_of(conj));
      }
      std::vector<Formula> always;
      for (unsigned i = 0; i <= n; ++i) always.push_back(next_pow(i, held));
      terms.push_back(fml::all_of(always));
      return fml::any_of(terms);
    }
    case Op::Not: return fml::Not(expand(f.child()));
    case Op::Next: return fml::X(expand(f.child()));
    case Op::Eventually: return fml::F(expand(f.child()));
    case Op::Always: return fml::G(expand(f.child()));
    case Op::ForallPaths: return fml::A(expand(f.child()));
    case Op::ExistsPaths: return fml::E(expand(f.child()));
    case Op::And: return fml::And(expand(f.left()), expand(f.right()));
    case Op::Or: return fml::Or(expand(f.left()), expand(f.right()));
    case Op::Implies: return fml::Implies(expand(f.left()), expand(f.right()));
    case Op::Until: return fml::U(expand(f.left()), expand(f.right()));
    case Op::Release: return fml::R(expand(f.left()), expand(f.right()));
    case Op::Cstit: return fml::cstit(f.name(), Obligation(expand(f.child())));
    case Op::Dstit: return fml::dstit(f.name(), Obligation(expand(f.child())));
  }
  return f;
}

// Matches ![a dstit: ![a dstit: C]] and returns C.
std::optional<Obligation> double_refrain_body(const Obligation& b, const std::string& agent) {
  if (b.kind() != Obligation::Kind::Negated) return std::nullopt;
  const Obligation d1 = b.inner();
  if (d1.kind() != Obligation::Kind::Dstit || d1.agent() != agent) return std::nullopt;
  const Obligation n2 = d1.inner();
  if (n2.kind() != Obligation::Kind::Negated) return std::nullopt;
  const Obligation d2 = n2.inner();
  if (d2.kind() != Obligation::Kind::Dstit || d2.agent() != agent) return std::nullopt;
  return d2.inner();
}

}  // namespace

Formula expand_bounded(const Formula& f) { return expand(f); }

Obligation expand_bounded(const Obligation& a) { return Obligation(expand(a.formula())); }

Obligation rewrite_dstit_idempotent(const Obligation& a) {
  switch (a.kind()) {
    case Obligation::Kind::Plain:
      return a;
    case Obligation::Kind::Negated:
      return negate(rewrite_dstit_idempotent(a.inner()));
    case Obligation::Kind::Dstit:
      break;
  }
  const std::string agent = a.agent();
  Obligation body = rewrite_dstit_idempotent(a.inner());
  for (;;) {
    if (body.kind() == Obligation::Kind::Dstit && body.agent() == agent) {
      body = body.inner();
    } else if (auto c = double_refrain_body(body, agent)) {
      body = *c;
    } else {
      break;
    }
  }
  return dstit(agent, body);
}

}  // namespace deontic
