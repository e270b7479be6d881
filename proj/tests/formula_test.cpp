#include <random>

#include <gtest/gtest.h>

#include "deontic/errors.hpp"
#include "deontic/formula.hpp"
#include "deontic/random.hpp"
#include "deontic/tree_model.hpp"

using namespace deontic;
namespace f = deontic::fml;

TEST(Parse, NegatedCollisionOught) {
  const Statement s = parse("O[alpha cstit: !collision]");
  ASSERT_TRUE(std::holds_alternative<OughtStatement>(s));
  const auto& o = std::get<OughtStatement>(s);
  EXPECT_EQ(o.agents(), std::vector<std::string>{"alpha"});
  EXPECT_EQ(o.body().kind(), Obligation::Kind::Plain);
  EXPECT_EQ(o.body().formula(), f::Not(f::atom("collision")));
  EXPECT_FALSE(o.condition());
}

TEST(Parse, ConditionalRefrainingOught) {
  const auto o = parse_ought("O[alpha cstit: ![alpha dstit: (!p) BR[3] g] / w]");
  const Obligation body = refrain("alpha", plain(f::BR(3, f::Not(f::atom("p")), f::atom("g"))));
  EXPECT_EQ(o.body(), body);
  ASSERT_TRUE(o.condition());
  EXPECT_EQ(o.condition()->formula(), f::atom("w"));
}

TEST(Parse, BoundedEventually) {
  const Formula x = parse_formula("F[0:2] p");
  EXPECT_EQ(x.op(), Op::EventuallyBounded);
  EXPECT_EQ(x.lo(), 0u);
  EXPECT_EQ(x.hi(), 2u);
  EXPECT_EQ(x.child(), f::atom("p"));
}

TEST(Parse, Classification) {
  EXPECT_TRUE(std::holds_alternative<Formula>(parse("G p")));
  EXPECT_TRUE(std::holds_alternative<Obligation>(parse("![a dstit: p]")));
  EXPECT_TRUE(std::holds_alternative<Formula>(parse("[a cstit: p]")));
  EXPECT_TRUE(std::holds_alternative<Formula>(parse("[a dstit: p] & q")));
}

TEST(Parse, Precedence) {
  EXPECT_EQ(parse_formula("!p & q | r -> s"),
            f::Implies(f::Or(f::And(f::Not(f::atom("p")), f::atom("q")), f::atom("r")),
                       f::atom("s")));
  EXPECT_EQ(parse_formula("a -> b -> c"),
            f::Implies(f::atom("a"), f::Implies(f::atom("b"), f::atom("c"))));
  EXPECT_EQ(parse_formula("p U q & r"), f::And(f::U(f::atom("p"), f::atom("q")), f::atom("r")));
  EXPECT_EQ(parse_formula("G p U q"), f::U(f::G(f::atom("p")), f::atom("q")));
  EXPECT_EQ(parse_formula("A G p -> q"), f::A(f::Implies(f::G(f::atom("p")), f::atom("q"))));
  EXPECT_EQ(parse_formula("X^2 p"), f::Xn(2, f::atom("p")));
  EXPECT_EQ(parse_formula("X[3] p"), f::Xn(3, f::atom("p")));
}

TEST(Parse, OperatorLettersAsAtoms) {
  EXPECT_EQ(parse_formula("A"), f::atom("A"));
  EXPECT_EQ(parse_formula("X & G"), f::And(f::atom("X"), f::atom("G")));
  EXPECT_EQ(parse_formula("F F"), f::F(f::atom("F")));
  EXPECT_EQ(parse_ought("O[alpha cstit: A]").body().formula(), f::atom("A"));
}

TEST(Parse, UnicodeConnectives) {
  EXPECT_EQ(parse_formula("¬p ∧ q → r ∨ s"),
            f::Implies(f::And(f::Not(f::atom("p")), f::atom("q")), f::Or(f::atom("r"), f::atom("s"))));
}

TEST(Parse, GroupOught) {
  const auto o = parse_ought("O[{alpha, beta} cstit: E (g_alpha | g_beta)]");
  EXPECT_EQ(o.agents(), (std::vector<std::string>{"alpha", "beta"}));
  EXPECT_TRUE(o.is_group());
}

TEST(ParseErrors, SyntaxErrorHasPosition) {
  try {
    parse("p &\n  & q");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(parse("(p"), ParseError);
  EXPECT_THROW(parse("p q"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("p $ q"), ParseError);
}

TEST(ParseErrors, GrammarViolationsNameTheProduction) {
  auto production = [](const char* text) {
    try {
      parse(text);
    } catch (const GrammarError& e) {
      return e.production();
    }
    return std::string("none");
  };
  EXPECT_EQ(production("p & O[a cstit: q]"), "formula");
  EXPECT_EQ(production("O[a dstit: q]"), "ought");
  EXPECT_EQ(production("[a dstit: [b cstit: p]]"), "dstit body");
  EXPECT_EQ(production("O[a cstit: [a cstit: p]]"), "ought body");
  EXPECT_EQ(production("O[a cstit: p / [a dstit: p] & q]"), "ought condition");
  EXPECT_EQ(production("F[3:1] p"), "bounded-eventually");
  EXPECT_EQ(production("O[{a, a} cstit: p]"), "ought");
}

TEST(Render, Examples) {
  EXPECT_EQ(render(dstit("alpha", plain(f::atom("p")))), "[alpha dstit: p]");
  EXPECT_EQ(render(f::And(f::atom("a"), f::atom("b"))), "(a & b)");
  EXPECT_EQ(render(f::BR(3, f::atom("g"), f::atom("q"))), "g BR[3] q");
  EXPECT_EQ(render(parse_ought("O[alpha cstit: ![alpha dstit: hit_from_behind]]")),
            "O[alpha cstit: ![alpha dstit: hit_from_behind]]");
  EXPECT_EQ(render(parse("O[{a,b} cstit: p / q]")), "O[{a, b} cstit: p / q]");
}

TEST(Render, RoundTripRandomFormulas) {
  std::mt19937_64 rng(7);
  random::FormulaBounds b;
  b.max_depth = 6;
  b.quantifiers = true;
  b.bounded = true;
  b.atoms = {"p", "q", "A", "X", "r1"};
  for (int i = 0; i < 2000; ++i) {
    const Formula x = random::formula(rng, b);
    const std::string text = render(x);
    ASSERT_EQ(parse_formula(text), x) << text;
  }
}

TEST(Render, RoundTripRandomOughts) {
  std::mt19937_64 rng(8);
  random::FormulaBounds b;
  b.max_depth = 3;
  b.quantifiers = true;
  b.bounded = true;
  for (int i = 0; i < 500; ++i) {
    const Obligation body = random::obligation(rng, {"alpha", "beta"}, 3, b);
    const Obligation cond = random::obligation(rng, {"alpha"}, 2, b);
    const OughtStatement o("alpha", body, i % 2 ? std::optional<Obligation>(cond) : std::nullopt);
    const std::string text = render(o);
    ASSERT_EQ(parse_ought(text), o) << text;
    ASSERT_EQ(parse_obligation(render(body)), body) << render(body);
  }
}

TEST(Obligations, GrammarIsEnforced) {
  EXPECT_NO_THROW(Obligation(parse_formula("!![a dstit: ![b dstit: G p]]")));
  EXPECT_THROW(Obligation(parse_formula("[a dstit: p] & q")), GrammarError);
  EXPECT_THROW(Obligation(parse_formula("[a cstit: p]")), GrammarError);
  EXPECT_EQ(Obligation(parse_formula("!p")).kind(), Obligation::Kind::Plain);
  EXPECT_EQ(Obligation(parse_formula("![a dstit: p]")).kind(), Obligation::Kind::Negated);
}

TEST(Builders, RejectBadNames) {
  EXPECT_THROW(f::atom("U"), std::invalid_argument);
  EXPECT_THROW(f::atom("dstit"), std::invalid_argument);
  EXPECT_THROW(f::atom(""), std::invalid_argument);
  EXPECT_THROW(f::atom("a b"), std::invalid_argument);
  EXPECT_NO_THROW(f::atom("O"));
  EXPECT_THROW(OughtStatement(std::vector<std::string>{}, plain(f::top())), GrammarError);
}

TEST(Queries, Basics) {
  const Formula x = parse_formula("A G (p -> F[1:2] q)");
  EXPECT_TRUE(is_pure(x));
  EXPECT_TRUE(is_state_formula(x));
  EXPECT_FALSE(is_quantifier_free(x));
  EXPECT_TRUE(has_bounded_operators(x));
  EXPECT_EQ(atoms_of(x), (std::set<std::string>{"p", "q"}));
  EXPECT_FALSE(is_state_formula(parse_formula("G p")));
  EXPECT_FALSE(is_pure(parse_formula("[a dstit: p]")));
}

TEST(ExpandBounded, Examples) {
  const Formula p = f::atom("p");
  EXPECT_EQ(expand_bounded(f::F(0, 1, p)), f::Or(p, f::X(p)));
  EXPECT_EQ(expand_bounded(f::Xn(2, p)), f::X(f::X(p)));
  const Formula psi = f::atom("psi"), phi = f::atom("phi");
  EXPECT_EQ(expand_bounded(f::BR(0, psi, phi)), f::Or(psi, phi));
  EXPECT_FALSE(has_bounded_operators(expand_bounded(parse_formula("A (p BR[2] X^3 F[1:4] q)"))));
}

TEST(ExpandBounded, ZeroStepReleaseTruthTable) {
  // psi BR[0] phi on one-step traces agrees with psi | phi.
  for (int bits = 0; bits < 4; ++bits) {
    tree::ModelData d;
    d.agents = {"alpha"};
    d.atoms = {"psi", "phi"};
    d.moments = {{0, std::nullopt}};
    d.histories = {{"h", {0}, Rational(0)}};
    std::vector<std::string> atoms;
    if (bits & 1) atoms.push_back("psi");
    if (bits & 2) atoms.push_back("phi");
    d.labels = {{0, std::nullopt, atoms}};
    const tree::ExplicitStitModel m(d);
    const Formula br = parse_formula("psi BR[0] phi");
    EXPECT_EQ(tree::sat_path(m, 0, "h", br), (bits & 1) || (bits & 2));
    EXPECT_EQ(tree::sat_path(m, 0, "h", expand_bounded(br)), (bits & 1) || (bits & 2));
  }
}

// A single-history model with random labels along a path of `len` moments.
static tree::ExplicitStitModel random_trace(std::mt19937_64& rng, unsigned len) {
  tree::ModelData d;
  d.agents = {"alpha"};
  d.atoms = {"p", "q"};
  std::vector<int> path;
  for (unsigned i = 0; i < len; ++i) {
    d.moments.push_back({static_cast<int>(i), i ? std::optional<int>(static_cast<int>(i) - 1)
                                                : std::nullopt});
    path.push_back(static_cast<int>(i));
    std::vector<std::string> atoms;
    if (rng() % 2) atoms.push_back("p");
    if (rng() % 2) atoms.push_back("q");
    d.labels.push_back({static_cast<int>(i), std::nullopt, atoms});
  }
  d.histories = {{"h", path, Rational(0)}};
  return tree::ExplicitStitModel(d);
}

TEST(ExpandBounded, PreservesSemanticsOnRandomTraces) {
  std::mt19937_64 rng(11);
  random::FormulaBounds b;
  b.max_depth = 4;
  b.bounded = true;
  b.max_horizon = 3;
  for (int i = 0; i < 1500; ++i) {
    const Formula x = random::formula(rng, b);
    const auto m = random_trace(rng, 1 + static_cast<unsigned>(rng() % (b.max_horizon + 2)));
    for (std::size_t k = 0; k < m.moment_count(); ++k) {
      const int at = m.moment_id(k);
      ASSERT_EQ(tree::sat_path(m, at, "h", x), tree::sat_path(m, at, "h", expand_bounded(x)))
          << render(x);
    }
  }
}

TEST(DstitRewrite, Examples) {
  EXPECT_EQ(render(rewrite_dstit_idempotent(parse_obligation("[a dstit: [a dstit: p]]"))),
            "[a dstit: p]");
  EXPECT_EQ(render(rewrite_dstit_idempotent(parse_obligation("[a dstit: ![a dstit: ![a dstit: p]]]"))),
            "[a dstit: p]");
  EXPECT_EQ(render(rewrite_dstit_idempotent(parse_obligation("[a dstit: [b dstit: p]]"))),
            "[a dstit: [b dstit: p]]");
  EXPECT_EQ(render(rewrite_dstit_idempotent(
                parse_obligation("![a dstit: [a dstit: [a dstit: ![a dstit: ![a dstit: q]]]]]"))),
            "![a dstit: q]");
}

TEST(DstitRewrite, PreservesSemanticsOnRandomModels) {
  std::mt19937_64 rng(12);
  random::FormulaBounds fb;
  fb.max_depth = 2;
  for (int i = 0; i < 300; ++i) {
    const tree::ExplicitStitModel m(random::model(rng));
    tree::Evaluator ev(m);
    const Obligation a = random::obligation(rng, m.agents(), 4, fb);
    const Obligation r = rewrite_dstit_idempotent(a);
    for (std::size_t k = 0; k < m.moment_count(); ++k) {
      const int at = m.moment_id(k);
      ASSERT_EQ(ev.extension(at, a), ev.extension(at, r)) << render(a) << " vs " << render(r);
    }
  }
}
