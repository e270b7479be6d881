#include <cctype>
#include <string>
#include <vector>

#include "deontic/errors.hpp"
#include "deontic/formula.hpp"

namespace deontic {

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Colon,
  Slash,
  Caret,
  Not,
  And,
  Or,
  Arrow,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < s.size(); ++k, ++i) {
      const auto c = static_cast<unsigned char>(s[i]);
      if (c == '\n') {
        ++line;
        col = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };

  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    const std::size_t l = line;
    const std::size_t k = col;
    auto emit = [&](Tok t, std::size_t n) {
      out.push_back({t, std::string(s.substr(i, n)), l, k});
      advance(n);
    };
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' ||
                              s[j] == '\''))
        ++j;
      emit(Tok::Ident, j - i);
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      emit(Tok::Number, j - i);
    } else if (starts("->")) {
      emit(Tok::Arrow, 2);
    } else if (starts("→")) {
      emit(Tok::Arrow, 3);
    } else if (starts("¬")) {
      emit(Tok::Not, 2);
    } else if (starts("∧")) {
      emit(Tok::And, 3);
    } else if (starts("∨")) {
      emit(Tok::Or, 3);
    } else {
      switch (c) {
        case '(': emit(Tok::LParen, 1); break;
        case ')': emit(Tok::RParen, 1); break;
        case '[': emit(Tok::LBracket, 1); break;
        case ']': emit(Tok::RBracket, 1); break;
        case '{': emit(Tok::LBrace, 1); break;
        case '}': emit(Tok::RBrace, 1); break;
        case ',': emit(Tok::Comma, 1); break;
        case ':': emit(Tok::Colon, 1); break;
        case '/': emit(Tok::Slash, 1); break;
        case '^': emit(Tok::Caret, 1); break;
        case '!': emit(Tok::Not, 1); break;
        case '&': emit(Tok::And, 1); break;
        case '|': emit(Tok::Or, 1); break;
        default:
          throw ParseError(l, k, "unexpected character '" + std::string(1, s[i]) + "'");
      }
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Statement statement() {
    if (at_ought()) {
      OughtStatement o = ought();
      expect(Tok::End);
      return o;
    }
    Formula f = implication();
    expect(Tok::End);
    if (is_pure(f)) return f;
    try {
      return Obligation(f);
    } catch (const GrammarError&) {
      return f;
    }
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t j = pos_ + ahead;
    return j < toks_.size() ? toks_[j] : toks_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(Tok t) {
    if (peek().kind != t) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const Token& t, const std::string& what) const {
    const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.col, "expected " + what + ", found " + found);
  }
  const Token& expect(Tok t) {
    if (peek().kind != t) fail(peek(), describe(t));
    return next();
  }
  bool is_word(const Token& t, std::string_view w) const {
    return t.kind == Tok::Ident && t.text == w;
  }
  bool at_ought() const { return is_word(peek(), "O") && peek(1).kind == Tok::LBracket; }

  // Tokens that can begin a formula. Used to decide whether X, F, G, A, E
  // act as operators or as plain atoms.
  bool starts_formula(std::size_t ahead) const {
    const Token& t = peek(ahead);
    switch (t.kind) {
      case Tok::Ident:
        return t.text != "U" && t.text != "R" && t.text != "BR" && t.text != "cstit" &&
               t.text != "dstit";
      case Tok::LParen:
      case Tok::Not:
      case Tok::LBracket:
        return true;
      default:
        return false;
    }
  }

  unsigned number() {
    const Token& t = expect(Tok::Number);
    if (t.text.size() > 9) throw ParseError(t.line, t.col, "bound too large");
    return static_cast<unsigned>(std::stoul(t.text));
  }

  std::string identifier(const char* what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail(t, what);
    if (is_reserved_word(t.text))
      throw ParseError(t.line, t.col, "reserved word '" + t.text + "' cannot be " + what);
    next();
    return t.text;
  }

  OughtStatement ought() {
    next();  // O
    expect(Tok::LBracket);
    std::vector<std::string> agents;
    if (accept(Tok::LBrace)) {
      agents.push_back(identifier("an agent name"));
      while (accept(Tok::Comma)) agents.push_back(identifier("an agent name"));
      expect(Tok::RBrace);
    } else {
      agents.push_back(identifier("an agent name"));
    }
    if (!is_word(peek(), "cstit")) {
      if (is_word(peek(), "dstit"))
        throw GrammarError("ought", "oughts are defined with cstit only");
      fail(peek(), "'cstit'");
    }
    next();
    expect(Tok::Colon);
    Obligation body = as_obligation(implication(), "ought body");
    std::optional<Obligation> cond;
    if (accept(Tok::Slash)) cond = as_obligation(implication(), "ought condition");
    expect(Tok::RBracket);
    return OughtStatement(std::move(agents), std::move(body), std::move(cond));
  }

  static Obligation as_obligation(const Formula& f, const std::string& production) {
    try {
      return Obligation(f);
    } catch (const GrammarError& e) {
      throw GrammarError(production, e.what());
    }
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return fml::Implies(lhs, implication());
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (accept(Tok::Or)) acc = fml::Or(acc, conjunction());
    return acc;
  }

  Formula conjunction() {
    Formula acc = binary();
    while (accept(Tok::And)) acc = fml::And(acc, binary());
    return acc;
  }

  Formula binary() {
    Formula lhs = unary();
    const Token& t = peek();
    if (is_word(t, "U")) {
      next();
      return fml::U(lhs, binary());
    }
    if (is_word(t, "R")) {
      next();
      return fml::R(lhs, binary());
    }
    if (is_word(t, "BR")) {
      next();
      expect(Tok::LBracket);
      const unsigned n = number();
      expect(Tok::RBracket);
      return fml::BR(n, lhs, binary());
    }
    return lhs;
  }

  Formula unary() {
    const Token& t = peek();
    if (t.kind == Tok::Not) {
      next();
      return fml::Not(unary());
    }
    if (t.kind == Tok::Ident) {
      const bool bounded = peek(1).kind == Tok::LBracket && peek(2).kind == Tok::Number;
      if (t.text == "X") {
        if (bounded) {
          next();
          next();
          const unsigned n = number();
          expect(Tok::RBracket);
          return fml::Xn(n, unary());
        }
        if (peek(1).kind == Tok::Caret) {
          next();
          next();
          const unsigned n = number();
          return fml::Xn(n, unary());
        }
        if (starts_formula(1)) {
          next();
          return fml::X(unary());
        }
      } else if (t.text == "F") {
        if (bounded) {
          next();
          next();
          const Token& at = peek();
          const unsigned lo = number();
          expect(Tok::Colon);
          const unsigned hi = number();
          expect(Tok::RBracket);
          if (lo > hi)
            throw GrammarError("bounded-eventually",
                               std::to_string(at.line) + ":" + std::to_string(at.col) + ": F[" +
                                   std::to_string(lo) + ":" + std::to_string(hi) +
                                   "] needs lower <= upper");
          return fml::F(lo, hi, unary());
        }
        if (starts_formula(1)) {
          next();
          return fml::F(unary());
        }
      } else if (t.text == "G" && starts_formula(1)) {
        next();
        return fml::G(unary());
      } else if (t.text == "A" && starts_formula(1)) {
        next();
        return fml::A(implication());
      } else if (t.text == "E" && starts_formula(1)) {
        next();
        return fml::E(implication());
      }
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        next();
        Formula f = implication();
        expect(Tok::RParen);
        return f;
      }
      case Tok::LBracket:
        return stit();
      case Tok::Ident:
        if (at_ought())
          throw GrammarError("formula", std::to_string(t.line) + ":" + std::to_string(t.col) +
                                            ": an ought cannot appear inside a formula");
        if (t.text == "true") {
          next();
          return fml::top();
        }
        if (t.text == "false") {
          next();
          return fml::bottom();
        }
        if (is_reserved_word(t.text))
          throw ParseError(t.line, t.col, "reserved word '" + t.text + "' used as an atom");
        next();
        return fml::atom(t.text);
      default:
        fail(t, "a formula");
    }
  }

  Formula stit() {
    expect(Tok::LBracket);
    const std::string agent = identifier("an agent name");
    const Token& kw = peek();
    bool deliberative = false;
    if (is_word(kw, "dstit")) {
      deliberative = true;
    } else if (!is_word(kw, "cstit")) {
      fail(kw, "'cstit' or 'dstit'");
    }
    next();
    expect(Tok::Colon);
    Obligation body = as_obligation(implication(), deliberative ? "dstit body" : "cstit body");
    expect(Tok::RBracket);
    return deliberative ? fml::dstit(agent, body) : fml::cstit(agent, body);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Statement parse(std::string_view text) { return Parser(text).statement(); }

Formula parse_formula(std::string_view text) {
  Statement s = parse(text);
  if (auto* f = std::get_if<Formula>(&s)) return *f;
  if (auto* o = std::get_if<Obligation>(&s)) return o->formula();
  throw GrammarError("formula", "expected a formula, got an ought statement");
}

Obligation parse_obligation(std::string_view text) {
  Statement s = parse(text);
  if (auto* o = std::get_if<Obligation>(&s)) return *o;
  if (auto* f = std::get_if<Formula>(&s)) {
    try {
      return Obligation(*f);
    } catch (const GrammarError& e) {
      throw GrammarError("obligation", e.what());
    }
  }
  throw GrammarError("obligation", "expected an obligation, got an ought statement");
}

OughtStatement parse_ought(std::string_view text) {
  Statement s = parse(text);
  if (auto* o = std::get_if<OughtStatement>(&s)) return *o;
  throw GrammarError("ought", "expected O[agent cstit: ...]");
}

}  // namespace deontic
