#include <cctype>
#include <string>
#include <vector>

#include "typdeg/error.hpp"
#include "typdeg/formula.hpp"

namespace typdeg::logic {

namespace {

enum class Tok {
  LParen, RParen, Comma, Dot,
  Bang, NotEqual, Equal,
  And, Or, Implies, Iff,
  Forall, Exists, ExistsUnique,
  Pred, Edge, Func, Var,
  End,
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
  int index = 0;  // predicate index for Tok::Pred
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Bang: return "'!'";
    case Tok::NotEqual: return "'!='";
    case Tok::Equal: return "'='";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Forall: return "'forall'";
    case Tok::Exists: return "'exists'";
    case Tok::ExistsUnique: return "'exists!'";
    case Tok::Pred: return "predicate";
    case Tok::Edge: return "'E'";
    case Tok::Func: return "'F'";
    case Tok::Var: return "variable";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto syntax = [&](std::size_t pos, const std::string& msg) { return ParseError(ErrorKind::Syntax, pos, msg); };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    switch (c) {
      case '(': out.push_back({Tok::LParen, start, "("}); ++i; continue;
      case ')': out.push_back({Tok::RParen, start, ")"}); ++i; continue;
      case ',': out.push_back({Tok::Comma, start, ","}); ++i; continue;
      case '.': out.push_back({Tok::Dot, start, "."}); ++i; continue;
      case '&': out.push_back({Tok::And, start, "&"}); ++i; continue;
      case '|': out.push_back({Tok::Or, start, "|"}); ++i; continue;
      case '=': out.push_back({Tok::Equal, start, "="}); ++i; continue;
      case '!':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          out.push_back({Tok::NotEqual, start, "!="});
          i += 2;
        } else {
          out.push_back({Tok::Bang, start, "!"});
          ++i;
        }
        continue;
      case '-':
        if (s.compare(i, 2, "->") == 0) {
          out.push_back({Tok::Implies, start, "->"});
          i += 2;
          continue;
        }
        throw syntax(start, "expected '->'");
      case '<':
        if (s.compare(i, 3, "<->") == 0) {
          out.push_back({Tok::Iff, start, "<->"});
          i += 3;
          continue;
        }
        throw syntax(start, "expected '<->'");
      default:
        break;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw syntax(start, std::string("unexpected character '") + c + "'");
    }
    std::size_t j = i;
    while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
    std::string word = s.substr(i, j - i);
    if (word.size() > 1) {
      if (word == "forall") {
        out.push_back({Tok::Forall, start, word});
      } else if (word == "exists") {
        if (j < s.size() && s[j] == '!' && !(j + 1 < s.size() && s[j + 1] == '=')) {
          out.push_back({Tok::ExistsUnique, start, "exists!"});
          ++j;
        } else {
          out.push_back({Tok::Exists, start, word});
        }
      } else {
        throw syntax(start, "unknown word '" + word + "'");
      }
      i = j;
      continue;
    }
    std::size_t d = j;
    while (d < s.size() && std::isdigit(static_cast<unsigned char>(s[d]))) ++d;
    std::string digits = s.substr(j, d - j);
    if (c == 'U') {
      if (digits.empty()) throw syntax(start, "predicate symbol U needs an index, e.g. U1");
      if (digits.size() > 6) throw syntax(start, "predicate index too large");
      Token t{Tok::Pred, start, s.substr(start, d - start)};
      t.index = std::stoi(digits);
      out.push_back(t);
    } else if (c == 'E' || c == 'F') {
      if (!digits.empty()) throw syntax(start, std::string("'") + c + "' is reserved and cannot name a variable");
      out.push_back({c == 'E' ? Tok::Edge : Tok::Func, start, std::string(1, c)});
    } else {
      out.push_back({Tok::Var, start, s.substr(start, d - start)});
    }
    i = d;
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Signature& sig) : toks_(std::move(tokens)), sig_(sig) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::End) {
      throw ParseError(ErrorKind::Syntax, peek().pos, std::string("unexpected ") + describe(peek().kind));
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  const Token& expect(Tok kind) {
    if (peek().kind != kind) {
      throw ParseError(ErrorKind::Syntax, peek().pos,
                       std::string("expected ") + describe(kind) + ", found " + describe(peek().kind));
    }
    return next();
  }

  Formula formula() { return iff(); }

  Formula iff() {
    Formula f = imp();
    while (peek().kind == Tok::Iff) {
      next();
      f = Formula::biconditional(f, imp());
    }
    return f;
  }

  // Implication associates to the right: a -> b -> c is a -> (b -> c).
  Formula imp() {
    Formula f = disj();
    if (peek().kind == Tok::Implies) {
      next();
      return Formula::implication(f, imp());
    }
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (peek().kind == Tok::Or) {
      next();
      f = Formula::disjunction(f, conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (peek().kind == Tok::And) {
      next();
      f = Formula::conjunction(f, unary());
    }
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Bang:
        next();
        return Formula::negation(unary());
      case Tok::Forall:
      case Tok::Exists:
      case Tok::ExistsUnique: {
        next();
        std::string var = expect(Tok::Var).text;
        expect(Tok::Dot);
        Op op = t.kind == Tok::Forall ? Op::Forall : t.kind == Tok::Exists ? Op::Exists : Op::ExistsUnique;
        return Formula::quantified(op, var, unary());
      }
      case Tok::LParen: {
        next();
        Formula f = formula();
        expect(Tok::RParen);
        return f;
      }
      case Tok::Pred:
        return predicate_atom();
      case Tok::Edge:
        return edge_atom();
      default:
        return equality_atom();
    }
  }

  Formula predicate_atom() {
    const Token& t = next();
    if (sig_.family() != Family::UnaryPredicates) {
      throw ParseError(ErrorKind::UnknownSymbol, t.pos, "predicate " + t.text + " is not in signature " + sig_.to_string());
    }
    if (t.index < 1 || t.index > sig_.k()) {
      throw ParseError(ErrorKind::UnknownSymbol, t.pos,
                       "predicate " + t.text + " is out of range for k=" + std::to_string(sig_.k()));
    }
    expect(Tok::LParen);
    Term arg = term();
    if (peek().kind == Tok::Comma) {
      throw ParseError(ErrorKind::Arity, peek().pos, "predicate " + t.text + " takes exactly one argument");
    }
    expect(Tok::RParen);
    return Formula::predicate(t.index, arg);
  }

  Formula edge_atom() {
    const Token& t = next();
    if (sig_.family() != Family::Graph) {
      throw ParseError(ErrorKind::UnknownSymbol, t.pos, "relation E is not in signature " + sig_.to_string());
    }
    expect(Tok::LParen);
    Term a = term();
    if (peek().kind == Tok::RParen) {
      throw ParseError(ErrorKind::Arity, peek().pos, "relation E takes exactly two arguments");
    }
    expect(Tok::Comma);
    Term b = term();
    if (peek().kind == Tok::Comma) {
      throw ParseError(ErrorKind::Arity, peek().pos, "relation E takes exactly two arguments");
    }
    expect(Tok::RParen);
    return Formula::edge(a, b);
  }

  Formula equality_atom() {
    Term a = term();
    const Token& rel = peek();
    if (rel.kind == Tok::Equal) {
      next();
      return Formula::equal(a, term());
    }
    if (rel.kind == Tok::NotEqual) {
      next();
      return Formula::negation(Formula::equal(a, term()));
    }
    throw ParseError(ErrorKind::Syntax, rel.pos, std::string("expected '=' or '!=', found ") + describe(rel.kind));
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::Var) {
      next();
      return Term{t.text, 0};
    }
    if (t.kind == Tok::Func) {
      next();
      if (sig_.family() != Family::UnaryFunction) {
        throw ParseError(ErrorKind::UnknownSymbol, t.pos, "function symbol F is not in signature " + sig_.to_string());
      }
      expect(Tok::LParen);
      Term inner = term();
      if (peek().kind == Tok::Comma) {
        throw ParseError(ErrorKind::Arity, peek().pos, "function F takes exactly one argument");
      }
      expect(Tok::RParen);
      return Term{inner.variable, inner.depth + 1};
    }
    throw ParseError(ErrorKind::Syntax, t.pos, std::string("expected a term, found ") + describe(t.kind));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
};

enum Level { kIff = 1, kImplies = 2, kOr = 3, kAnd = 4, kUnary = 5 };

int level_of(Op op) {
  switch (op) {
    case Op::Iff: return kIff;
    case Op::Implies: return kImplies;
    case Op::Or: return kOr;
    case Op::And: return kAnd;
    default: return kUnary;
  }
}

std::string render_term(const Term& t) {
  std::string out;
  for (int i = 0; i < t.depth; ++i) out += "F(";
  out += t.variable;
  out.append(static_cast<std::size_t>(t.depth), ')');
  return out;
}

std::string render_at(const Formula& f, int required) {
  std::string out;
  switch (f.op()) {
    case Op::Predicate:
      return "U" + std::to_string(f.predicate_index()) + "(" + render_term(f.first_term()) + ")";
    case Op::Edge:
      return "E(" + render_term(f.first_term()) + ", " + render_term(f.second_term()) + ")";
    case Op::Equal:
      return render_term(f.first_term()) + " = " + render_term(f.second_term());
    case Op::Not:
      if (f.left().op() == Op::Equal) {
        return render_term(f.left().first_term()) + " != " + render_term(f.left().second_term());
      }
      return "!" + render_at(f.left(), kUnary);
    case Op::Forall:
      return "forall " + f.bound_variable() + ". " + render_at(f.left(), kUnary);
    case Op::Exists:
      return "exists " + f.bound_variable() + ". " + render_at(f.left(), kUnary);
    case Op::ExistsUnique:
      return "exists! " + f.bound_variable() + ". " + render_at(f.left(), kUnary);
    default:
      break;
  }
  int level = level_of(f.op());
  bool right_assoc = f.op() == Op::Implies;
  const char* sym = f.op() == Op::And ? " & " : f.op() == Op::Or ? " | " : f.op() == Op::Implies ? " -> " : " <-> ";
  out = render_at(f.left(), right_assoc ? level + 1 : level) + sym +
        render_at(f.right(), right_assoc ? level : level + 1);
  if (level < required) return "(" + out + ")";
  return out;
}

}  // namespace

std::string render(const Formula& f) { return render_at(f, kIff); }

Formula parse_property(const std::string& text, const Signature& sig) {
  Parser parser(lex(text), sig);
  Formula f = parser.parse_all();
  auto free = f.free_variables();
  if (free.size() > 1) {
    std::string names;
    for (const auto& v : free) names += (names.empty() ? "" : ", ") + v;
    throw ParseError(ErrorKind::FreeVariable, 0, "more than one free variable: " + names);
  }
  return f;
}

}  // namespace typdeg::logic
