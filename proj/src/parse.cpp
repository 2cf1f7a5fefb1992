#include <cctype>
#include <ostream>

#include "intentic/syntax.hpp"

namespace intentic {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at " + std::to_string(position) + ": " + message), position_(position) {}

namespace {

enum class Tok { Ident, Witness, LParen, RParen, Comma, Dot, Not, And, Or, Arrow, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_start(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || c == '\''; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", i++}); continue;
      case ')': out.push_back({Tok::RParen, ")", i++}); continue;
      case ',': out.push_back({Tok::Comma, ",", i++}); continue;
      case '.': out.push_back({Tok::Dot, ".", i++}); continue;
      case '~': out.push_back({Tok::Not, "~", i++}); continue;
      case '&': out.push_back({Tok::And, "&", i++}); continue;
      case '|': out.push_back({Tok::Or, "|", i++}); continue;
      case '=': out.push_back({Tok::Eq, "=", i++}); continue;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", i});
          i += 2;
          continue;
        }
        throw ParseError(i, "expected '->'");
      case '#': {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start + 1) throw ParseError(start, "expected digits after '#'");
        out.push_back({Tok::Witness, std::string(s.substr(start + 1, i - start - 1)), start});
        continue;
      }
      default:
        break;
    }
    if (!ident_start(c)) throw ParseError(i, std::string("unexpected character '") + c + "'");
    while (i < s.size() && ident_char(s[i])) ++i;
    out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  // `extend` is the same signature as `sig`, writable, or null for a strict parse.
  Parser(std::string_view text, const Signature& sig, Signature* extend, const WitnessRegistry& reg)
      : toks_(lex(text)), sig_(sig), extend_(extend), reg_(reg) {}

  Formula parse() {
    Formula f = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().pos, msg); }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::implies(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    if (accept(Tok::Or)) return Formula::disj(std::move(lhs), disjunction());
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    if (accept(Tok::And)) return Formula::conj(std::move(lhs), conjunction());
    return lhs;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::negation(unary());
    const Token& t = peek();
    if (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists")) {
      bool universal = t.text == "forall";
      ++pos_;
      const Token& v = peek();
      if (v.kind != Tok::Ident || !is_variable_name(v.text)) fail("expected a variable after quantifier");
      std::string var = next().text;
      expect(Tok::Dot, "'.' after bound variable");
      Formula body = implication();
      return universal ? Formula::forall(std::move(var), std::move(body))
                       : Formula::exists(std::move(var), std::move(body));
    }
    return primary();
  }

  Formula primary() {
    if (accept(Tok::LParen)) {
      Formula f = implication();
      expect(Tok::RParen, "')'");
      return f;
    }
    const Token& t = peek();
    if (t.kind == Tok::Ident && t.text == "false") {
      ++pos_;
      return Formula::falsum();
    }
    if (t.kind == Tok::Ident && toks_[pos_ + 1].kind == Tok::LParen) return relational_atom();
    if (t.kind == Tok::Witness || (t.kind == Tok::Ident && toks_[pos_ + 1].kind == Tok::Eq)) {
      Term lhs = term();
      expect(Tok::Eq, "'='");
      Term rhs = term();
      check_arity("=", 2, t.pos);
      return Formula::equals(std::move(lhs), std::move(rhs));
    }
    if (t.kind == Tok::Ident && is_relation_name(t.text)) {
      ++pos_;
      check_arity(t.text, 0, t.pos);
      return Formula::atom(t.text, {});
    }
    fail(t.kind == Tok::End ? "unexpected end of input" : "expected a formula");
  }

  Formula relational_atom() {
    const Token& name = next();
    if (!is_relation_name(name.text)) throw ParseError(name.pos, "'" + name.text + "' is not a relation name");
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    if (!accept(Tok::RParen)) {
      do {
        args.push_back(term());
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "')'");
    }
    check_arity(name.text, static_cast<int>(args.size()), name.pos);
    return Formula::atom(name.text, std::move(args));
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::Witness) {
      ++pos_;
      unsigned long id = std::stoul(t.text);
      if (!reg_.contains(static_cast<std::uint32_t>(id)))
        throw ParseError(t.pos, "unknown witness constant #" + t.text);
      return Term::witness_constant(static_cast<std::uint32_t>(id));
    }
    if (t.kind != Tok::Ident) fail("expected a term");
    ++pos_;
    if (sig_.has_constant(t.text)) return Term::constant(t.text);
    if (is_variable_name(t.text)) return Term::variable(t.text);
    throw ParseError(t.pos, "unknown constant '" + t.text + "'");
  }

  bool is_variable_name(const std::string& s) const {
    return !s.empty() && std::islower(static_cast<unsigned char>(s[0])) && s != "forall" && s != "exists" &&
           s != "false" && !sig_.has_constant(s);
  }

  bool is_relation_name(const std::string& s) const {
    if (sig_.arity(s)) return true;
    return extend_ && sig_.is_open() && std::isupper(static_cast<unsigned char>(s[0]));
  }

  void check_arity(const std::string& rel, int arity, std::size_t pos) {
    if (auto known = sig_.arity(rel)) {
      if (*known != arity)
        throw ParseError(pos, "relation " + rel + " has arity " + std::to_string(*known) + ", got " +
                                  std::to_string(arity));
      return;
    }
    if (!(extend_ && sig_.is_open())) throw ParseError(pos, "unknown relation " + rel);
    extend_->add_relation(rel, arity);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  Signature* extend_;
  const WitnessRegistry& reg_;
};

// Precedences: -> 1, | 2, & 3, ~ 4. Quantifier bodies extend to the right as
// far as possible, so a quantifier needs parentheses unless nothing follows it.
void print(const Formula& f, int min_prec, bool rightmost, std::string& out);

void print_binary(const Formula& f, int prec, const char* op, int min_prec, bool rightmost, std::string& out) {
  bool paren = prec < min_prec;
  if (paren) out += '(';
  print(f.lhs(), prec + 1, false, out);
  out += op;
  print(f.rhs(), prec, paren || rightmost, out);
  if (paren) out += ')';
}

void print(const Formula& f, int min_prec, bool rightmost, std::string& out) {
  switch (f.kind()) {
    case Connective::Atom:
      if (f.relation() == "=" && f.args().size() == 2) {
        out += f.args()[0].text();
        out += " = ";
        out += f.args()[1].text();
        return;
      }
      out += f.relation();
      if (f.args().empty()) return;
      out += '(';
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i) out += ',';
        out += f.args()[i].text();
      }
      out += ')';
      return;
    case Connective::Falsum:
      out += "false";
      return;
    case Connective::And:
      print_binary(f, 3, " & ", min_prec, rightmost, out);
      return;
    case Connective::Or:
      print_binary(f, 2, " | ", min_prec, rightmost, out);
      return;
    case Connective::Implies:
      if (f.is_negation()) {
        out += '~';
        print(f.lhs(), 4, rightmost, out);
        return;
      }
      print_binary(f, 1, " -> ", min_prec, rightmost, out);
      return;
    case Connective::ForAll:
    case Connective::Exists: {
      bool paren = !rightmost;
      if (paren) out += '(';
      out += f.is(Connective::ForAll) ? "forall " : "exists ";
      out += f.bound_var();
      out += ". ";
      print(f.body(), 0, true, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig, const WitnessRegistry& reg) {
  return Parser(text, sig, nullptr, reg).parse();
}

Formula parse_formula(std::string_view text, Signature& sig, const WitnessRegistry& reg) {
  return Parser(text, sig, &sig, reg).parse();
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, true, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

}  // namespace intentic
