#include "wldl/syntax.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <variant>

#include "wldl/error.hpp"

namespace wldl {

namespace {

// ---------------------------------------------------------------------------
// Tokens

enum class Tok {
  End,
  LParen,
  RParen,
  LBrack,
  RBrack,
  LAngle,
  RAngle,
  Question,
  IterPlus,
  IterOmega,
  Plus,
  Semi,
  Dot,
  Bang,
  Amp,
  Bar,
  OPlusTok,
  OTimesTok,
  HadTok,
  Number,
  Ident,
};

struct Token {
  Tok kind;
  std::string text;
  std::uint32_t line;
  std::uint32_t column;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::uint32_t line = 1;
  std::uint32_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](Tok kind, std::size_t len) {
    out.push_back({kind, std::string(s.substr(i, len)), line, col});
    advance(len);
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    auto next_is = [&](std::string_view t) { return s.substr(i, t.size()) == t; };
    if (next_is("(+)")) {
      push(Tok::OPlusTok, 3);
    } else if (next_is("(x)")) {
      push(Tok::OTimesTok, 3);
    } else if (next_is("(.)")) {
      push(Tok::HadTok, 3);
    } else if (next_is("^+")) {
      push(Tok::IterPlus, 2);
    } else if (next_is("^w")) {
      push(Tok::IterOmega, 2);
    } else if (next_is("-inf")) {
      push(Tok::Number, 4);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j + 1 < s.size() && s[j] == '/' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      push(Tok::Number, j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      if (j - i == 1 && c == 'G' && j < s.size() && s[j] == '*') ++j;
      push(Tok::Ident, j - i);
    } else {
      Tok kind;
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '[': kind = Tok::LBrack; break;
        case ']': kind = Tok::RBrack; break;
        case '<': kind = Tok::LAngle; break;
        case '>': kind = Tok::RAngle; break;
        case '?': kind = Tok::Question; break;
        case '+': kind = Tok::Plus; break;
        case ';': kind = Tok::Semi; break;
        case '.': kind = Tok::Dot; break;
        case '!': kind = Tok::Bang; break;
        case '&': kind = Tok::Amp; break;
        case '|': kind = Tok::Bar; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
      push(kind, 1);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser: recursive descent with memoized backtracking for the few places
// where a path primary can be either a propositional step or a test.

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Alphabet& alphabet, Semiring semiring)
      : toks_(std::move(tokens)), alphabet_(alphabet), semiring_(semiring) {}

  Ast run(Sort sort) {
    Ast result;
    switch (sort) {
      case Sort::Prop: result = prop_or(); break;
      case Sort::Ldl:
      case Sort::LdlOmega: result = ldl_or(); break;
      case Sort::LdlPath:
      case Sort::LdlOmegaPath: result = cpath_choice(); break;
      case Sort::WLdl:
      case Sort::WLdlOmega: result = w_oplus(); break;
      case Sort::WPath:
      case Sort::WPathOmega: result = wpath_choice(); break;
      case Sort::Gre:
      case Sort::GreOmega: result = g_sum(); break;
      case Sort::Ltl: result = l_or(); break;
      case Sort::WLtl: result = wl_oplus(); break;
    }
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return result;
  }

 private:
  enum Rule { RPropUnary, RPropOr, RLdlUnary, RLdlOr, RCPath, RWUnary, RWOPlus, RWPath };

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_ident(std::string_view name) const { return at(Tok::Ident) && peek().text == name; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + ", found '" + peek().text + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    throw ParseError(t.kind == Tok::End ? msg + " at end of input" : msg, t.line, t.column);
  }

  Ast located(Ast a, const Token& t) const {
    if (a->line != 0) return a;
    auto copy = std::make_shared<Node>(*a);
    copy->line = t.line;
    copy->column = t.column;
    return copy;
  }

  // Memoized rule invocation; failures are cached as well.
  template <class F>
  Ast memo(Rule rule, F body) {
    const auto key = std::make_pair(static_cast<int>(rule), pos_);
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (auto* err = std::get_if<ParseError>(&it->second)) throw *err;
      const auto& [ast, end] = std::get<std::pair<Ast, std::size_t>>(it->second);
      pos_ = end;
      return ast;
    }
    try {
      Ast a = body();
      memo_.emplace(key, std::make_pair(a, pos_));
      return a;
    } catch (const ParseError& e) {
      memo_.emplace(key, e);
      throw;
    }
  }

  // Tries each alternative from the same position; rethrows the error that
  // got furthest when all fail.
  Ast alternatives(std::initializer_list<std::function<Ast()>> alts) {
    const std::size_t start = pos_;
    std::optional<ParseError> best;
    for (const auto& alt : alts) {
      try {
        return alt();
      } catch (const ParseError& e) {
        if (!best || std::make_pair(e.line(), e.column()) > std::make_pair(best->line(), best->column())) best = e;
        pos_ = start;
      }
    }
    throw *best;
  }

  char letter_of(const Token& t) const {
    if (t.text.size() != 1 || !std::islower(static_cast<unsigned char>(t.text[0])))
      throw ParseError("unknown identifier '" + t.text + "'", t.line, t.column);
    if (!alphabet_.contains(t.text[0]))
      throw ParseError("unknown letter '" + t.text + "' (alphabet {" + alphabet_.letters() + "})", t.line, t.column);
    return t.text[0];
  }

  Weight weight_literal() {
    const Token t = peek();
    if (!at(Tok::Number) && !at_ident("inf")) fail("expected a weight");
    ++pos_;
    try {
      return semiring_.parse(t.text);
    } catch (const UsageError& e) {
      throw ParseError(e.what(), t.line, t.column);
    }
  }

  bool at_weight() const { return at(Tok::Number) || at_ident("inf"); }

  // -- propositional formulas ------------------------------------------------

  Ast prop_or() {
    return memo(RPropOr, [&] {
      Ast l = prop_and();
      while (at(Tok::Bar)) {
        const Token t = peek();
        ++pos_;
        l = located(ast::disj(l, prop_and()), t);
      }
      return l;
    });
  }

  Ast prop_and() {
    Ast l = prop_unary();
    while (at(Tok::Amp)) {
      const Token t = peek();
      ++pos_;
      l = located(ast::conj(l, prop_unary()), t);
    }
    return l;
  }

  Ast prop_unary() {
    return memo(RPropUnary, [&]() -> Ast {
      const Token t = peek();
      if (accept(Tok::Bang)) return located(ast::neg(prop_unary()), t);
      if (accept(Tok::LParen)) {
        Ast inner = prop_or();
        expect(Tok::RParen, "')'");
        return inner;
      }
      if (accept(Tok::Ident)) {
        if (t.text == "true") return located(ast::tt(), t);
        if (t.text == "false") return located(ast::ff(), t);
        return located(ast::atom(letter_of(t)), t);
      }
      fail("expected a propositional formula");
    });
  }

  // Converts a propositional formula to an equivalent classical LDL formula.
  static Ast prop_to_ldl(const Ast& p) {
    switch (p->op) {
      case Op::False: return ast::neg(ast::tt());
      case Op::Not: return ast::neg(prop_to_ldl(p->kid(0)));
      case Op::And: return ast::conj(prop_to_ldl(p->kid(0)), prop_to_ldl(p->kid(1)));
      case Op::Or:
        return ast::neg(ast::conj(ast::neg(prop_to_ldl(p->kid(0))), ast::neg(prop_to_ldl(p->kid(1)))));
      default: return p;
    }
  }

  // -- classical LDL -----------------------------------------------------------

  Ast ldl_or() {
    return memo(RLdlOr, [&] {
      Ast l = ldl_and();
      while (at(Tok::Bar)) {
        const Token t = peek();
        ++pos_;
        Ast r = ldl_and();
        l = located(ast::neg(ast::conj(ast::neg(l), ast::neg(r))), t);
      }
      return l;
    });
  }

  Ast ldl_and() {
    Ast l = ldl_unary();
    while (at(Tok::Amp)) {
      const Token t = peek();
      ++pos_;
      l = located(ast::conj(l, ldl_unary()), t);
    }
    return l;
  }

  Ast ldl_unary() {
    return memo(RLdlUnary, [&]() -> Ast {
      const Token t = peek();
      if (accept(Tok::Bang)) return located(ast::neg(ldl_unary()), t);
      if (accept(Tok::LAngle)) {
        Ast path = cpath_choice();
        expect(Tok::RAngle, "'>'");
        return located(ast::diamond(path, ldl_unary()), t);
      }
      if (accept(Tok::LParen)) {
        Ast inner = ldl_or();
        expect(Tok::RParen, "')'");
        return inner;
      }
      if (accept(Tok::Ident)) {
        if (t.text == "true") return located(ast::tt(), t);
        if (t.text == "false") return located(ast::neg(ast::tt()), t);
        if (t.text == "last") return expand_last(alphabet_);
        return located(ast::atom(letter_of(t)), t);
      }
      fail("expected a formula");
    });
  }

  Ast cpath_choice() {
    return memo(RCPath, [&] {
      Ast l = cpath_seq();
      while (at(Tok::Plus)) {
        const Token t = peek();
        ++pos_;
        l = located(ast::choice(l, cpath_seq()), t);
      }
      return l;
    });
  }

  Ast cpath_seq() {
    Ast l = cpath_postfix();
    while (at(Tok::Semi)) {
      const Token t = peek();
      ++pos_;
      l = located(ast::seq(l, cpath_postfix()), t);
    }
    return l;
  }

  Ast cpath_postfix() {
    Ast p = cpath_primary();
    for (;;) {
      const Token t = peek();
      if (accept(Tok::IterPlus)) {
        p = located(ast::iter(p), t);
      } else if (accept(Tok::IterOmega)) {
        p = located(ast::omega_iter(p), t);
      } else {
        return p;
      }
    }
  }

  Ast cpath_primary() {
    const Token t = peek();
    return alternatives({
        [&] {
          Ast p = prop_unary();
          if (at(Tok::Question)) fail("test");
          return located(ast::step(p), t);
        },
        [&] {
          expect(Tok::LParen, "'('");
          Ast inner = cpath_choice();
          expect(Tok::RParen, "')'");
          return inner;
        },
        [&] {
          Ast f = ldl_unary();
          expect(Tok::Question, "'?'");
          return located(ast::test(f), t);
        },
    });
  }

  // -- weighted LDL ------------------------------------------------------------

  Ast w_oplus() {
    return memo(RWOPlus, [&] {
      Ast l = w_otimes();
      while (at(Tok::OPlusTok)) {
        const Token t = peek();
        ++pos_;
        l = located(ast::oplus(l, w_otimes()), t);
      }
      return l;
    });
  }

  Ast w_otimes() {
    Ast l = w_unary();
    while (at(Tok::OTimesTok)) {
      const Token t = peek();
      ++pos_;
      l = located(ast::otimes(l, w_unary()), t);
    }
    return l;
  }

  Ast w_unary() {
    return memo(RWUnary, [&]() -> Ast {
      const Token t = peek();
      if (accept(Tok::LAngle)) {
        Ast path = wpath_choice();
        expect(Tok::RAngle, "'>'");
        return located(ast::diamond(path, w_unary()), t);
      }
      if (at_weight()) return located(ast::constant(weight_literal()), t);
      if (accept(Tok::LBrack)) {
        Ast inner = ldl_or();
        expect(Tok::RBrack, "']'");
        return located(ast::embed(inner), t);
      }
      if (at_ident("last")) {
        ++pos_;
        return located(ast::embed(expand_last(alphabet_)), t);
      }
      if (accept(Tok::LParen)) {
        Ast inner = w_oplus();
        expect(Tok::RParen, "')'");
        return inner;
      }
      fail("expected a weighted formula (a weight, [classical], last, <path> or '(')");
    });
  }

  Ast wpath_choice() {
    return memo(RWPath, [&] {
      Ast l = wpath_seq();
      while (at(Tok::OPlusTok)) {
        const Token t = peek();
        ++pos_;
        l = located(ast::choice(l, wpath_seq()), t);
      }
      return l;
    });
  }

  Ast wpath_seq() {
    Ast l = wpath_postfix();
    while (at(Tok::Dot)) {
      const Token t = peek();
      ++pos_;
      l = located(ast::seq(l, wpath_postfix()), t);
    }
    return l;
  }

  Ast wpath_postfix() {
    Ast p = wpath_primary();
    for (;;) {
      const Token t = peek();
      if (accept(Tok::IterPlus)) {
        p = located(ast::iter(p), t);
      } else if (accept(Tok::IterOmega)) {
        p = located(ast::omega_iter(p), t);
      } else {
        return p;
      }
    }
  }

  Ast wpath_primary() {
    const Token t = peek();
    return alternatives({
        [&] {
          Ast p = prop_unary();
          if (at(Tok::Question)) fail("test");
          return located(ast::step(p), t);
        },
        [&] {
          expect(Tok::LParen, "'('");
          Ast inner = wpath_choice();
          expect(Tok::RParen, "')'");
          return inner;
        },
        [&] {
          Ast f = w_unary();
          expect(Tok::Question, "'?'");
          return located(ast::test(f), t);
        },
        [&] {
          // a bare propositional test such as `a?` means [a]?
          Ast p = prop_unary();
          expect(Tok::Question, "'?'");
          return located(ast::test(ast::embed(prop_to_ldl(p))), t);
        },
    });
  }

  // -- rational expressions ----------------------------------------------------

  Ast g_sum() {
    Ast l = g_had();
    while (at(Tok::Plus)) {
      const Token t = peek();
      ++pos_;
      l = located(ast::sum(l, g_had()), t);
    }
    return l;
  }

  Ast g_had() {
    Ast l = g_cauchy();
    while (at(Tok::HadTok)) {
      const Token t = peek();
      ++pos_;
      l = located(ast::hadamard(l, g_cauchy()), t);
    }
    return l;
  }

  Ast g_cauchy() {
    Ast l = g_postfix();
    while (at(Tok::Dot)) {
      const Token t = peek();
      ++pos_;
      l = located(ast::cauchy(l, g_postfix()), t);
    }
    return l;
  }

  Ast g_postfix() {
    Ast p = g_atom();
    for (;;) {
      const Token t = peek();
      if (accept(Tok::IterPlus)) {
        p = located(ast::plus(p), t);
      } else if (accept(Tok::IterOmega)) {
        p = located(ast::omega(p), t);
      } else {
        return p;
      }
    }
  }

  Ast g_atom() {
    const Token t = peek();
    if (accept(Tok::LParen)) {
      Ast inner = g_sum();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (!at_weight()) fail("expected an expression (a weighted letter 'k a', 'k eps' or '(')");
    const Weight k = weight_literal();
    const Token l = peek();
    if (!accept(Tok::Ident)) fail("expected a letter or 'eps' after the weight");
    if (l.text == "eps") return located(ast::eps(k), t);
    return located(ast::letter(k, letter_of(l)), t);
  }

  // -- LTL ---------------------------------------------------------------------

  Ast l_or() {
    Ast l = l_and();
    while (at(Tok::Bar)) {
      const Token t = peek();
      ++pos_;
      l = located(ast::disj(l, l_and()), t);
    }
    return l;
  }

  Ast l_and() {
    Ast l = l_until();
    while (at(Tok::Amp)) {
      const Token t = peek();
      ++pos_;
      Ast r = l_until();
      l = located(ast::neg(ast::disj(ast::neg(l), ast::neg(r))), t);
    }
    return l;
  }

  Ast l_until() {
    Ast l = l_unary();
    if (at_ident("U")) {
      const Token t = peek();
      ++pos_;
      return located(ast::until(l, l_until()), t);
    }
    return l;
  }

  Ast l_unary() {
    const Token t = peek();
    if (accept(Tok::Bang)) return located(ast::neg(l_unary()), t);
    if (at_ident("X")) {
      ++pos_;
      return located(ast::next(l_unary()), t);
    }
    if (accept(Tok::LParen)) {
      Ast inner = l_or();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (accept(Tok::Ident)) {
      if (t.text == "true") return located(ast::tt(), t);
      if (t.text == "false") return located(ast::neg(ast::tt()), t);
      return located(ast::atom(letter_of(t)), t);
    }
    fail("expected an LTL formula");
  }

  Ast wl_oplus() {
    Ast l = wl_otimes();
    while (at(Tok::OPlusTok)) {
      const Token t = peek();
      ++pos_;
      l = located(ast::oplus(l, wl_otimes()), t);
    }
    return l;
  }

  Ast wl_otimes() {
    Ast l = wl_until();
    while (at(Tok::OTimesTok)) {
      const Token t = peek();
      ++pos_;
      l = located(ast::otimes(l, wl_until()), t);
    }
    return l;
  }

  Ast wl_until() {
    Ast l = wl_unary();
    if (at_ident("U")) {
      const Token t = peek();
      ++pos_;
      return located(ast::until(l, wl_until()), t);
    }
    return l;
  }

  Ast wl_unary() {
    const Token t = peek();
    if (at_ident("X")) {
      ++pos_;
      return located(ast::next(wl_unary()), t);
    }
    if (at_ident("G*")) {
      ++pos_;
      return located(ast::box_times(wl_unary()), t);
    }
    if (at_weight()) return located(ast::constant(weight_literal()), t);
    if (accept(Tok::LBrack)) {
      Ast inner = l_or();
      expect(Tok::RBrack, "']'");
      return located(ast::embed(inner), t);
    }
    if (accept(Tok::LParen)) {
      Ast inner = wl_oplus();
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail("expected a weighted LTL formula");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Alphabet& alphabet_;
  Semiring semiring_;
  std::map<std::pair<int, std::size_t>, std::variant<std::pair<Ast, std::size_t>, ParseError>> memo_;
};

// ---------------------------------------------------------------------------
// Sort checking

Sort finite_path_of(Sort s) {
  switch (s) {
    case Sort::LdlOmegaPath: return Sort::LdlPath;
    case Sort::WPathOmega: return Sort::WPath;
    default: return s;
  }
}

[[noreturn]] void sort_error(const Node& n, Sort s, const std::string& what) {
  throw ParseError(what + " is not allowed in " + std::string(sort_name(s)), n.line, n.column);
}

void check(const Ast& a, Sort s) {
  const Node& n = *a;
  auto kids = [&](Sort k0) {
    for (const auto& k : n.kids) check(k, k0);
  };
  switch (s) {
    case Sort::Prop:
      switch (n.op) {
        case Op::True: case Op::False: case Op::Atom: return;
        case Op::Not: case Op::And: case Op::Or: return kids(Sort::Prop);
        default: sort_error(n, s, "this construct");
      }
    case Sort::Ldl:
    case Sort::LdlOmega:
      switch (n.op) {
        case Op::True: case Op::Atom: return;
        case Op::Not: case Op::And: return kids(s);
        case Op::Diamond:
          check(n.kid(0), s == Sort::Ldl ? Sort::LdlPath : Sort::LdlOmegaPath);
          return check(n.kid(1), s);
        default: sort_error(n, s, "this construct");
      }
    case Sort::LdlPath:
    case Sort::WPath: {
      const Sort test_sort = s == Sort::LdlPath ? Sort::Ldl : Sort::WLdl;
      switch (n.op) {
        case Op::Step: return check(n.kid(0), Sort::Prop);
        case Op::Test: return check(n.kid(0), test_sort);
        case Op::Choice: case Op::Seq: case Op::Iter: return kids(s);
        case Op::OmegaIter: sort_error(n, s, "omega-iteration");
        default: sort_error(n, s, "this construct");
      }
    }
    case Sort::LdlOmegaPath:
    case Sort::WPathOmega: {
      const Sort test_sort = s == Sort::LdlOmegaPath ? Sort::LdlOmega : Sort::WLdlOmega;
      switch (n.op) {
        case Op::Step: return check(n.kid(0), Sort::Prop);
        case Op::Test: return check(n.kid(0), test_sort);
        case Op::Choice: return kids(s);
        case Op::Seq:
          check(n.kid(0), finite_path_of(s));
          return check(n.kid(1), s);
        case Op::OmegaIter: return check(n.kid(0), finite_path_of(s));
        case Op::Iter: sort_error(n, s, "finite iteration of an infinite path");
        default: sort_error(n, s, "this construct");
      }
    }
    case Sort::WLdl:
    case Sort::WLdlOmega:
      switch (n.op) {
        case Op::Const: return;
        case Op::Embed: return check(n.kid(0), s == Sort::WLdl ? Sort::Ldl : Sort::LdlOmega);
        case Op::OPlus: case Op::OTimes: return kids(s);
        case Op::Diamond:
          check(n.kid(0), s == Sort::WLdl ? Sort::WPath : Sort::WPathOmega);
          return check(n.kid(1), s);
        default: sort_error(n, s, "this construct");
      }
    case Sort::Gre:
      switch (n.op) {
        case Op::Letter: return;
        case Op::Sum: case Op::Cauchy: case Op::Hadamard: case Op::Plus: return kids(s);
        case Op::Omega: sort_error(n, s, "omega-iteration");
        default: sort_error(n, s, "this construct");
      }
    case Sort::GreOmega:
      switch (n.op) {
        case Op::Sum: case Op::Hadamard: return kids(s);
        case Op::Cauchy:
          check(n.kid(0), Sort::Gre);
          return check(n.kid(1), s);
        case Op::Omega: return check(n.kid(0), Sort::Gre);
        case Op::Letter: sort_error(n, s, "a finite expression (end it with an omega-iteration)");
        case Op::Plus: sort_error(n, s, "finite iteration of an infinite expression");
        default: sort_error(n, s, "this construct");
      }
    case Sort::Ltl:
      switch (n.op) {
        case Op::True: case Op::Atom: return;
        case Op::Not: case Op::Or: case Op::Next: case Op::Until: return kids(s);
        default: sort_error(n, s, "this construct");
      }
    case Sort::WLtl:
      switch (n.op) {
        case Op::Const: return;
        case Op::Embed: return check(n.kid(0), Sort::Ltl);
        case Op::OPlus: case Op::OTimes: case Op::Next: case Op::Until: case Op::BoxTimes: return kids(s);
        default: sort_error(n, s, "this construct");
      }
  }
}

// ---------------------------------------------------------------------------
// Printing

int level(const Node& n, Sort s) {
  switch (s) {
    case Sort::Prop:
      switch (n.op) {
        case Op::Or: return 0;
        case Op::And: return 1;
        case Op::Not: return 2;
        default: return 3;
      }
    case Sort::Ldl:
    case Sort::LdlOmega:
      switch (n.op) {
        case Op::And: return 1;
        case Op::Not: case Op::Diamond: return 2;
        default: return 3;
      }
    case Sort::LdlPath:
    case Sort::LdlOmegaPath:
    case Sort::WPath:
    case Sort::WPathOmega:
      switch (n.op) {
        case Op::Choice: return 0;
        case Op::Seq: return 1;
        case Op::Iter: case Op::OmegaIter: return 2;
        default: return 3;
      }
    case Sort::WLdl:
    case Sort::WLdlOmega:
      switch (n.op) {
        case Op::OPlus: return 0;
        case Op::OTimes: return 1;
        case Op::Diamond: return 2;
        default: return 3;
      }
    case Sort::Gre:
    case Sort::GreOmega:
      switch (n.op) {
        case Op::Sum: return 0;
        case Op::Hadamard: return 1;
        case Op::Cauchy: return 2;
        case Op::Plus: case Op::Omega: return 3;
        default: return 4;
      }
    case Sort::Ltl:
      switch (n.op) {
        case Op::Or: return 0;
        case Op::Until: return 2;
        case Op::Not: case Op::Next: return 3;
        default: return 4;
      }
    case Sort::WLtl:
      switch (n.op) {
        case Op::OPlus: return 0;
        case Op::OTimes: return 1;
        case Op::Until: return 2;
        case Op::Next: case Op::BoxTimes: return 3;
        default: return 4;
      }
  }
  return 0;
}

bool weighted_path(Sort s) { return s == Sort::WPath || s == Sort::WPathOmega; }

class Printer {
 public:
  std::string show(const Ast& a, Sort s) {
    std::ostringstream out;
    emit(a, s, out);
    return out.str();
  }

 private:
  void wrap(const Ast& a, Sort s, int min_level, std::ostream& out) {
    if (level(*a, s) < min_level) {
      out << '(';
      emit(a, s, out);
      out << ')';
    } else {
      emit(a, s, out);
    }
  }

  void binary(const Node& n, Sort s, Sort ls, Sort rs, const char* op, std::ostream& out, bool right_assoc = false) {
    const int l = level(n, s);
    wrap(n.kid(0), ls, right_assoc ? l + 1 : l, out);
    out << ' ' << op << ' ';
    wrap(n.kid(1), rs, right_assoc ? l : l + 1, out);
  }

  void emit(const Ast& a, Sort s, std::ostream& out) {
    const Node& n = *a;
    switch (n.op) {
      case Op::True: out << "true"; return;
      case Op::False: out << "false"; return;
      case Op::Atom: out << n.letter; return;
      case Op::Not:
        out << '!';
        wrap(n.kid(0), s, level(n, s), out);
        return;
      case Op::And: binary(n, s, s, s, "&", out); return;
      case Op::Or: binary(n, s, s, s, "|", out); return;
      case Op::Diamond: {
        Sort ps = Sort::LdlPath;
        if (s == Sort::LdlOmega) ps = Sort::LdlOmegaPath;
        if (s == Sort::WLdl) ps = Sort::WPath;
        if (s == Sort::WLdlOmega) ps = Sort::WPathOmega;
        out << '<';
        emit(n.kid(0), ps, out);
        out << "> ";
        wrap(n.kid(1), s, 2, out);
        return;
      }
      case Op::Step: wrap(n.kid(0), Sort::Prop, 2, out); return;
      case Op::Test: {
        Sort ts = Sort::Ldl;
        if (s == Sort::LdlOmegaPath) ts = Sort::LdlOmega;
        if (s == Sort::WPath) ts = Sort::WLdl;
        if (s == Sort::WPathOmega) ts = Sort::WLdlOmega;
        wrap(n.kid(0), ts, 2, out);
        out << '?';
        return;
      }
      case Op::Choice: binary(n, s, s, s, weighted_path(s) ? "(+)" : "+", out); return;
      case Op::Seq: binary(n, s, finite_path_of(s), s, weighted_path(s) ? "." : ";", out); return;
      case Op::Iter:
        wrap(n.kid(0), s, 2, out);
        out << "^+";
        return;
      case Op::OmegaIter:
        wrap(n.kid(0), finite_path_of(s), 2, out);
        out << "^w";
        return;
      case Op::Const: out << n.weight->to_string(); return;
      case Op::Embed: {
        Sort cs = Sort::Ldl;
        if (s == Sort::WLdlOmega) cs = Sort::LdlOmega;
        if (s == Sort::WLtl) cs = Sort::Ltl;
        out << '[';
        emit(n.kid(0), cs, out);
        out << ']';
        return;
      }
      case Op::OPlus: binary(n, s, s, s, "(+)", out); return;
      case Op::OTimes: binary(n, s, s, s, "(x)", out); return;
      case Op::Next:
        out << "X ";
        wrap(n.kid(0), s, level(n, s), out);
        return;
      case Op::Until: binary(n, s, s, s, "U", out, true); return;
      case Op::BoxTimes:
        out << "G* ";
        wrap(n.kid(0), s, level(n, s), out);
        return;
      case Op::Letter:
        out << n.weight->to_string() << ' ';
        if (n.letter == 0) {
          out << "eps";
        } else {
          out << n.letter;
        }
        return;
      case Op::Sum: binary(n, s, s, s, "+", out); return;
      case Op::Hadamard: binary(n, s, s, s, "(.)", out); return;
      case Op::Cauchy: binary(n, s, s == Sort::GreOmega ? Sort::Gre : s, s, ".", out); return;
      case Op::Plus:
      case Op::Omega: {
        const Sort bs = n.op == Op::Omega ? Sort::Gre : s;
        // atoms are parenthesized under postfix operators for readability
        wrap(n.kid(0), bs, n.kid(0)->op == Op::Letter ? 5 : 3, out);
        out << (n.op == Op::Plus ? "^+" : "^w");
        return;
      }
    }
  }
};

bool step_term(const Ast& a) {
  switch (a->op) {
    case Op::Const:
    case Op::Embed: return true;
    case Op::OTimes: return a->kid(0)->op == Op::Const && a->kid(1)->op == Op::Embed;
    default: return false;
  }
}

}  // namespace

Ast parse(Sort sort, std::string_view text, const Alphabet& alphabet, Semiring semiring) {
  Parser parser(tokenize(text), alphabet, semiring);
  Ast result = parser.run(sort);
  validate(result, sort);
  return result;
}

std::string print(const Ast& a, Sort sort) { return Printer{}.show(a, sort); }

void validate(const Ast& a, Sort sort) { check(a, sort); }

Sort sort_from_name(std::string_view name) {
  static const std::map<std::string_view, Sort> table = {
      {"prop", Sort::Prop},       {"ldl", Sort::Ldl}, {"ldl-omega", Sort::LdlOmega},
      {"wldl", Sort::WLdl},       {"wldl-omega", Sort::WLdlOmega},
      {"gre", Sort::Gre},         {"gre-omega", Sort::GreOmega},
      {"ltl", Sort::Ltl},         {"wltl", Sort::WLtl},
  };
  if (auto it = table.find(name); it != table.end()) return it->second;
  throw UsageError("unknown kind '" + std::string(name) +
                   "' (expected prop|ldl|ldl-omega|wldl|wldl-omega|gre|gre-omega|ltl|wltl)");
}

std::string_view sort_name(Sort sort) {
  switch (sort) {
    case Sort::Prop: return "prop";
    case Sort::Ldl: return "ldl";
    case Sort::LdlPath: return "ldl path";
    case Sort::LdlOmega: return "ldl-omega";
    case Sort::LdlOmegaPath: return "ldl-omega path";
    case Sort::WLdl: return "wldl";
    case Sort::WPath: return "wldl path";
    case Sort::WLdlOmega: return "wldl-omega";
    case Sort::WPathOmega: return "wldl-omega path";
    case Sort::Gre: return "gre";
    case Sort::GreOmega: return "gre-omega";
    case Sort::Ltl: return "ltl";
    case Sort::WLtl: return "wltl";
  }
  return "?";
}

bool is_omega_sort(Sort sort) {
  return sort == Sort::LdlOmega || sort == Sort::LdlOmegaPath || sort == Sort::WLdlOmega ||
         sort == Sort::WPathOmega || sort == Sort::GreOmega;
}

Ast none_of(const Alphabet& alphabet) {
  Ast result;
  for (char c : alphabet.letters()) {
    Ast n = ast::neg(ast::atom(c));
    result = result ? ast::conj(result, n) : n;
  }
  return result ? result : ast::tt();
}

Ast expand_last(const Alphabet& alphabet) { return ast::diamond(ast::step(ast::tt()), none_of(alphabet)); }

bool is_ltl_step(const Ast& phi) {
  if (phi->op == Op::OPlus) return is_ltl_step(phi->kid(0)) && is_ltl_step(phi->kid(1));
  return step_term(phi);
}

Ast rltl_offender(const Ast& phi) {
  switch (phi->op) {
    case Op::Embed:
    case Op::Const: return nullptr;
    case Op::BoxTimes:
    case Op::Until:
      if (!is_ltl_step(phi->kid(0))) return phi->kid(0);
      break;
    default: break;
  }
  for (const auto& k : phi->kids)
    if (Ast off = rltl_offender(k)) return off;
  return nullptr;
}

bool is_rltl(const Ast& phi) { return rltl_offender(phi) == nullptr; }

bool is_hadamard_free(const Ast& e) {
  return !any_node(e, [](const Node& n) { return n.op == Op::Hadamard; });
}

FormulaFile read_formula_text(std::string_view contents) {
  FormulaFile file;
  std::istringstream in{std::string(contents)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] == '#') {
      file.text += '\n';
      continue;
    }
    if (first != std::string::npos && line.compare(first, 9, "alphabet:") == 0) {
      file.alphabet = Alphabet(line.substr(first + 9));
      file.text += '\n';
      continue;
    }
    file.text += line;
    file.text += '\n';
  }
  return file;
}

std::string letters_in_text(std::string_view text) {
  std::string letters;
  for (const auto& t : tokenize(text)) {
    if (t.kind == Tok::Ident && t.text.size() == 1 && std::islower(static_cast<unsigned char>(t.text[0])))
      letters += t.text;
  }
  return letters;
}

}  // namespace wldl
