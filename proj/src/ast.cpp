#include "wldl/ast.hpp"

#include <algorithm>

#include "wldl/error.hpp"

namespace wldl {

Alphabet::Alphabet(std::string_view letters) {
  for (char c : letters) {
    if (c == ' ' || c == ',' || c == '\t') continue;
    if (c < 'a' || c > 'z') throw UsageError(std::string("invalid alphabet letter '") + c + "' (expected a-z)");
    if (letters_.find(c) == std::string::npos) letters_.push_back(c);
  }
  std::sort(letters_.begin(), letters_.end());
}

int Alphabet::index(char c) const {
  const auto pos = letters_.find(c);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

void Alphabet::check_word(std::string_view word) const {
  for (char c : word) {
    if (!contains(c)) throw UsageError(std::string("letter '") + c + "' is not in the alphabet {" + letters_ + "}");
  }
}

namespace ast {

Ast make(Op op, std::vector<Ast> kids) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->kids = std::move(kids);
  return n;
}

Ast tt() {
  static const Ast node = make(Op::True);
  return node;
}
Ast ff() {
  static const Ast node = make(Op::False);
  return node;
}
Ast atom(char letter) {
  auto n = std::make_shared<Node>();
  n->op = Op::Atom;
  n->letter = letter;
  return n;
}
Ast neg(const Ast& x) {
  if (x->op == Op::Not) return x->kid(0);
  return make(Op::Not, {x});
}
Ast conj(const Ast& a, const Ast& b) { return make(Op::And, {a, b}); }
Ast disj(const Ast& a, const Ast& b) { return make(Op::Or, {a, b}); }
Ast diamond(const Ast& path, const Ast& formula) { return make(Op::Diamond, {path, formula}); }
Ast step(const Ast& prop) { return make(Op::Step, {prop}); }
Ast test(const Ast& formula) { return make(Op::Test, {formula}); }
Ast choice(const Ast& a, const Ast& b) { return make(Op::Choice, {a, b}); }
Ast seq(const Ast& a, const Ast& b) { return make(Op::Seq, {a, b}); }
Ast iter(const Ast& body) { return make(Op::Iter, {body}); }
Ast omega_iter(const Ast& body) { return make(Op::OmegaIter, {body}); }
Ast constant(const Weight& k) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->weight = k;
  return n;
}
Ast embed(const Ast& classical) { return make(Op::Embed, {classical}); }
Ast oplus(const Ast& a, const Ast& b) { return make(Op::OPlus, {a, b}); }
Ast otimes(const Ast& a, const Ast& b) { return make(Op::OTimes, {a, b}); }
Ast next(const Ast& x) { return make(Op::Next, {x}); }
Ast until(const Ast& a, const Ast& b) { return make(Op::Until, {a, b}); }
Ast box_times(const Ast& x) { return make(Op::BoxTimes, {x}); }
Ast letter(const Weight& k, char a) {
  auto n = std::make_shared<Node>();
  n->op = Op::Letter;
  n->weight = k;
  n->letter = a;
  return n;
}
Ast eps(const Weight& k) { return letter(k, 0); }
Ast sum(const Ast& a, const Ast& b) { return make(Op::Sum, {a, b}); }
Ast cauchy(const Ast& a, const Ast& b) { return make(Op::Cauchy, {a, b}); }
Ast plus(const Ast& body) { return make(Op::Plus, {body}); }
Ast hadamard(const Ast& a, const Ast& b) { return make(Op::Hadamard, {a, b}); }
Ast omega(const Ast& body) { return make(Op::Omega, {body}); }

Ast weighted_true() {
  static const Ast node = embed(tt());
  return node;
}

}  // namespace ast

bool equal(const Ast& a, const Ast& b) {
  if (a == b) return true;
  if (a->op != b->op || a->letter != b->letter || a->weight != b->weight || a->kids.size() != b->kids.size())
    return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!equal(a->kids[i], b->kids[i])) return false;
  return true;
}

std::size_t size(const Ast& a) {
  std::size_t n = 1;
  for (const auto& k : a->kids) n += size(k);
  return n;
}

}  // namespace wldl
