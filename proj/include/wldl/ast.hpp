#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wldl/semiring.hpp"

namespace wldl {

/// A finite alphabet of lowercase single-character letters, kept sorted.
class Alphabet {
 public:
  Alphabet() = default;
  /// Accepts the letters in any order, ignoring blanks and commas.
  /// Throws UsageError on anything that is not in [a-z].
  explicit Alphabet(std::string_view letters);

  const std::string& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool contains(char c) const { return index(c) >= 0; }
  int index(char c) const;
  char operator[](std::size_t i) const { return letters_[i]; }

  /// Throws UsageError when `word` uses a letter outside the alphabet.
  void check_word(std::string_view word) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::string letters_;
};

using Word = std::string;

/// Node operators shared by every formula and expression language. Which
/// operators are legal where is decided by a Sort (see validate()).
enum class Op : std::uint8_t {
  // propositional and classical connectives
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  // <path> formula
  Diamond,
  // path constructors
  Step,       // a propositional formula read on one letter
  Test,       // formula?
  Choice,     // + (classical) / (+) (weighted)
  Seq,        // ; (classical) / . (weighted)
  Iter,       // ^+
  OmegaIter,  // ^w
  // weighted connectives
  Const,
  Embed,  // [classical formula]
  OPlus,
  OTimes,
  // temporal connectives
  Next,
  Until,
  BoxTimes,
  // rational expressions
  Letter,  // k a, or k eps when letter == 0
  Sum,
  Cauchy,
  Plus,
  Hadamard,
  Omega,
};

/// The syntactic categories. Each parse entry point produces one of these.
enum class Sort : std::uint8_t {
  Prop,
  Ldl,
  LdlPath,
  LdlOmega,
  LdlOmegaPath,
  WLdl,
  WPath,
  WLdlOmega,
  WPathOmega,
  Gre,
  GreOmega,
  Ltl,
  WLtl,
};

struct Node;
using Ast = std::shared_ptr<const Node>;

struct Node {
  Op op;
  char letter = 0;
  std::optional<Weight> weight;
  std::vector<Ast> kids;
  // source position, 0 when built programmatically
  std::uint32_t line = 0;
  std::uint32_t column = 0;

  const Ast& kid(std::size_t i) const { return kids[i]; }
};

/// Node builders. neg() identifies double negation with the plain formula.
namespace ast {

Ast make(Op op, std::vector<Ast> kids = {});
Ast tt();
Ast ff();
Ast atom(char letter);
Ast neg(const Ast& x);
Ast conj(const Ast& a, const Ast& b);
Ast disj(const Ast& a, const Ast& b);
Ast diamond(const Ast& path, const Ast& formula);
Ast step(const Ast& prop);
Ast test(const Ast& formula);
Ast choice(const Ast& a, const Ast& b);
Ast seq(const Ast& a, const Ast& b);
Ast iter(const Ast& body);
Ast omega_iter(const Ast& body);
Ast constant(const Weight& k);
Ast embed(const Ast& classical);
Ast oplus(const Ast& a, const Ast& b);
Ast otimes(const Ast& a, const Ast& b);
Ast next(const Ast& x);
Ast until(const Ast& a, const Ast& b);
Ast box_times(const Ast& x);
Ast letter(const Weight& k, char a);
Ast eps(const Weight& k);
Ast sum(const Ast& a, const Ast& b);
Ast cauchy(const Ast& a, const Ast& b);
Ast plus(const Ast& body);
Ast hadamard(const Ast& a, const Ast& b);
Ast omega(const Ast& body);

/// Classical `true` wrapped for use in weighted formulas: [true].
Ast weighted_true();

}  // namespace ast

/// Structural equality; ignores source positions.
bool equal(const Ast& a, const Ast& b);

/// Number of nodes.
std::size_t size(const Ast& a);

/// Whether any node of the tree satisfies `pred`.
template <class Pred>
bool any_node(const Ast& a, Pred pred) {
  if (pred(*a)) return true;
  for (const auto& k : a->kids)
    if (any_node(k, pred)) return true;
  return false;
}

}  // namespace wldl
