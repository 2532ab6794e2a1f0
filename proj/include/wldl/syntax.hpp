#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "wldl/ast.hpp"
#include "wldl/semiring.hpp"

namespace wldl {

/// Concrete syntax, loosest to tightest binding:
///
///   classical LDL    ψ ::= ψ | ψ  <  ψ & ψ  <  !ψ, <θ>ψ  <  true, false, a, last, (ψ)
///   classical paths  θ ::= θ + θ  <  θ ; θ  <  θ^+, θ^w  <  φ, ψ?, (θ)
///   weighted LDL     φ ::= φ (+) φ  <  φ (x) φ  <  <ρ>φ  <  k, [ψ], last, (φ)
///   weighted paths   ρ ::= ρ (+) ρ  <  ρ . ρ  <  ρ^+, ρ^w  <  φ_prop, φ?, (ρ)
///   expressions      E ::= E + E  <  E (.) E  <  E . E  <  E^+, E^w  <  k a, k eps, (E)
///   classical LTL    ψ ::= ψ | ψ  <  ψ & ψ  <  ψ U ψ  <  !ψ, X ψ  <  true, false, a, (ψ)
///   weighted LTL     φ ::= φ (+) φ  <  φ (x) φ  <  φ U φ  <  X φ, G* φ  <  k, [ψ], (φ)
///
/// `|`, `&` (LTL) and `false` in classical formulas are abbreviations and are
/// expanded at parse time. `U` is right associative, all other binary
/// operators associate to the left.
///
/// Throws ParseError (with line/column) on syntax errors, unknown letters,
/// invalid weight literals and constructs that are illegal for `sort`.
Ast parse(Sort sort, std::string_view text, const Alphabet& alphabet, Semiring semiring);

/// Prints `a` so that parse(sort, print(a, sort)) == a.
std::string print(const Ast& a, Sort sort);

/// Throws ParseError when `a` is not a well-formed tree of the given sort.
void validate(const Ast& a, Sort sort);

/// Parses the CLI names: prop, ldl, ldl-omega, wldl, wldl-omega, gre,
/// gre-omega, ltl, wltl.
Sort sort_from_name(std::string_view name);
std::string_view sort_name(Sort sort);
bool is_omega_sort(Sort sort);

/// /\_{a in A} !a : holds exactly on the empty word.
Ast none_of(const Alphabet& alphabet);

/// Last ::= <true> /\_{a in A} !a : holds exactly on one-letter words.
Ast expand_last(const Alphabet& alphabet);

/// ⊕-combination of k ⊗ (classical) terms. A bare constant counts as
/// k ⊗ true and a bare classical formula as 1 ⊗ ψ.
bool is_ltl_step(const Ast& phi);

/// Whether every G* ψ and every ψ U ξ has an LTL-step formula ψ.
bool is_rltl(const Ast& phi);

/// The first operand (pre-order) violating the rLTL condition, or null.
Ast rltl_offender(const Ast& phi);

/// Whether an expression is Hadamard-free (a plain weighted rational expression).
bool is_hadamard_free(const Ast& e);

/// A formula file: `#` comment lines, an optional `alphabet: a b c` header,
/// and the formula text.
struct FormulaFile {
  std::optional<Alphabet> alphabet;
  std::string text;
};

FormulaFile read_formula_text(std::string_view contents);

/// The lowercase single-letter identifiers occurring in formula text, used
/// to infer an alphabet when none is declared.
std::string letters_in_text(std::string_view text);

}  // namespace wldl
