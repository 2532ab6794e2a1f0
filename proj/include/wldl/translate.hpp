#pragma once

#include "wldl/ast.hpp"
#include "wldl/nfa.hpp"
#include "wldl/semiring.hpp"
#include "wldl/wfa.hpp"

namespace wldl {

/// Options shared by the compiling translations.
struct CompileOptions {
  std::size_t max_states = kDefaultMaxStates;
};

/// Classical LDL formula to an NFA with L(result) = {w : w ⊨ ψ}.
Nfa ldl_to_nfa(const Ast& psi, const Alphabet& alphabet, const CompileOptions& opt = {});

/// Rational expression to weighted LDL, linear in the size of E.
Ast gre_to_wldl(const Ast& e, const Alphabet& alphabet);

/// Weighted LDL to a generalized rational expression with the same series.
/// Classical subformulas go through a minimal DFA and state elimination.
Ast wldl_to_gre(const Ast& phi, Semiring s, const Alphabet& alphabet, const CompileOptions& opt = {});

/// Weighted LDL to a weighted automaton with the same series.
Wfa wldl_to_wfa(const Ast& phi, Semiring s, const Alphabet& alphabet, const CompileOptions& opt = {});

/// ‖φ1‖ = ‖φ2‖ over the rationals, with a shortest witness otherwise.
EquivResult wldl_equiv(const Ast& phi1, const Ast& phi2, Semiring s, const Alphabet& alphabet,
                       const CompileOptions& opt = {});

/// ω-expression to weighted LDL_ω, linear in the size of E.
Ast greo_to_wldlo(const Ast& e, const Alphabet& alphabet);

/// Weighted LDL_ω to an ω-expression. Classical subformulas go through a
/// Büchi automaton; the resulting 0/1 expression is exact in idempotent
/// semirings only, so other semirings raise UnsupportedOmegaSemiring.
Ast wldlo_to_greo(const Ast& zeta, Semiring s, const Alphabet& alphabet, const CompileOptions& opt = {});

/// Σ_{a ⊨ φ} 1a, or `0 eps` when no letter satisfies φ.
Ast letter_sum(const Ast& prop, Semiring s, const Alphabet& alphabet);

}  // namespace wldl
