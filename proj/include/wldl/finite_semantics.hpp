#pragma once

#include "wldl/ast.hpp"
#include "wldl/semiring.hpp"

namespace wldl {

/// w ⊨ ψ for a classical LDL formula. Iterations ⟨θ^+⟩ are bounded by
/// n ≤ |w|; on the empty word p_a is false and ⟨φ⟩ψ is false for a
/// propositional step φ.
bool sat_ldl(const Ast& psi, const Word& w);

/// ‖φ‖(w) for a weighted LDL formula. Checks properness of every iteration
/// first and throws ImproperIteration on the first offender.
Weight eval_wldl(const Ast& phi, const Word& w, Semiring semiring);

/// Throws ImproperIteration (bottom-up, innermost first) when some ρ^⊕ or
/// ρ^ϖ in a weighted formula has ‖⟨ρ⟩true‖(ε) ≠ 0.
void check_proper(const Ast& phi, Semiring semiring);

/// Whether ‖⟨ρ⟩true‖(ε) = 0 for a finite weighted path. Iterations nested
/// inside ρ are checked first and may throw.
bool is_proper_path(const Ast& rho, Semiring semiring);

/// ‖E‖(w) for a (finite) generalized weighted rational expression. Throws
/// ImproperPlus when a `^+` body is nonzero on ε.
Weight eval_gre(const Ast& e, const Word& w, Semiring semiring);

/// Throws ImproperPlus for the innermost `^+` (or `^w`) body with nonzero
/// value at ε.
void check_proper_gre(const Ast& e, Semiring semiring);

/// Classical LTL on finite words: w, 0 ⊨ ψ. X is the strong next (it needs
/// a next position); on the empty word only `true` and negations of
/// false formulas hold.
bool sat_ltl(const Ast& psi, const Word& w);

/// ‖φ‖(w) for a weighted LTL formula, with ⃝φ reading ‖φ‖(w≥1) and
/// w≥1 = ε when |w| ≤ 1.
Weight eval_wltl(const Ast& phi, const Word& w, Semiring semiring);

/// Value of a propositional formula on one letter.
bool prop_holds(const Ast& prop, char letter);

}  // namespace wldl
