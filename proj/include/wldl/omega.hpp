#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wldl/ast.hpp"
#include "wldl/nfa.hpp"
#include "wldl/semiring.hpp"
#include "wldl/translate.hpp"
#include "wldl/wfa.hpp"

namespace wldl {

/// The ultimately periodic word stem·loop^ω. The loop is never empty.
struct LassoWord {
  Word stem;
  Word loop;

  LassoWord() = default;
  LassoWord(Word u, Word v);

  /// Parses `u:v`; throws UsageError on a missing colon or empty loop.
  static LassoWord parse(std::string_view text);
  std::string to_string() const { return stem + ":" + loop; }

  /// Number of distinct positions: |stem| + |loop|.
  std::size_t positions() const { return stem.size() + loop.size(); }
  char at(std::size_t pos) const { return pos < stem.size() ? stem[pos] : loop[pos - stem.size()]; }
  std::size_t next(std::size_t pos) const { return pos + 1 < positions() ? pos + 1 : stem.size(); }
  /// The suffix starting at position `pos`, as a lasso.
  LassoWord suffix(std::size_t pos) const;
  /// Letter `i` of the infinite word.
  char letter(std::size_t i) const;

  /// Primitive loop, shortest stem. Equal ω-words have equal canonical forms.
  LassoWord canonical() const;

  friend bool operator==(const LassoWord&, const LassoWord&) = default;
};

/// Nondeterministic Büchi automaton; `accepting` is the Büchi set.
using Nba = Nfa;

/// Weighted Büchi automaton: a linear representation whose final vector is
/// unused, plus an accepting set. Runs are weighted by the (infinite)
/// product of their transitions.
struct Wba {
  Wfa graph;
  std::vector<bool> accepting;
};

bool nba_accepts(const Nba& a, const LassoWord& w);
Nba nba_universal(const Alphabet& alphabet);
Nba nba_intersect(const Nba& a, const Nba& b);
/// Finite-word language times ω-language.
Nba nba_concat(const Nfa& prefix, const Nba& b);
/// (L \ {ε})^ω for a finite-word automaton.
Nba nba_omega(const Nfa& a);
/// Rank-based complementation; throws StateBudgetExceeded.
Nba nba_complement(const Nba& a, std::size_t max_states = kDefaultMaxStates);

/// LDL_ω formula to a Büchi automaton. Negations are pushed inward where
/// the connective allows it; the rest go through complementation.
Nba ldlo_to_nba(const Ast& xi, const Alphabet& alphabet, const CompileOptions& opt = {});

/// w ⊨ ξ via ldlo_to_nba and lasso acceptance.
bool sat_ldlo(const Ast& xi, const LassoWord& w, const Alphabet& alphabet, const CompileOptions& opt = {});

/// w ⊨ ξ evaluated position by position on the lasso; needs no complementation.
bool sat_ldlo_direct(const Ast& xi, const LassoWord& w, const Alphabet& alphabet, const CompileOptions& opt = {});

/// Value of a weighted Büchi automaton on a lasso (boolean and minplus).
Weight wba_eval(const Wba& a, const LassoWord& w);

Wba wba_from_nba(const Nba& a, Semiring s);
Wba wba_union(const Wba& a, const Wba& b);
Wba wba_product(const Wba& a, const Wba& b);
Wba wba_prefix(const std::vector<bool>& letters, const Wba& a);
Wba wba_concat(const Wfa& prefix, const Wba& b);
/// ω-iteration of a proper finite-word automaton.
Wba wba_omega(const Wfa& a);
Wba wba_constant(Semiring s, const Alphabet& alphabet, const Weight& k);
Wba wba_empty(Semiring s, const Alphabet& alphabet);

/// ‖ζ‖_ω(w) for boolean and minplus. Throws UnsupportedOmegaSemiring for
/// other semirings and ImproperIteration for improper ϖ bodies.
Weight eval_wldlo(const Ast& zeta, const LassoWord& w, Semiring s, const Alphabet& alphabet,
                  const CompileOptions& opt = {});

/// ‖E‖(w) for ω-expressions, boolean and minplus.
Weight eval_greo(const Ast& e, const LassoWord& w, Semiring s, const Alphabet& alphabet);

/// Weighted Büchi compilation; idempotent semirings only (NotIdempotent).
Wba wldlo_to_wba(const Ast& zeta, Semiring s, const Alphabet& alphabet, const CompileOptions& opt = {});
Wba greo_to_wba(const Ast& e, Semiring s, const Alphabet& alphabet);

/// Σ_f E(initial→f) · E(f→f, nonempty)^ω over accepting f; 0/1 valued in
/// idempotent semirings.
Ast nba_to_zero_one_omega_re(const Nba& a, Semiring s);

}  // namespace wldl
