#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wldl/ast.hpp"
#include "wldl/nfa.hpp"
#include "wldl/semiring.hpp"

namespace wldl {

/// Weighted finite automaton as a linear representation (α, M, β):
/// ‖A‖(w) = α · M(w(0)) ⋯ M(w(n-1)) · β. Matrices are stored as sparse rows.
class Wfa {
 public:
  using Row = std::vector<std::pair<State, Weight>>;

  Wfa(Semiring semiring, Alphabet alphabet, std::size_t states = 0);

  Semiring semiring() const { return semiring_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return initial_.size(); }

  State add_state();
  void set_initial(State q, const Weight& w) { initial_[q] = w; }
  void set_final(State q, const Weight& w) { final_[q] = w; }
  /// Adds `w` to M(letter)[from][to].
  void add_transition(State from, std::size_t letter, State to, const Weight& w);

  const Weight& initial(State q) const { return initial_[q]; }
  const Weight& final(State q) const { return final_[q]; }
  const Row& row(std::size_t letter, State q) const { return rows_[letter][q]; }
  /// Dense entry M(letter)[from][to].
  Weight transition(std::size_t letter, State from, State to) const;

  std::size_t transition_count() const;

 private:
  Semiring semiring_;
  Alphabet alphabet_;
  std::vector<Weight> initial_;
  std::vector<Weight> final_;
  std::vector<std::vector<Row>> rows_;  // rows_[letter][state]
};

/// ‖A‖(w). Throws UsageError on letters outside the alphabet.
Weight wfa_eval(const Wfa& a, const Word& w);

/// Row vector α·M(w).
std::vector<Weight> wfa_forward(const Wfa& a, const Word& w);

Wfa wfa_sum(const Wfa& a, const Wfa& b);
/// Pointwise product; needs a commutative semiring.
Wfa wfa_hadamard(const Wfa& a, const Wfa& b);
/// Cauchy product ‖A‖·‖B‖ built without ε-moves.
Wfa wfa_cauchy(const Wfa& a, const Wfa& b);
/// ‖A‖^+; throws ImproperPlus when ‖A‖(ε) ≠ 0.
Wfa wfa_plus(const Wfa& a);
/// The series k·1_{first letter satisfies φ}·‖A‖(w≥1) for a letter set.
Wfa wfa_prefix(const std::vector<bool>& letters, const Wfa& a);
/// The constant series k.
Wfa wfa_constant(Semiring s, const Alphabet& alphabet, const Weight& k);

/// Drops states that are not both accessible and co-accessible.
Wfa wfa_trim(const Wfa& a);

/// 0/1 automaton of a DFA (exact in every semiring) and of an NFA (exact
/// only in idempotent semirings, where path multiplicities collapse).
Wfa wfa_from_dfa(const Dfa& d, Semiring s);
Wfa wfa_from_nfa(const Nfa& n, Semiring s);

/// Linear representation of a (generalized) rational expression.
Wfa gre_to_wfa(const Ast& e, Semiring s, const Alphabet& alphabet);

struct EquivResult {
  bool equivalent = true;
  std::optional<Word> witness;  // shortlex-minimal counterexample
  std::size_t basis_size = 0;
  std::size_t dimension_bound = 0;
};

/// Decides ‖A‖ = ‖B‖ over the rationals by forward basis exploration of
/// the difference automaton. Throws NotAField for other semirings.
EquivResult wfa_equiv_field(const Wfa& a, const Wfa& b);

/// Number of basis-bound violations detected so far (expected to stay 0).
std::size_t equiv_bound_trips();

/// Expression-labelled graph for state elimination. Nodes 0..nodes-1 are
/// eliminated; endpoints use indices >= nodes.
struct ReGraph {
  std::size_t nodes = 0;
  std::map<std::pair<std::size_t, std::size_t>, Ast> edges;

  /// Adds `e` to the label of p -> q.
  void add(std::size_t p, std::size_t q, const Ast& e);
};

/// The expression labelling source -> sink once every inner node is gone,
/// or `0 eps` when there is none.
Ast eliminate_states(ReGraph g, std::size_t source, std::size_t sink, Semiring s);

/// Hadamard-free 0/1 expression of L(d) by state elimination.
Ast dfa_to_zero_one_re(const Dfa& d, Semiring s);

/// JSON interchange.
std::string wfa_to_json(const Wfa& a, const std::vector<bool>* accepting = nullptr);
Wfa wfa_from_json(const std::string& text, std::vector<bool>* accepting = nullptr);

}  // namespace wldl
