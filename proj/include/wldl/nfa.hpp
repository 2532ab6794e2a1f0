#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wldl/ast.hpp"

namespace wldl {

using State = std::uint32_t;

constexpr std::size_t kDefaultMaxStates = std::size_t{1} << 16;

/// Nondeterministic automaton without ε-moves; several initial states allowed.
struct Nfa {
  Alphabet alphabet;
  // next[q][letter index] = sorted successor list
  std::vector<std::vector<std::vector<State>>> next;
  std::vector<State> initial;
  std::vector<bool> accepting;

  std::size_t size() const { return next.size(); }
  State add_state(bool accept = false);
  void add_edge(State from, std::size_t letter, State to);
};

/// Complete deterministic automaton.
struct Dfa {
  Alphabet alphabet;
  std::vector<std::vector<State>> next;
  State initial = 0;
  std::vector<bool> accepting;

  std::size_t size() const { return next.size(); }
};

bool accepts(const Nfa& n, const Word& w);
bool accepts(const Dfa& d, const Word& w);
bool accepts_empty(const Nfa& n);
bool is_empty(const Nfa& n);

/// Language building blocks.
Nfa nfa_empty(const Alphabet& a);
Nfa nfa_epsilon(const Alphabet& a);
Nfa nfa_universal(const Alphabet& a);
/// Words of length one whose letter satisfies `pred`.
template <class Pred>
Nfa nfa_letters(const Alphabet& a, Pred pred) {
  Nfa n;
  n.alphabet = a;
  const State s = n.add_state();
  const State f = n.add_state(true);
  n.initial = {s};
  for (std::size_t i = 0; i < a.size(); ++i)
    if (pred(a[i])) n.add_edge(s, i, f);
  return n;
}

/// Subset construction; throws StateBudgetExceeded beyond `max_states`.
Dfa determinize(const Nfa& n, std::size_t max_states = kDefaultMaxStates);
Dfa complement(const Dfa& d);
/// Moore partition refinement on the reachable part.
Dfa minimize(const Dfa& d);
Nfa to_nfa(const Dfa& d);

Nfa nfa_union(const Nfa& a, const Nfa& b);
Nfa nfa_product(const Nfa& a, const Nfa& b);
Nfa nfa_concat(const Nfa& a, const Nfa& b);
/// L^+ (one or more factors).
Nfa nfa_plus(const Nfa& a);
/// Complement via determinization and minimization.
Nfa nfa_complement(const Nfa& a, std::size_t max_states = kDefaultMaxStates);
/// L minus {ε}.
Nfa nfa_drop_epsilon(const Nfa& a);

/// Removes states that are unreachable or cannot reach acceptance.
Nfa trim(const Nfa& n);

/// Determinizes and minimizes when that gives fewer states.
Nfa reduce(const Nfa& n, std::size_t max_states = kDefaultMaxStates);

}  // namespace wldl
