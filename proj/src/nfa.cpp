#include "wldl/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "wldl/error.hpp"

namespace wldl {

State Nfa::add_state(bool accept) {
  next.emplace_back(alphabet.size());
  accepting.push_back(accept);
  return static_cast<State>(next.size() - 1);
}

void Nfa::add_edge(State from, std::size_t letter, State to) {
  auto& succ = next[from][letter];
  auto it = std::lower_bound(succ.begin(), succ.end(), to);
  if (it == succ.end() || *it != to) succ.insert(it, to);
}

namespace {

std::vector<State> successors(const Nfa& n, const std::vector<State>& set, std::size_t letter) {
  std::vector<State> out;
  for (State q : set) out.insert(out.end(), n.next[q][letter].begin(), n.next[q][letter].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
  if (!(a == b)) throw UsageError("automata over different alphabets");
}

// Copies `src` into `dst` with state offset; returns the offset.
State append(Nfa& dst, const Nfa& src) {
  const State offset = static_cast<State>(dst.size());
  for (std::size_t q = 0; q < src.size(); ++q) dst.add_state(src.accepting[q]);
  for (std::size_t q = 0; q < src.size(); ++q)
    for (std::size_t a = 0; a < src.alphabet.size(); ++a)
      for (State r : src.next[q][a]) dst.next[q + offset][a].push_back(r + offset);
  return offset;
}

}  // namespace

bool accepts(const Nfa& n, const Word& w) {
  std::vector<State> cur = n.initial;
  std::sort(cur.begin(), cur.end());
  for (char c : w) {
    const int a = n.alphabet.index(c);
    if (a < 0) return false;
    cur = successors(n, cur, static_cast<std::size_t>(a));
  }
  return std::any_of(cur.begin(), cur.end(), [&](State q) { return n.accepting[q]; });
}

bool accepts(const Dfa& d, const Word& w) {
  State q = d.initial;
  for (char c : w) {
    const int a = d.alphabet.index(c);
    if (a < 0) return false;
    q = d.next[q][static_cast<std::size_t>(a)];
  }
  return d.accepting[q];
}

bool accepts_empty(const Nfa& n) {
  return std::any_of(n.initial.begin(), n.initial.end(), [&](State q) { return n.accepting[q]; });
}

bool is_empty(const Nfa& n) { return trim(n).size() == 0; }

Nfa nfa_empty(const Alphabet& a) {
  Nfa n;
  n.alphabet = a;
  return n;
}

Nfa nfa_epsilon(const Alphabet& a) {
  Nfa n;
  n.alphabet = a;
  n.initial = {n.add_state(true)};
  return n;
}

Nfa nfa_universal(const Alphabet& a) {
  Nfa n;
  n.alphabet = a;
  const State q = n.add_state(true);
  n.initial = {q};
  for (std::size_t i = 0; i < a.size(); ++i) n.add_edge(q, i, q);
  return n;
}

Dfa determinize(const Nfa& n, std::size_t max_states) {
  Dfa d;
  d.alphabet = n.alphabet;
  std::map<std::vector<State>, State> ids;
  std::deque<std::vector<State>> work;
  auto intern = [&](std::vector<State> set) {
    auto [it, fresh] = ids.emplace(set, static_cast<State>(d.next.size()));
    if (fresh) {
      if (d.next.size() >= max_states) throw StateBudgetExceeded(max_states);
      d.next.emplace_back(n.alphabet.size(), 0);
      d.accepting.push_back(std::any_of(set.begin(), set.end(), [&](State q) { return n.accepting[q]; }));
      work.push_back(std::move(set));
    }
    return it->second;
  };
  std::vector<State> start = n.initial;
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());
  d.initial = intern(start);
  while (!work.empty()) {
    std::vector<State> set = std::move(work.front());
    work.pop_front();
    const State id = ids.at(set);
    for (std::size_t a = 0; a < n.alphabet.size(); ++a) {
      const State target = intern(successors(n, set, a));
      d.next[id][a] = target;
    }
  }
  return d;
}

Dfa complement(const Dfa& d) {
  Dfa c = d;
  for (std::size_t q = 0; q < c.size(); ++q) c.accepting[q] = !c.accepting[q];
  return c;
}

Dfa minimize(const Dfa& d) {
  // reachable part
  std::vector<int> order(d.size(), -1);
  std::vector<State> reach{d.initial};
  order[d.initial] = 0;
  for (std::size_t k = 0; k < reach.size(); ++k)
    for (State r : d.next[reach[k]])
      if (order[r] < 0) {
        order[r] = static_cast<int>(reach.size());
        reach.push_back(r);
      }
  const std::size_t m = reach.size();
  const std::size_t letters = d.alphabet.size();
  std::vector<std::size_t> cls(m);
  for (std::size_t k = 0; k < m; ++k) cls[k] = d.accepting[reach[k]] ? 1 : 0;
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> sig;
    std::vector<std::size_t> next_cls(m);
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<std::size_t> key{cls[k]};
      for (std::size_t a = 0; a < letters; ++a) key.push_back(cls[static_cast<std::size_t>(order[d.next[reach[k]][a]])]);
      next_cls[k] = sig.emplace(std::move(key), sig.size()).first->second;
    }
    const bool stable = sig.size() == classes;
    classes = sig.size();
    cls = std::move(next_cls);
    if (stable) break;
  }
  Dfa out;
  out.alphabet = d.alphabet;
  out.next.assign(classes, std::vector<State>(letters, 0));
  out.accepting.assign(classes, false);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t c = cls[k];
    out.accepting[c] = d.accepting[reach[k]];
    for (std::size_t a = 0; a < letters; ++a)
      out.next[c][a] = static_cast<State>(cls[static_cast<std::size_t>(order[d.next[reach[k]][a]])]);
  }
  out.initial = static_cast<State>(cls[0]);
  return out;
}

Nfa to_nfa(const Dfa& d) {
  Nfa n;
  n.alphabet = d.alphabet;
  for (std::size_t q = 0; q < d.size(); ++q) n.add_state(d.accepting[q]);
  for (std::size_t q = 0; q < d.size(); ++q)
    for (std::size_t a = 0; a < d.alphabet.size(); ++a) n.next[q][a] = {d.next[q][a]};
  n.initial = {d.initial};
  return trim(n);
}

Nfa nfa_union(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a.alphabet, b.alphabet);
  Nfa n = a;
  const State off = append(n, b);
  for (State q : b.initial) n.initial.push_back(q + off);
  return n;
}

Nfa nfa_product(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a.alphabet, b.alphabet);
  Nfa n;
  n.alphabet = a.alphabet;
  std::map<std::pair<State, State>, State> ids;
  std::vector<std::pair<State, State>> work;
  auto intern = [&](State p, State q) {
    auto [it, fresh] = ids.emplace(std::make_pair(p, q), static_cast<State>(n.size()));
    if (fresh) {
      n.add_state(a.accepting[p] && b.accepting[q]);
      work.emplace_back(p, q);
    }
    return it->second;
  };
  for (State p : a.initial)
    for (State q : b.initial) n.initial.push_back(intern(p, q));
  for (std::size_t k = 0; k < work.size(); ++k) {
    const auto [p, q] = work[k];
    for (std::size_t l = 0; l < a.alphabet.size(); ++l)
      for (State p2 : a.next[p][l])
        for (State q2 : b.next[q][l]) {
          const State t = intern(p2, q2);
          n.add_edge(static_cast<State>(k), l, t);
        }
  }
  return trim(n);
}

Nfa nfa_concat(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a.alphabet, b.alphabet);
  const bool a_eps = accepts_empty(a);
  const bool b_eps = accepts_empty(b);
  Nfa n = a;
  const State off = append(n, b);
  for (std::size_t q = 0; q < a.size(); ++q) n.accepting[q] = a.accepting[q] && b_eps;
  if (a_eps)
    for (State q : b.initial) n.initial.push_back(q + off);
  for (std::size_t f = 0; f < a.size(); ++f) {
    if (!a.accepting[f]) continue;
    for (std::size_t l = 0; l < a.alphabet.size(); ++l)
      for (State q : b.initial)
        for (State r : b.next[q][l]) n.add_edge(static_cast<State>(f), l, r + off);
  }
  return trim(n);
}

Nfa nfa_plus(const Nfa& a) {
  Nfa n = a;
  for (std::size_t f = 0; f < a.size(); ++f) {
    if (!a.accepting[f]) continue;
    for (std::size_t l = 0; l < a.alphabet.size(); ++l)
      for (State q : a.initial)
        for (State r : a.next[q][l]) n.add_edge(static_cast<State>(f), l, r);
  }
  return trim(n);
}

Nfa nfa_complement(const Nfa& a, std::size_t max_states) {
  return to_nfa(minimize(complement(determinize(a, max_states))));
}

Nfa nfa_drop_epsilon(const Nfa& a) {
  if (!accepts_empty(a)) return a;
  Nfa n = a;
  const State s = n.add_state(false);
  for (State q : a.initial)
    for (std::size_t l = 0; l < a.alphabet.size(); ++l)
      for (State r : a.next[q][l]) n.add_edge(s, l, r);
  n.initial = {s};
  return trim(n);
}

Nfa trim(const Nfa& n) {
  const std::size_t size = n.size();
  std::vector<bool> fwd(size, false);
  std::vector<State> stack;
  for (State q : n.initial)
    if (!fwd[q]) {
      fwd[q] = true;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (const auto& succ : n.next[q])
      for (State r : succ)
        if (!fwd[r]) {
          fwd[r] = true;
          stack.push_back(r);
        }
  }
  std::vector<std::vector<State>> pred(size);
  for (std::size_t q = 0; q < size; ++q)
    for (const auto& succ : n.next[q])
      for (State r : succ) pred[r].push_back(static_cast<State>(q));
  std::vector<bool> bwd(size, false);
  for (std::size_t q = 0; q < size; ++q)
    if (n.accepting[q]) {
      bwd[q] = true;
      stack.push_back(static_cast<State>(q));
    }
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State p : pred[q])
      if (!bwd[p]) {
        bwd[p] = true;
        stack.push_back(p);
      }
  }
  std::vector<State> id(size, 0);
  Nfa out;
  out.alphabet = n.alphabet;
  for (std::size_t q = 0; q < size; ++q)
    if (fwd[q] && bwd[q]) id[q] = out.add_state(n.accepting[q]);
  for (std::size_t q = 0; q < size; ++q) {
    if (!(fwd[q] && bwd[q])) continue;
    for (std::size_t l = 0; l < n.alphabet.size(); ++l)
      for (State r : n.next[q][l])
        if (fwd[r] && bwd[r]) out.next[id[q]][l].push_back(id[r]);
  }
  for (State q : n.initial)
    if (fwd[q] && bwd[q]) out.initial.push_back(id[q]);
  std::sort(out.initial.begin(), out.initial.end());
  out.initial.erase(std::unique(out.initial.begin(), out.initial.end()), out.initial.end());
  return out;
}

Nfa reduce(const Nfa& n, std::size_t max_states) {
  Nfa t = trim(n);
  if (t.size() <= 1) return t;
  const std::size_t budget = std::min(max_states, std::max<std::size_t>(64, 8 * t.size()));
  try {
    Nfa m = to_nfa(minimize(determinize(t, budget)));
    return m.size() <= t.size() ? m : t;
  } catch (const StateBudgetExceeded&) {
    return t;
  }
}

}  // namespace wldl
