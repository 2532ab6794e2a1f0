#include "wldl/omega.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "wldl/error.hpp"
#include "wldl/finite_semantics.hpp"
#include "wldl/syntax.hpp"

namespace wldl {

// ---------------------------------------------------------------------------
// Lasso words

LassoWord::LassoWord(Word u, Word v) : stem(std::move(u)), loop(std::move(v)) {
  if (loop.empty()) throw UsageError("the loop of a lasso word must be nonempty");
}

LassoWord LassoWord::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw UsageError("expected a lasso word of the form stem:loop");
  return LassoWord(Word(text.substr(0, colon)), Word(text.substr(colon + 1)));
}

LassoWord LassoWord::suffix(std::size_t pos) const {
  if (pos < stem.size()) return LassoWord(stem.substr(pos), loop);
  const std::size_t r = pos - stem.size();
  return LassoWord("", loop.substr(r) + loop.substr(0, r));
}

char LassoWord::letter(std::size_t i) const {
  if (i < stem.size()) return stem[i];
  return loop[(i - stem.size()) % loop.size()];
}

LassoWord LassoWord::canonical() const {
  Word v = loop;
  const std::size_t n = v.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = v[i] == v[i - p];
    if (periodic) {
      v.resize(p);
      break;
    }
  }
  Word u = stem;
  while (!u.empty() && u.back() == v.back()) {
    u.pop_back();
    std::rotate(v.begin(), v.end() - 1, v.end());
  }
  return LassoWord(std::move(u), std::move(v));
}

namespace {

using Graph = std::vector<std::vector<std::uint32_t>>;

// Nodes that can reach a nontrivial strongly connected component containing
// a marked node.
std::vector<bool> reaches_marked_cycle(const Graph& g, const std::vector<bool>& marked) {
  const std::size_t n = g.size();
  constexpr std::uint32_t kNone = ~std::uint32_t{0};
  std::vector<std::uint32_t> index(n, kNone);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<std::uint32_t> comp(n, kNone);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;
  std::vector<bool> good_comp;
  std::uint32_t counter = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kNone) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < g[v].size()) {
        const std::uint32_t w = g[v][i++];
        if (index[w] == kNone) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::uint32_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] != index[done]) continue;
      const auto id = static_cast<std::uint32_t>(good_comp.size());
      std::vector<std::uint32_t> members;
      std::uint32_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = id;
        members.push_back(w);
      } while (w != done);
      bool nontrivial = members.size() > 1 ||
                        std::find(g[done].begin(), g[done].end(), done) != g[done].end();
      bool has_mark = false;
      for (auto m : members) has_mark = has_mark || marked[m];
      good_comp.push_back(nontrivial && has_mark);
    }
  }
  // Tarjan emits components in reverse topological order, so successors
  // are settled before their predecessors.
  std::vector<std::vector<std::uint32_t>> by_comp(good_comp.size());
  for (std::uint32_t v = 0; v < n; ++v) by_comp[comp[v]].push_back(v);
  std::vector<bool> comp_ok = good_comp;
  for (std::size_t c = 0; c < by_comp.size(); ++c) {
    if (comp_ok[c]) continue;
    for (auto v : by_comp[c])
      for (auto w : g[v])
        if (comp[w] != c && comp_ok[comp[w]]) comp_ok[c] = true;
  }
  std::vector<bool> out(n);
  for (std::uint32_t v = 0; v < n; ++v) out[v] = comp_ok[comp[v]];
  return out;
}

std::vector<std::size_t> lasso_letters(const Alphabet& alphabet, const LassoWord& w) {
  alphabet.check_word(w.stem);
  alphabet.check_word(w.loop);
  std::vector<std::size_t> idx(w.positions());
  for (std::size_t p = 0; p < idx.size(); ++p) idx[p] = static_cast<std::size_t>(alphabet.index(w.at(p)));
  return idx;
}

void require_lasso_semiring(Semiring s) {
  if (!s.lasso_omega_supported()) throw UnsupportedOmegaSemiring(std::string(s.name()));
}

bool is_weighted_true(const Ast& a) { return a->op == Op::Embed && a->kid(0)->op == Op::True; }

Nba nba_from_letters(const Alphabet& alphabet, const std::vector<bool>& mask, const Nba& rest) {
  return nba_concat(nfa_letters(alphabet, [&](char c) { return mask[alphabet.index(c)]; }), rest);
}

std::vector<bool> letter_mask(const Ast& prop, const Alphabet& alphabet, bool positive) {
  std::vector<bool> mask(alphabet.size());
  for (std::size_t i = 0; i < alphabet.size(); ++i) mask[i] = prop_holds(prop, alphabet[i]) == positive;
  return mask;
}

bool is_universal(const Nba& a) {
  if (a.size() != 1 || !a.accepting[0] || a.initial.size() != 1) return false;
  for (const auto& succ : a.next[0])
    if (succ.size() != 1) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Büchi automata

bool nba_accepts(const Nba& a, const LassoWord& w) {
  const auto idx = lasso_letters(a.alphabet, w);
  const std::size_t positions = w.positions();
  const std::size_t n = a.size() * positions;
  Graph g(n);
  std::vector<bool> marked(n, false);
  for (State q = 0; q < a.size(); ++q)
    for (std::size_t p = 0; p < positions; ++p) {
      const std::size_t v = q * positions + p;
      marked[v] = a.accepting[q];
      for (State r : a.next[q][idx[p]]) g[v].push_back(static_cast<std::uint32_t>(r * positions + w.next(p)));
    }
  const auto good = reaches_marked_cycle(g, marked);
  for (State q : a.initial)
    if (good[q * positions]) return true;
  return false;
}

Nba nba_universal(const Alphabet& alphabet) {
  Nba n;
  n.alphabet = alphabet;
  n.add_state(true);
  n.initial = {0};
  for (std::size_t l = 0; l < alphabet.size(); ++l) n.add_edge(0, l, 0);
  return n;
}

Nba nba_intersect(const Nba& a, const Nba& b) {
  if (is_universal(a)) return b;
  if (is_universal(b)) return a;
  Nba n;
  n.alphabet = a.alphabet;
  std::map<std::tuple<State, State, int>, State> ids;
  std::vector<std::tuple<State, State, int>> work;
  auto intern = [&](State p, State q, int flag) {
    auto [it, fresh] = ids.emplace(std::make_tuple(p, q, flag), static_cast<State>(n.size()));
    if (fresh) {
      n.add_state(flag == 0 && a.accepting[p]);
      work.emplace_back(p, q, flag);
    }
    return it->second;
  };
  for (State p : a.initial)
    for (State q : b.initial) n.initial.push_back(intern(p, q, 0));
  for (std::size_t k = 0; k < work.size(); ++k) {
    const auto [p, q, flag] = work[k];
    const int next_flag = flag == 0 ? (a.accepting[p] ? 1 : 0) : (b.accepting[q] ? 0 : 1);
    for (std::size_t l = 0; l < a.alphabet.size(); ++l)
      for (State p2 : a.next[p][l])
        for (State q2 : b.next[q][l]) n.add_edge(static_cast<State>(k), l, intern(p2, q2, next_flag));
  }
  return trim(n);
}

Nba nba_concat(const Nfa& prefix, const Nba& b) {
  Nba n = prefix;
  const State off = static_cast<State>(n.size());
  for (State q = 0; q < b.size(); ++q) n.add_state(b.accepting[q]);
  for (State q = 0; q < b.size(); ++q)
    for (std::size_t l = 0; l < b.alphabet.size(); ++l)
      for (State r : b.next[q][l]) n.add_edge(q + off, l, r + off);
  for (State q = 0; q < prefix.size(); ++q) {
    n.accepting[q] = false;
    if (!prefix.accepting[q]) continue;
    for (std::size_t l = 0; l < b.alphabet.size(); ++l)
      for (State i : b.initial)
        for (State r : b.next[i][l]) n.add_edge(q, l, r + off);
  }
  if (accepts_empty(prefix))
    for (State i : b.initial) n.initial.push_back(i + off);
  return trim(n);
}

Nba nba_omega(const Nfa& finite) {
  const Nfa a = nfa_drop_epsilon(finite);
  Nba n;
  n.alphabet = a.alphabet;
  const State s = n.add_state(true);
  for (State q = 0; q < a.size(); ++q) n.add_state(false);
  n.initial = {s};
  for (State q = 0; q < a.size(); ++q)
    for (std::size_t l = 0; l < a.alphabet.size(); ++l)
      for (State r : a.next[q][l]) {
        n.add_edge(q + 1, l, r + 1);
        if (a.accepting[r]) n.add_edge(q + 1, l, s);
      }
  for (State i : a.initial)
    for (std::size_t l = 0; l < a.alphabet.size(); ++l)
      for (State r : a.next[i][l]) {
        n.add_edge(s, l, r + 1);
        if (a.accepting[r]) n.add_edge(s, l, s);
      }
  return trim(n);
}

Nba nba_complement(const Nba& input, std::size_t max_states) {
  const Nba a = trim(input);
  const std::size_t n = a.size();
  if (n == 0 || a.initial.empty()) return nba_universal(a.alphabet);
  const int max_rank = static_cast<int>(2 * n);
  // a state is a level ranking g (-1 = not present) followed by the O set
  using Key = std::vector<std::int16_t>;
  Nba out;
  out.alphabet = a.alphabet;
  std::map<Key, State> ids;
  std::vector<Key> work;
  auto intern = [&](Key k) {
    auto [it, fresh] = ids.emplace(k, static_cast<State>(out.size()));
    if (fresh) {
      if (out.size() >= max_states) throw StateBudgetExceeded(max_states);
      bool o_empty = true;
      for (std::size_t q = 0; q < n; ++q) o_empty = o_empty && k[n + q] == 0;
      out.add_state(o_empty);
      work.push_back(std::move(k));
    }
    return it->second;
  };
  Key init(2 * n, 0);
  for (std::size_t q = 0; q < n; ++q) init[q] = -1;
  for (State q : a.initial) init[q] = static_cast<std::int16_t>(max_rank);
  out.initial = {intern(init)};
  std::vector<int> bound(n);
  std::vector<bool> from_o(n);
  for (std::size_t k = 0; k < work.size(); ++k) {
    const Key cur = work[k];
    bool o_empty = true;
    for (std::size_t q = 0; q < n; ++q) o_empty = o_empty && cur[n + q] == 0;
    for (std::size_t l = 0; l < a.alphabet.size(); ++l) {
      std::fill(bound.begin(), bound.end(), -1);
      std::fill(from_o.begin(), from_o.end(), false);
      for (std::size_t q = 0; q < n; ++q) {
        if (cur[q] < 0) continue;
        for (State r : a.next[q][l]) {
          bound[r] = bound[r] < 0 ? cur[q] : std::min<int>(bound[r], cur[q]);
          if (cur[n + q]) from_o[r] = true;
        }
      }
      std::vector<std::size_t> present;
      double combos = 1;
      for (std::size_t r = 0; r < n; ++r)
        if (bound[r] >= 0) {
          present.push_back(r);
          combos *= a.accepting[r] ? bound[r] / 2 + 1 : bound[r] + 1;
        }
      if (combos > static_cast<double>(max_states)) throw StateBudgetExceeded(max_states);
      Key next(2 * n, 0);
      for (std::size_t r = 0; r < n; ++r) next[r] = -1;
      for (auto r : present) next[r] = 0;
      for (;;) {
        Key full = next;
        for (auto r : present) {
          const bool even = next[r] % 2 == 0;
          full[n + r] = even && (o_empty || from_o[r]) ? 1 : 0;
        }
        out.add_edge(static_cast<State>(k), l, intern(std::move(full)));
        // odometer over the admissible ranks
        std::size_t i = 0;
        for (; i < present.size(); ++i) {
          const auto r = present[i];
          const int step = a.accepting[r] ? 2 : 1;
          if (next[r] + step <= bound[r]) {
            next[r] = static_cast<std::int16_t>(next[r] + step);
            break;
          }
          next[r] = 0;
        }
        if (i == present.size()) break;
      }
    }
  }
  return trim(out);
}

// ---------------------------------------------------------------------------
// LDL_ω to Büchi automata

namespace {

class NbaBuilder {
 public:
  NbaBuilder(const Alphabet& alphabet, const CompileOptions& opt) : alphabet_(alphabet), opt_(opt) {}

  Nba positive(const Ast& xi) {
    const Node& n = *xi;
    switch (n.op) {
      case Op::True: return nba_universal(alphabet_);
      case Op::False: return nfa_empty(alphabet_);
      case Op::Atom: return nba_from_letters(alphabet_, atom_mask(n.letter, true), nba_universal(alphabet_));
      case Op::Not: return negative(n.kid(0));
      case Op::And: return checked(nba_intersect(positive(n.kid(0)), positive(n.kid(1))));
      case Op::Or: return checked(nfa_union(positive(n.kid(0)), positive(n.kid(1))));
      case Op::Diamond: return checked(diamond(n.kid(0), n.kid(1)));
      default: throw UsageError("not an LDL-omega formula");
    }
  }

  Nba negative(const Ast& xi) {
    const Node& n = *xi;
    switch (n.op) {
      case Op::True: return nfa_empty(alphabet_);
      case Op::False: return nba_universal(alphabet_);
      case Op::Atom: return nba_from_letters(alphabet_, atom_mask(n.letter, false), nba_universal(alphabet_));
      case Op::Not: return positive(n.kid(0));
      case Op::And: return checked(nfa_union(negative(n.kid(0)), negative(n.kid(1))));
      case Op::Or: return checked(nba_intersect(negative(n.kid(0)), negative(n.kid(1))));
      case Op::Diamond: return checked(not_diamond(n.kid(0), n.kid(1)));
      default: throw UsageError("not an LDL-omega formula");
    }
  }

  // L(⟨θ⟩true) over finite words
  const Nfa& finite(const Ast& theta) {
    auto it = finite_.find(theta.get());
    if (it == finite_.end())
      it = finite_.emplace(theta.get(), ldl_to_nfa(ast::diamond(theta, ast::tt()), alphabet_, opt_)).first;
    return it->second;
  }

 private:
  Nba diamond(const Ast& eta, const Ast& xi) {
    const Node& n = *eta;
    switch (n.op) {
      case Op::Step:
        return nba_from_letters(alphabet_, letter_mask(n.kid(0), alphabet_, true), positive(xi));
      case Op::Test: return nba_intersect(positive(n.kid(0)), positive(xi));
      case Op::Choice: return nfa_union(diamond(n.kid(0), xi), diamond(n.kid(1), xi));
      case Op::Seq: return nba_concat(finite(n.kid(0)), diamond(n.kid(1), xi));
      case Op::OmegaIter:
        if (xi->op != Op::True) return nfa_empty(alphabet_);
        return nba_omega(finite(n.kid(0)));
      default: throw UsageError("not an LDL-omega path");
    }
  }

  Nba not_diamond(const Ast& eta, const Ast& xi) {
    const Node& n = *eta;
    switch (n.op) {
      case Op::Step: {
        const Ast& prop = n.kid(0);
        return nfa_union(nba_from_letters(alphabet_, letter_mask(prop, alphabet_, false), nba_universal(alphabet_)),
                         nba_from_letters(alphabet_, letter_mask(prop, alphabet_, true), negative(xi)));
      }
      case Op::Test: return nfa_union(negative(n.kid(0)), negative(xi));
      case Op::Choice: return nba_intersect(not_diamond(n.kid(0), xi), not_diamond(n.kid(1), xi));
      case Op::OmegaIter:
        if (xi->op != Op::True) return nba_universal(alphabet_);
        return nba_complement(diamond(eta, xi), opt_.max_states);
      default: return nba_complement(diamond(eta, xi), opt_.max_states);
    }
  }

  std::vector<bool> atom_mask(char a, bool positive) const {
    std::vector<bool> mask(alphabet_.size());
    for (std::size_t i = 0; i < alphabet_.size(); ++i) mask[i] = (alphabet_[i] == a) == positive;
    return mask;
  }

  Nba checked(Nba a) const {
    if (a.size() > opt_.max_states) throw StateBudgetExceeded(opt_.max_states);
    return a;
  }

  const Alphabet& alphabet_;
  const CompileOptions& opt_;
  std::map<const Node*, Nfa> finite_;
};

// Classical LDL_ω directly on the positions of a lasso.
class LassoClassical {
 public:
  LassoClassical(const LassoWord& w, const Alphabet& alphabet, const CompileOptions& opt)
      : w_(w), idx_(lasso_letters(alphabet, w)), nba_(alphabet, opt) {}

  bool sat(const Ast& xi, std::size_t pos) {
    const Node& n = *xi;
    switch (n.op) {
      case Op::True: return true;
      case Op::False: return false;
      case Op::Atom: return w_.at(pos) == n.letter;
      case Op::Not: return !sat(n.kid(0), pos);
      case Op::And: return sat(n.kid(0), pos) && sat(n.kid(1), pos);
      case Op::Or: return sat(n.kid(0), pos) || sat(n.kid(1), pos);
      case Op::Diamond: return diamond(n.kid(0), n.kid(1), pos);
      default: throw UsageError("not an LDL-omega formula");
    }
  }

 private:
  bool diamond(const Ast& eta, const Ast& xi, std::size_t pos) {
    const auto key = std::make_tuple(eta.get(), xi.get(), pos);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const bool r = diamond_uncached(eta, xi, pos);
    memo_.emplace(key, r);
    return r;
  }

  bool diamond_uncached(const Ast& eta, const Ast& xi, std::size_t pos) {
    const Node& n = *eta;
    switch (n.op) {
      case Op::Step: return prop_holds(n.kid(0), w_.at(pos)) && sat(xi, w_.next(pos));
      case Op::Test: return sat(n.kid(0), pos) && sat(xi, pos);
      case Op::Choice: return diamond(n.kid(0), xi, pos) || diamond(n.kid(1), xi, pos);
      case Op::Seq: {
        const Nfa& a = nba_.finite(n.kid(0));
        if (accepts_empty(a) && diamond(n.kid(1), xi, pos)) return true;
        const std::size_t positions = w_.positions();
        std::vector<bool> seen(a.size() * positions, false);
        std::vector<std::pair<State, std::size_t>> work;
        for (State q : a.initial) {
          seen[q * positions + pos] = true;
          work.emplace_back(q, pos);
        }
        while (!work.empty()) {
          const auto [q, p] = work.back();
          work.pop_back();
          const std::size_t p2 = w_.next(p);
          for (State r : a.next[q][idx_[p]]) {
            if (seen[r * positions + p2]) continue;
            seen[r * positions + p2] = true;
            if (a.accepting[r] && diamond(n.kid(1), xi, p2)) return true;
            work.emplace_back(r, p2);
          }
        }
        return false;
      }
      case Op::OmegaIter:
        if (xi->op != Op::True) return false;
        return nba_accepts(nba_omega(nba_.finite(n.kid(0))), w_.suffix(pos));
      default: throw UsageError("not an LDL-omega path");
    }
  }

  const LassoWord& w_;
  std::vector<std::size_t> idx_;
  NbaBuilder nba_;
  std::map<std::tuple<const Node*, const Node*, std::size_t>, bool> memo_;
};

}  // namespace

Nba ldlo_to_nba(const Ast& xi, const Alphabet& alphabet, const CompileOptions& opt) {
  NbaBuilder b(alphabet, opt);
  return b.positive(xi);
}

bool sat_ldlo(const Ast& xi, const LassoWord& w, const Alphabet& alphabet, const CompileOptions& opt) {
  return nba_accepts(ldlo_to_nba(xi, alphabet, opt), w);
}

bool sat_ldlo_direct(const Ast& xi, const LassoWord& w, const Alphabet& alphabet, const CompileOptions& opt) {
  LassoClassical ev(w, alphabet, opt);
  return ev.sat(xi, 0);
}

// ---------------------------------------------------------------------------
// Weighted Büchi automata

namespace {

void copy_graph(Wfa& dst, const Wfa& src, State offset) {
  for (std::size_t l = 0; l < src.alphabet().size(); ++l)
    for (State q = 0; q < src.size(); ++q)
      for (const auto& [r, w] : src.row(l, q)) dst.add_transition(q + offset, l, r + offset, w);
}

// Shortest distances in the product of `g` with the lasso positions, starting
// at position `start` with the given initial weights. Node (q, p) is
// q * positions + p; unreached nodes hold zero.
std::vector<Weight> lasso_distances(const Wfa& g, const LassoWord& w, const std::vector<std::size_t>& idx,
                                    std::size_t start, const std::vector<Weight>& init) {
  const Semiring s = g.semiring();
  const std::size_t positions = w.positions();
  std::vector<Weight> dist(g.size() * positions, s.zero());
  std::vector<bool> done(dist.size(), false);
  using Item = std::pair<Weight, std::size_t>;
  auto worse = [](const Item& x, const Item& y) { return !x.first.precedes(y.first); };
  std::priority_queue<Item, std::vector<Item>, decltype(worse)> queue(worse);
  for (State q = 0; q < g.size(); ++q)
    if (!init[q].is_zero()) {
      const std::size_t v = q * positions + start;
      dist[v] = dist[v] + init[q];
      queue.emplace(dist[v], v);
    }
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (done[v] || d != dist[v]) continue;
    done[v] = true;
    const State q = static_cast<State>(v / positions);
    const std::size_t p = v % positions;
    const std::size_t p2 = w.next(p);
    for (const auto& [r, wt] : g.row(idx[p], q)) {
      const std::size_t u = r * positions + p2;
      if (done[u]) continue;
      const Weight cand = dist[u] + d * wt;
      if (cand != dist[u]) {
        dist[u] = cand;
        queue.emplace(cand, u);
      }
    }
  }
  return dist;
}

Weight wba_value(const Wba& a, const LassoWord& w, const std::vector<std::size_t>& idx) {
  const Wfa& g = a.graph;
  const Semiring s = g.semiring();
  const std::size_t positions = w.positions();
  std::vector<Weight> init(g.size());
  for (State q = 0; q < g.size(); ++q) init[q] = g.initial(q);
  const auto dist = lasso_distances(g, w, idx, 0, init);
  // runs of finite weight end in cycles of unit-weight edges
  Graph unit_edges(dist.size());
  std::vector<bool> marked(dist.size(), false);
  for (State q = 0; q < g.size(); ++q)
    for (std::size_t p = 0; p < positions; ++p) {
      const std::size_t v = q * positions + p;
      marked[v] = a.accepting[q];
      for (const auto& [r, wt] : g.row(idx[p], q))
        if (wt.is_one()) unit_edges[v].push_back(static_cast<std::uint32_t>(r * positions + w.next(p)));
    }
  const auto good = reaches_marked_cycle(unit_edges, marked);
  Weight total = s.zero();
  for (std::size_t v = 0; v < dist.size(); ++v)
    if (good[v]) total += dist[v];
  return total;
}

}  // namespace

Weight wba_eval(const Wba& a, const LassoWord& w) {
  require_lasso_semiring(a.graph.semiring());
  return wba_value(a, w, lasso_letters(a.graph.alphabet(), w));
}

Wba wba_from_nba(const Nba& a, Semiring s) {
  Wba out{Wfa(s, a.alphabet, a.size()), a.accepting};
  for (State q : a.initial) out.graph.set_initial(q, s.one());
  for (State q = 0; q < a.size(); ++q)
    for (std::size_t l = 0; l < a.alphabet.size(); ++l)
      for (State r : a.next[q][l]) out.graph.add_transition(q, l, r, s.one());
  return out;
}

Wba wba_union(const Wba& a, const Wba& b) {
  const State off = static_cast<State>(a.graph.size());
  Wba out{Wfa(a.graph.semiring(), a.graph.alphabet(), a.graph.size() + b.graph.size()), a.accepting};
  out.accepting.insert(out.accepting.end(), b.accepting.begin(), b.accepting.end());
  copy_graph(out.graph, a.graph, 0);
  copy_graph(out.graph, b.graph, off);
  for (State q = 0; q < a.graph.size(); ++q) out.graph.set_initial(q, a.graph.initial(q));
  for (State q = 0; q < b.graph.size(); ++q) out.graph.set_initial(q + off, b.graph.initial(q));
  return out;
}

Wba wba_product(const Wba& a, const Wba& b) {
  const Semiring s = a.graph.semiring();
  const Alphabet& alphabet = a.graph.alphabet();
  Wba out{Wfa(s, alphabet), {}};
  std::map<std::tuple<State, State, int>, State> ids;
  std::vector<std::tuple<State, State, int>> work;
  auto intern = [&](State p, State q, int flag) {
    auto [it, fresh] = ids.emplace(std::make_tuple(p, q, flag), static_cast<State>(out.graph.size()));
    if (fresh) {
      out.graph.add_state();
      out.accepting.push_back(flag == 0 && a.accepting[p]);
      work.emplace_back(p, q, flag);
    }
    return it->second;
  };
  for (State p = 0; p < a.graph.size(); ++p)
    for (State q = 0; q < b.graph.size(); ++q) {
      const Weight w = a.graph.initial(p) * b.graph.initial(q);
      if (!w.is_zero()) out.graph.set_initial(intern(p, q, 0), w);
    }
  for (std::size_t k = 0; k < work.size(); ++k) {
    const auto [p, q, flag] = work[k];
    const int next_flag = flag == 0 ? (a.accepting[p] ? 1 : 0) : (b.accepting[q] ? 0 : 1);
    for (std::size_t l = 0; l < alphabet.size(); ++l)
      for (const auto& [p2, wa] : a.graph.row(l, p))
        for (const auto& [q2, wb] : b.graph.row(l, q))
          out.graph.add_transition(static_cast<State>(k), l, intern(p2, q2, next_flag), wa * wb);
  }
  return out;
}

Wba wba_prefix(const std::vector<bool>& letters, const Wba& a) {
  const Semiring s = a.graph.semiring();
  Wba out{Wfa(s, a.graph.alphabet(), a.graph.size() + 1), {false}};
  out.accepting.insert(out.accepting.end(), a.accepting.begin(), a.accepting.end());
  copy_graph(out.graph, a.graph, 1);
  out.graph.set_initial(0, s.one());
  for (std::size_t l = 0; l < letters.size(); ++l) {
    if (!letters[l]) continue;
    for (State q = 0; q < a.graph.size(); ++q)
      if (!a.graph.initial(q).is_zero()) out.graph.add_transition(0, l, q + 1, a.graph.initial(q));
  }
  return out;
}

Wba wba_concat(const Wfa& prefix, const Wba& b) {
  const Semiring s = prefix.semiring();
  const State off = static_cast<State>(prefix.size());
  Wba out{Wfa(s, prefix.alphabet(), prefix.size() + b.graph.size()),
          std::vector<bool>(prefix.size(), false)};
  out.accepting.insert(out.accepting.end(), b.accepting.begin(), b.accepting.end());
  copy_graph(out.graph, prefix, 0);
  copy_graph(out.graph, b.graph, off);
  Weight eps = s.zero();
  for (State p = 0; p < prefix.size(); ++p) {
    out.graph.set_initial(p, prefix.initial(p));
    eps += prefix.initial(p) * prefix.final(p);
  }
  for (State q = 0; q < b.graph.size(); ++q) out.graph.set_initial(q + off, eps * b.graph.initial(q));
  for (std::size_t l = 0; l < prefix.alphabet().size(); ++l)
    for (State p = 0; p < prefix.size(); ++p)
      for (const auto& [r, w] : prefix.row(l, p)) {
        if (prefix.final(r).is_zero()) continue;
        const Weight wf = w * prefix.final(r);
        for (State q = 0; q < b.graph.size(); ++q)
          if (!b.graph.initial(q).is_zero()) out.graph.add_transition(p, l, q + off, wf * b.graph.initial(q));
      }
  return out;
}

Wba wba_omega(const Wfa& a) {
  const Semiring s = a.semiring();
  if (!wfa_eval(a, "").is_zero()) throw ImproperPlus("automaton with nonzero value on the empty word");
  Wba out{Wfa(s, a.alphabet(), a.size() + 1), std::vector<bool>(a.size() + 1, false)};
  out.accepting[0] = true;
  out.graph.set_initial(0, s.one());
  copy_graph(out.graph, a, 1);
  for (std::size_t l = 0; l < a.alphabet().size(); ++l)
    for (State q = 0; q < a.size(); ++q)
      for (const auto& [r, w] : a.row(l, q)) {
        const Weight wf = w * a.final(r);
        if (!wf.is_zero()) out.graph.add_transition(q + 1, l, 0, wf);
        if (a.initial(q).is_zero()) continue;
        const Weight wi = a.initial(q) * w;
        out.graph.add_transition(0, l, r + 1, wi);
        if (!wf.is_zero()) out.graph.add_transition(0, l, 0, a.initial(q) * wf);
      }
  return out;
}

Wba wba_constant(Semiring s, const Alphabet& alphabet, const Weight& k) {
  Wba out{Wfa(s, alphabet, 1), {true}};
  out.graph.set_initial(0, k);
  for (std::size_t l = 0; l < alphabet.size(); ++l) out.graph.add_transition(0, l, 0, s.one());
  return out;
}

Wba wba_empty(Semiring s, const Alphabet& alphabet) { return Wba{Wfa(s, alphabet), {}}; }

// ---------------------------------------------------------------------------
// Weighted evaluation on lassos

namespace {

using PosKey = std::tuple<const Node*, const Node*, std::size_t>;

class LassoWeighted {
 public:
  LassoWeighted(const LassoWord& w, Semiring s, const Alphabet& alphabet, const CompileOptions& opt)
      : w_(w), s_(s), alphabet_(alphabet), opt_(opt), idx_(lasso_letters(alphabet, w)),
        classical_(w, alphabet, opt) {}

  Weight value(const Ast& zeta, std::size_t pos) {
    const Node& n = *zeta;
    switch (n.op) {
      case Op::Const: return *n.weight;
      case Op::Embed: return indicator(s_, classical_.sat(n.kid(0), pos));
      case Op::OPlus: return value(n.kid(0), pos) + value(n.kid(1), pos);
      case Op::OTimes: {
        Weight l = value(n.kid(0), pos);
        if (l.is_zero()) return l;
        return l * value(n.kid(1), pos);
      }
      case Op::Diamond: return diamond(n.kid(0), n.kid(1), pos);
      default: throw UsageError("not a weighted LDL-omega formula");
    }
  }

  // Σ over finite chunks from `pos`: ‖A‖(chunk) · then(position after chunk)
  template <class Then>
  Weight chunks(const Wfa& a, std::size_t pos, Then then) {
    std::vector<Weight> init(a.size());
    for (State q = 0; q < a.size(); ++q) init[q] = a.initial(q);
    const auto dist = lasso_distances(a, w_, idx_, pos, init);
    const std::size_t positions = w_.positions();
    Weight total = s_.zero();
    for (std::size_t v = 0; v < dist.size(); ++v) {
      if (dist[v].is_zero()) continue;
      const Weight head = dist[v] * a.final(static_cast<State>(v / positions));
      if (!head.is_zero()) total += head * then(v % positions);
    }
    return total;
  }

  Weight omega(const Wfa& a, std::size_t pos) {
    const LassoWord rest = w_.suffix(pos);
    return wba_value(wba_omega(a), rest, lasso_letters(alphabet_, rest));
  }

 private:
  Weight diamond(const Ast& pi, const Ast& zeta, std::size_t pos) {
    const PosKey key{pi.get(), zeta.get(), pos};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Weight r = diamond_uncached(pi, zeta, pos);
    memo_.emplace(key, r);
    return r;
  }

  Weight diamond_uncached(const Ast& pi, const Ast& zeta, std::size_t pos) {
    const Node& n = *pi;
    switch (n.op) {
      case Op::Step:
        if (prop_holds(n.kid(0), w_.at(pos))) return value(zeta, w_.next(pos));
        return s_.zero();
      case Op::Test: {
        Weight l = value(n.kid(0), pos);
        if (l.is_zero()) return l;
        return l * value(zeta, pos);
      }
      case Op::Choice: return diamond(n.kid(0), zeta, pos) + diamond(n.kid(1), zeta, pos);
      case Op::Seq:
        return chunks(finite(n.kid(0)), pos, [&](std::size_t p) { return diamond(n.kid(1), zeta, p); });
      case Op::OmegaIter:
        if (!is_weighted_true(zeta)) return s_.zero();
        return omega(finite(n.kid(0)), pos);
      default: throw UsageError("not a weighted LDL-omega path");
    }
  }

  const Wfa& finite(const Ast& rho) {
    auto it = finite_.find(rho.get());
    if (it == finite_.end())
      it = finite_.emplace(rho.get(), wldl_to_wfa(ast::diamond(rho, ast::weighted_true()), s_, alphabet_, opt_))
               .first;
    return it->second;
  }

  const LassoWord& w_;
  Semiring s_;
  const Alphabet& alphabet_;
  const CompileOptions& opt_;
  std::vector<std::size_t> idx_;
  LassoClassical classical_;
  std::map<const Node*, Wfa> finite_;
  std::map<PosKey, Weight> memo_;
};

class GreoLasso {
 public:
  GreoLasso(LassoWeighted& ev, Semiring s, const Alphabet& alphabet) : ev_(ev), s_(s), alphabet_(alphabet) {}

  Weight value(const Ast& e, std::size_t pos) {
    const PosKey key{e.get(), nullptr, pos};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Weight r = uncached(e, pos);
    memo_.emplace(key, r);
    return r;
  }

 private:
  Weight uncached(const Ast& e, std::size_t pos) {
    const Node& n = *e;
    switch (n.op) {
      case Op::Sum: return value(n.kid(0), pos) + value(n.kid(1), pos);
      case Op::Hadamard: {
        Weight l = value(n.kid(0), pos);
        if (l.is_zero()) return l;
        return l * value(n.kid(1), pos);
      }
      case Op::Cauchy:
        return ev_.chunks(gre_to_wfa(n.kid(0), s_, alphabet_), pos,
                          [&](std::size_t p) { return value(n.kid(1), p); });
      case Op::Omega: return ev_.omega(gre_to_wfa(n.kid(0), s_, alphabet_), pos);
      default: throw UsageError("not an omega expression");
    }
  }

  LassoWeighted& ev_;
  Semiring s_;
  const Alphabet& alphabet_;
  std::map<PosKey, Weight> memo_;
};

class WbaBuilder {
 public:
  WbaBuilder(Semiring s, const Alphabet& alphabet, const CompileOptions& opt)
      : s_(s), alphabet_(alphabet), opt_(opt) {}

  Wba formula(const Ast& zeta) {
    const Node& n = *zeta;
    switch (n.op) {
      case Op::Const: return wba_constant(s_, alphabet_, *n.weight);
      case Op::Embed: return wba_from_nba(ldlo_to_nba(n.kid(0), alphabet_, opt_), s_);
      case Op::OPlus: return checked(wba_union(formula(n.kid(0)), formula(n.kid(1))));
      case Op::OTimes: return checked(wba_product(formula(n.kid(0)), formula(n.kid(1))));
      case Op::Diamond: return checked(diamond(n.kid(0), n.kid(1)));
      default: throw UsageError("not a weighted LDL-omega formula");
    }
  }

 private:
  Wba diamond(const Ast& pi, const Ast& zeta) {
    const Node& n = *pi;
    switch (n.op) {
      case Op::Step: return wba_prefix(letter_mask(n.kid(0), alphabet_, true), formula(zeta));
      case Op::Test: return wba_product(formula(n.kid(0)), formula(zeta));
      case Op::Choice: return wba_union(diamond(n.kid(0), zeta), diamond(n.kid(1), zeta));
      case Op::Seq: return wba_concat(finite(n.kid(0)), diamond(n.kid(1), zeta));
      case Op::OmegaIter:
        if (!is_weighted_true(zeta)) return wba_empty(s_, alphabet_);
        return wba_omega(finite(n.kid(0)));
      default: throw UsageError("not a weighted LDL-omega path");
    }
  }

  Wfa finite(const Ast& rho) {
    return wldl_to_wfa(ast::diamond(rho, ast::weighted_true()), s_, alphabet_, opt_);
  }

  Wba checked(Wba a) const {
    if (a.graph.size() > opt_.max_states) throw StateBudgetExceeded(opt_.max_states);
    return a;
  }

  Semiring s_;
  const Alphabet& alphabet_;
  const CompileOptions& opt_;
};

Wba greo_rec(const Ast& e, Semiring s, const Alphabet& alphabet) {
  const Node& n = *e;
  switch (n.op) {
    case Op::Sum: return wba_union(greo_rec(n.kid(0), s, alphabet), greo_rec(n.kid(1), s, alphabet));
    case Op::Hadamard: return wba_product(greo_rec(n.kid(0), s, alphabet), greo_rec(n.kid(1), s, alphabet));
    case Op::Cauchy: return wba_concat(gre_to_wfa(n.kid(0), s, alphabet), greo_rec(n.kid(1), s, alphabet));
    case Op::Omega: return wba_omega(gre_to_wfa(n.kid(0), s, alphabet));
    default: throw UsageError("not an omega expression");
  }
}

}  // namespace

Weight eval_wldlo(const Ast& zeta, const LassoWord& w, Semiring s, const Alphabet& alphabet,
                  const CompileOptions& opt) {
  require_lasso_semiring(s);
  check_proper(zeta, s);
  LassoWeighted ev(w, s, alphabet, opt);
  return ev.value(zeta, 0);
}

Weight eval_greo(const Ast& e, const LassoWord& w, Semiring s, const Alphabet& alphabet) {
  require_lasso_semiring(s);
  check_proper_gre(e, s);
  LassoWeighted ev(w, s, alphabet, CompileOptions{});
  GreoLasso g(ev, s, alphabet);
  return g.value(e, 0);
}

Wba wldlo_to_wba(const Ast& zeta, Semiring s, const Alphabet& alphabet, const CompileOptions& opt) {
  if (!s.idempotent()) throw NotIdempotent(std::string(s.name()));
  check_proper(zeta, s);
  WbaBuilder b(s, alphabet, opt);
  return b.formula(zeta);
}

Wba greo_to_wba(const Ast& e, Semiring s, const Alphabet& alphabet) {
  check_proper_gre(e, s);
  return greo_rec(e, s, alphabet);
}

// ---------------------------------------------------------------------------
// Büchi automata to ω-expressions

Ast nba_to_zero_one_omega_re(const Nba& input, Semiring s) {
  const Nba a = trim(input);
  const std::size_t n = a.size();
  const Alphabet& alphabet = a.alphabet;
  auto is_zero_expr = [](const Ast& e) { return e->op == Op::Letter && e->letter == 0 && e->weight->is_zero(); };
  Ast result;
  for (State f = 0; f < n; ++f) {
    if (!a.accepting[f]) continue;
    ReGraph reach{n, {}};
    ReGraph loop{n, {}};
    for (State i : a.initial) reach.add(n, i, ast::eps(s.one()));
    reach.add(f, n + 1, ast::eps(s.one()));
    for (State q = 0; q < n; ++q)
      for (std::size_t l = 0; l < alphabet.size(); ++l)
        for (State r : a.next[q][l]) {
          const Ast x = ast::letter(s.one(), alphabet[l]);
          reach.add(q, r, x);
          loop.add(q, r, x);
          if (q == f) loop.add(n, r, x);
          if (r == f) loop.add(q, n + 1, x);
          if (q == f && r == f) loop.add(n, n + 1, x);
        }
    const Ast head = eliminate_states(std::move(reach), n, n + 1, s);
    const Ast body = eliminate_states(std::move(loop), n, n + 1, s);
    if (is_zero_expr(head) || is_zero_expr(body)) continue;
    const bool unit_head = head->op == Op::Letter && head->letter == 0;
    Ast term = unit_head ? ast::omega(body) : ast::cauchy(head, ast::omega(body));
    result = result ? ast::sum(result, term) : term;
  }
  return result ? result : ast::omega(ast::letter(s.zero(), alphabet[0]));
}

}  // namespace wldl
