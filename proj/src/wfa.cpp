#include "wldl/wfa.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>

#include <nlohmann/json.hpp>

#include "wldl/error.hpp"
#include "wldl/finite_semantics.hpp"

namespace wldl {

Wfa::Wfa(Semiring semiring, Alphabet alphabet, std::size_t states)
    : semiring_(semiring),
      alphabet_(std::move(alphabet)),
      initial_(states, semiring.zero()),
      final_(states, semiring.zero()),
      rows_(alphabet_.size(), std::vector<Row>(states)) {}

State Wfa::add_state() {
  initial_.push_back(semiring_.zero());
  final_.push_back(semiring_.zero());
  for (auto& m : rows_) m.emplace_back();
  return static_cast<State>(initial_.size() - 1);
}

void Wfa::add_transition(State from, std::size_t letter, State to, const Weight& w) {
  if (w.is_zero()) return;
  Row& row = rows_[letter][from];
  for (auto it = row.begin(); it != row.end(); ++it) {
    if (it->first == to) {
      it->second += w;
      if (it->second.is_zero()) row.erase(it);
      return;
    }
  }
  row.emplace_back(to, w);
}

Weight Wfa::transition(std::size_t letter, State from, State to) const {
  for (const auto& [q, w] : rows_[letter][from])
    if (q == to) return w;
  return semiring_.zero();
}

std::size_t Wfa::transition_count() const {
  std::size_t n = 0;
  for (const auto& m : rows_)
    for (const auto& r : m) n += r.size();
  return n;
}

namespace {

void require_compatible(const Wfa& a, const Wfa& b) {
  if (a.semiring() != b.semiring()) throw UsageError("automata over different semirings");
  if (!(a.alphabet() == b.alphabet())) throw UsageError("automata over different alphabets");
}

// Copies the transitions of `src` into `dst` at a state offset.
void copy_transitions(Wfa& dst, const Wfa& src, State offset) {
  for (std::size_t l = 0; l < src.alphabet().size(); ++l)
    for (State q = 0; q < src.size(); ++q)
      for (const auto& [r, w] : src.row(l, q)) dst.add_transition(q + offset, l, r + offset, w);
}

std::vector<Weight> step(const Wfa& a, const std::vector<Weight>& x, std::size_t letter) {
  std::vector<Weight> y(a.size(), a.semiring().zero());
  for (State q = 0; q < a.size(); ++q) {
    if (x[q].is_zero()) continue;
    for (const auto& [r, w] : a.row(letter, q)) y[r] += x[q] * w;
  }
  return y;
}

Weight dot(const std::vector<Weight>& x, const Wfa& a) {
  Weight total = a.semiring().zero();
  for (State q = 0; q < a.size(); ++q)
    if (!x[q].is_zero()) total += x[q] * a.final(q);
  return total;
}

std::atomic<std::size_t> g_bound_trips{0};

}  // namespace

std::vector<Weight> wfa_forward(const Wfa& a, const Word& w) {
  std::vector<Weight> x(a.size(), a.semiring().zero());
  for (State q = 0; q < a.size(); ++q) x[q] = a.initial(q);
  for (char c : w) {
    const int l = a.alphabet().index(c);
    if (l < 0) throw UsageError(std::string("letter '") + c + "' is not in the alphabet {" + a.alphabet().letters() + "}");
    x = step(a, x, static_cast<std::size_t>(l));
  }
  return x;
}

Weight wfa_eval(const Wfa& a, const Word& w) { return dot(wfa_forward(a, w), a); }

Wfa wfa_sum(const Wfa& a, const Wfa& b) {
  require_compatible(a, b);
  const State off = static_cast<State>(a.size());
  Wfa c(a.semiring(), a.alphabet(), a.size() + b.size());
  copy_transitions(c, a, 0);
  copy_transitions(c, b, off);
  for (State q = 0; q < a.size(); ++q) {
    c.set_initial(q, a.initial(q));
    c.set_final(q, a.final(q));
  }
  for (State q = 0; q < b.size(); ++q) {
    c.set_initial(q + off, b.initial(q));
    c.set_final(q + off, b.final(q));
  }
  return c;
}

Wfa wfa_hadamard(const Wfa& a, const Wfa& b) {
  require_compatible(a, b);
  if (!a.semiring().commutative()) throw NonCommutativeHadamard(std::string(a.semiring().name()));
  // only pairs reachable from initial pairs are built
  Wfa c(a.semiring(), a.alphabet(), 0);
  std::map<std::pair<State, State>, State> ids;
  std::vector<std::pair<State, State>> work;
  auto intern = [&](State p, State q) {
    auto [it, fresh] = ids.emplace(std::make_pair(p, q), static_cast<State>(c.size()));
    if (fresh) {
      c.add_state();
      c.set_final(it->second, a.final(p) * b.final(q));
      work.emplace_back(p, q);
    }
    return it->second;
  };
  for (State p = 0; p < a.size(); ++p) {
    if (a.initial(p).is_zero()) continue;
    for (State q = 0; q < b.size(); ++q) {
      const Weight w = a.initial(p) * b.initial(q);
      if (!w.is_zero()) c.set_initial(intern(p, q), w);
    }
  }
  for (std::size_t k = 0; k < work.size(); ++k) {
    const auto [p, q] = work[k];
    for (std::size_t l = 0; l < a.alphabet().size(); ++l)
      for (const auto& [p2, w1] : a.row(l, p))
        for (const auto& [q2, w2] : b.row(l, q)) {
          const Weight w = w1 * w2;
          if (!w.is_zero()) {
            const State t = intern(p2, q2);
            c.add_transition(static_cast<State>(k), l, t, w);
          }
        }
  }
  return wfa_trim(c);
}

Wfa wfa_cauchy(const Wfa& a, const Wfa& b) {
  require_compatible(a, b);
  // α = (α_A, (α_A β_A) α_B), M = [[M_A, M_A β_A α_B], [0, M_B]], β = (0, β_B)
  const Semiring s = a.semiring();
  const State off = static_cast<State>(a.size());
  Wfa c(s, a.alphabet(), a.size() + b.size());
  copy_transitions(c, a, 0);
  copy_transitions(c, b, off);
  Weight a_eps = s.zero();
  for (State q = 0; q < a.size(); ++q) {
    c.set_initial(q, a.initial(q));
    a_eps += a.initial(q) * a.final(q);
  }
  for (State q = 0; q < b.size(); ++q) {
    c.set_initial(q + off, a_eps * b.initial(q));
    c.set_final(q + off, b.final(q));
  }
  for (std::size_t l = 0; l < a.alphabet().size(); ++l)
    for (State p = 0; p < a.size(); ++p)
      for (const auto& [r, w] : a.row(l, p)) {
        if (a.final(r).is_zero()) continue;
        const Weight wf = w * a.final(r);
        for (State q = 0; q < b.size(); ++q)
          if (!b.initial(q).is_zero()) c.add_transition(p, l, q + off, wf * b.initial(q));
      }
  return wfa_trim(c);
}

Wfa wfa_plus(const Wfa& a) {
  if (!wfa_eval(a, "").is_zero()) throw ImproperPlus("automaton with nonzero value on the empty word");
  // M' = M + M β α
  Wfa c = a;
  for (std::size_t l = 0; l < a.alphabet().size(); ++l)
    for (State p = 0; p < a.size(); ++p)
      for (const auto& [r, w] : a.row(l, p)) {
        if (a.final(r).is_zero()) continue;
        const Weight wf = w * a.final(r);
        for (State q = 0; q < a.size(); ++q)
          if (!a.initial(q).is_zero()) c.add_transition(p, l, q, wf * a.initial(q));
      }
  return wfa_trim(c);
}

Wfa wfa_prefix(const std::vector<bool>& letters, const Wfa& a) {
  Wfa c(a.semiring(), a.alphabet(), a.size() + 1);
  copy_transitions(c, a, 1);
  for (State q = 0; q < a.size(); ++q) c.set_final(q + 1, a.final(q));
  c.set_initial(0, a.semiring().one());
  for (std::size_t l = 0; l < letters.size(); ++l) {
    if (!letters[l]) continue;
    for (State q = 0; q < a.size(); ++q)
      if (!a.initial(q).is_zero()) c.add_transition(0, l, q + 1, a.initial(q));
  }
  return wfa_trim(c);
}

Wfa wfa_constant(Semiring s, const Alphabet& alphabet, const Weight& k) {
  Wfa c(s, alphabet, 1);
  c.set_initial(0, k);
  c.set_final(0, s.one());
  for (std::size_t l = 0; l < alphabet.size(); ++l) c.add_transition(0, l, 0, s.one());
  return wfa_trim(c);
}

Wfa wfa_trim(const Wfa& a) {
  const std::size_t n = a.size();
  const std::size_t letters = a.alphabet().size();
  std::vector<bool> fwd(n, false);
  std::vector<bool> bwd(n, false);
  std::vector<State> stack;
  for (State q = 0; q < n; ++q)
    if (!a.initial(q).is_zero()) {
      fwd[q] = true;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (std::size_t l = 0; l < letters; ++l)
      for (const auto& [r, w] : a.row(l, q))
        if (!fwd[r]) {
          fwd[r] = true;
          stack.push_back(r);
        }
  }
  std::vector<std::vector<State>> pred(n);
  for (std::size_t l = 0; l < letters; ++l)
    for (State q = 0; q < n; ++q)
      for (const auto& [r, w] : a.row(l, q)) pred[r].push_back(q);
  for (State q = 0; q < n; ++q)
    if (!a.final(q).is_zero()) {
      bwd[q] = true;
      stack.push_back(q);
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
  std::vector<State> id(n, 0);
  std::size_t kept = 0;
  for (State q = 0; q < n; ++q)
    if (fwd[q] && bwd[q]) id[q] = static_cast<State>(kept++);
  if (kept == n) return a;
  Wfa c(a.semiring(), a.alphabet(), kept);
  for (State q = 0; q < n; ++q) {
    if (!(fwd[q] && bwd[q])) continue;
    c.set_initial(id[q], a.initial(q));
    c.set_final(id[q], a.final(q));
    for (std::size_t l = 0; l < letters; ++l)
      for (const auto& [r, w] : a.row(l, q))
        if (fwd[r] && bwd[r]) c.add_transition(id[q], l, id[r], w);
  }
  return c;
}

Wfa wfa_from_dfa(const Dfa& d, Semiring s) {
  Wfa c(s, d.alphabet, d.size());
  c.set_initial(d.initial, s.one());
  for (State q = 0; q < d.size(); ++q) {
    if (d.accepting[q]) c.set_final(q, s.one());
    for (std::size_t l = 0; l < d.alphabet.size(); ++l) c.add_transition(q, l, d.next[q][l], s.one());
  }
  return wfa_trim(c);
}

Wfa wfa_from_nfa(const Nfa& n, Semiring s) {
  Wfa c(s, n.alphabet, n.size());
  for (State q : n.initial) c.set_initial(q, s.one());
  for (State q = 0; q < n.size(); ++q) {
    if (n.accepting[q]) c.set_final(q, s.one());
    for (std::size_t l = 0; l < n.alphabet.size(); ++l)
      for (State r : n.next[q][l]) c.add_transition(q, l, r, s.one());
  }
  return wfa_trim(c);
}

namespace {

Wfa gre_rec(const Ast& e, Semiring s, const Alphabet& alphabet) {
  const Node& n = *e;
  switch (n.op) {
    case Op::Letter: {
      if (n.letter == 0) {
        Wfa c(s, alphabet, 1);
        c.set_initial(0, *n.weight);
        c.set_final(0, s.one());
        return wfa_trim(c);
      }
      const int l = alphabet.index(n.letter);
      if (l < 0) throw UsageError(std::string("letter '") + n.letter + "' is not in the alphabet");
      Wfa c(s, alphabet, 2);
      c.set_initial(0, s.one());
      c.set_final(1, s.one());
      c.add_transition(0, static_cast<std::size_t>(l), 1, *n.weight);
      return wfa_trim(c);
    }
    case Op::Sum: return wfa_sum(gre_rec(n.kid(0), s, alphabet), gre_rec(n.kid(1), s, alphabet));
    case Op::Cauchy: return wfa_cauchy(gre_rec(n.kid(0), s, alphabet), gre_rec(n.kid(1), s, alphabet));
    case Op::Hadamard: return wfa_hadamard(gre_rec(n.kid(0), s, alphabet), gre_rec(n.kid(1), s, alphabet));
    case Op::Plus: return wfa_plus(gre_rec(n.kid(0), s, alphabet));
    default: throw UsageError("not a finite rational expression");
  }
}

}  // namespace

Wfa gre_to_wfa(const Ast& e, Semiring s, const Alphabet& alphabet) {
  check_proper_gre(e, s);
  return gre_rec(e, s, alphabet);
}

// ---------------------------------------------------------------------------
// Equivalence over Q

namespace {

using Vec = std::vector<mpq_class>;

struct Basis {
  // rows in echelon form, each with a pivot whose entry is 1
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;

  // Reduces v against the basis; returns true when v was independent and was added.
  bool insert(Vec v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const mpq_class c = v[pivots[r]];
      if (c == 0) continue;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (rows[r][k] != 0) v[k] -= c * rows[r][k];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    const mpq_class inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    // keep rows fully reduced at the new pivot
    for (auto& row : rows) {
      const mpq_class c = row[p];
      if (c == 0) continue;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0) row[k] -= c * v[k];
    }
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
  }
};

}  // namespace

EquivResult wfa_equiv_field(const Wfa& a, const Wfa& b) {
  require_compatible(a, b);
  if (!a.semiring().field()) throw NotAField(std::string(a.semiring().name()));
  const std::size_t na = a.size();
  const std::size_t n = na + b.size();
  const std::size_t letters = a.alphabet().size();
  // difference automaton: α = (α_A, -α_B), M = diag(M_A, M_B), β = (β_A, β_B)
  std::vector<std::vector<std::vector<std::pair<std::size_t, mpq_class>>>> rows(
      letters, std::vector<std::vector<std::pair<std::size_t, mpq_class>>>(n));
  Vec beta(n);
  Vec start(n);
  for (State q = 0; q < na; ++q) {
    start[q] = a.initial(q).value();
    beta[q] = a.final(q).value();
    for (std::size_t l = 0; l < letters; ++l)
      for (const auto& [r, w] : a.row(l, q)) rows[l][q].emplace_back(r, w.value());
  }
  for (State q = 0; q < b.size(); ++q) {
    start[na + q] = -b.initial(q).value();
    beta[na + q] = b.final(q).value();
    for (std::size_t l = 0; l < letters; ++l)
      for (const auto& [r, w] : b.row(l, q)) rows[l][na + q].emplace_back(na + r, w.value());
  }
  auto value = [&](const Vec& x) {
    mpq_class t = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (x[k] != 0 && beta[k] != 0) t += x[k] * beta[k];
    return t;
  };

  EquivResult result;
  result.dimension_bound = n;
  Basis basis;
  std::deque<std::pair<Vec, Word>> queue;
  queue.emplace_back(start, Word{});
  while (!queue.empty()) {
    auto [x, word] = std::move(queue.front());
    queue.pop_front();
    if (value(x) != 0) {
      result.equivalent = false;
      result.witness = word;
      break;
    }
    if (!basis.insert(x)) continue;
    if (basis.rows.size() > n) {
      ++g_bound_trips;
      throw std::logic_error("equivalence basis exceeded the dimension bound");
    }
    for (std::size_t l = 0; l < letters; ++l) {
      Vec y(n);
      for (std::size_t q = 0; q < n; ++q) {
        if (x[q] == 0) continue;
        for (const auto& [r, w] : rows[l][q]) y[r] += x[q] * w;
      }
      queue.emplace_back(std::move(y), word + a.alphabet()[l]);
    }
  }
  result.basis_size = basis.rows.size();
  return result;
}

std::size_t equiv_bound_trips() { return g_bound_trips.load(); }

// ---------------------------------------------------------------------------
// State elimination

namespace {

Ast re_cat(const Ast& x, const Ast& y) {
  auto is_unit = [](const Ast& e) { return e->op == Op::Letter && e->letter == 0 && e->weight->is_one(); };
  if (is_unit(x)) return y;
  if (is_unit(y)) return x;
  return ast::cauchy(x, y);
}

}  // namespace

void ReGraph::add(std::size_t p, std::size_t q, const Ast& e) {
  auto [it, fresh] = edges.emplace(std::make_pair(p, q), e);
  if (!fresh) it->second = ast::sum(it->second, e);
}

Ast eliminate_states(ReGraph g, std::size_t source, std::size_t sink, Semiring s) {
  const std::size_t n = g.nodes;
  auto& edge = g.edges;
  const Ast unit = ast::eps(s.one());
  std::vector<bool> alive(n, true);
  for (;;) {
    // pick the remaining node with the smallest in-degree × out-degree
    std::size_t best = n;
    std::size_t best_cost = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (!alive[k]) continue;
      std::size_t in = 0;
      std::size_t out = 0;
      for (const auto& [pq, e] : edge) {
        if (pq.second == k && pq.first != k) ++in;
        if (pq.first == k && pq.second != k) ++out;
      }
      const std::size_t cost = in * out;
      if (best == n || cost < best_cost) {
        best = k;
        best_cost = cost;
      }
    }
    if (best == n) break;
    const std::size_t k = best;
    alive[k] = false;
    Ast loop;
    if (auto it = edge.find({k, k}); it != edge.end()) {
      loop = ast::sum(unit, ast::plus(it->second));
      edge.erase(it);
    }
    std::vector<std::pair<std::size_t, Ast>> ins;
    std::vector<std::pair<std::size_t, Ast>> outs;
    for (auto it = edge.begin(); it != edge.end();) {
      if (it->first.second == k) {
        ins.emplace_back(it->first.first, it->second);
        it = edge.erase(it);
      } else if (it->first.first == k) {
        outs.emplace_back(it->first.second, it->second);
        it = edge.erase(it);
      } else {
        ++it;
      }
    }
    for (const auto& [p, ep] : ins)
      for (const auto& [q, eq] : outs) g.add(p, q, loop ? re_cat(re_cat(ep, loop), eq) : re_cat(ep, eq));
  }
  if (auto it = edge.find({source, sink}); it != edge.end()) return it->second;
  return ast::eps(s.zero());
}

Ast dfa_to_zero_one_re(const Dfa& d, Semiring s) {
  const std::size_t n = d.size();
  // live states: reachable and co-reachable
  std::vector<bool> fwd(n, false);
  std::vector<bool> bwd(n, false);
  std::vector<State> stack{d.initial};
  fwd[d.initial] = true;
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State r : d.next[q])
      if (!fwd[r]) {
        fwd[r] = true;
        stack.push_back(r);
      }
  }
  for (State q = 0; q < n; ++q)
    if (d.accepting[q]) {
      bwd[q] = true;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State p = 0; p < n; ++p)
      if (!bwd[p] && std::find(d.next[p].begin(), d.next[p].end(), q) != d.next[p].end()) {
        bwd[p] = true;
        stack.push_back(p);
      }
  }
  const Ast zero_expr = ast::eps(s.zero());
  if (!(fwd[d.initial] && bwd[d.initial])) return zero_expr;

  // nodes 0..n-1 are DFA states, n is the fresh source, n+1 the fresh sink
  ReGraph g{n, {}};
  const Ast unit = ast::eps(s.one());
  g.add(n, d.initial, unit);
  for (State q = 0; q < n; ++q) {
    if (!(fwd[q] && bwd[q])) continue;
    if (d.accepting[q]) g.add(q, n + 1, unit);
    for (std::size_t l = 0; l < d.alphabet.size(); ++l) {
      const State r = d.next[q][l];
      if (fwd[r] && bwd[r]) g.add(q, r, ast::letter(s.one(), d.alphabet[l]));
    }
  }
  return eliminate_states(std::move(g), n, n + 1, s);
}

// ---------------------------------------------------------------------------
// JSON

std::string wfa_to_json(const Wfa& a, const std::vector<bool>* accepting) {
  nlohmann::ordered_json j;
  j["semiring"] = std::string(a.semiring().name());
  nlohmann::json letters = nlohmann::json::array();
  for (char c : a.alphabet().letters()) letters.push_back(std::string(1, c));
  j["alphabet"] = letters;
  j["states"] = a.size();
  nlohmann::json init = nlohmann::json::array();
  nlohmann::json fin = nlohmann::json::array();
  for (State q = 0; q < a.size(); ++q) {
    init.push_back(a.initial(q).to_string());
    fin.push_back(a.final(q).to_string());
  }
  j["initial"] = init;
  j["final"] = fin;
  nlohmann::ordered_json trans = nlohmann::ordered_json::object();
  for (std::size_t l = 0; l < a.alphabet().size(); ++l) {
    nlohmann::json m = nlohmann::json::array();
    for (State p = 0; p < a.size(); ++p) {
      std::vector<std::string> row(a.size(), a.semiring().zero().to_string());
      for (const auto& [q, w] : a.row(l, p)) row[q] = w.to_string();
      m.push_back(row);
    }
    trans[std::string(1, a.alphabet()[l])] = m;
  }
  j["transitions"] = trans;
  if (accepting) {
    nlohmann::json acc = nlohmann::json::array();
    for (State q = 0; q < a.size(); ++q)
      if ((*accepting)[q]) acc.push_back(q);
    j["accepting"] = acc;
  }
  return j.dump(2);
}

Wfa wfa_from_json(const std::string& text, std::vector<bool>* accepting) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid automaton JSON: ") + e.what(), 1, e.byte);
  }
  try {
    const Semiring s = Semiring::from_name(j.at("semiring").get<std::string>());
    std::string letters;
    for (const auto& l : j.at("alphabet")) letters += l.get<std::string>();
    const std::size_t n = j.at("states").get<std::size_t>();
    Wfa a(s, Alphabet(letters), n);
    const auto& init = j.at("initial");
    const auto& fin = j.at("final");
    if (init.size() != n || fin.size() != n) throw UsageError("initial/final vectors must have one entry per state");
    for (State q = 0; q < n; ++q) {
      a.set_initial(q, s.parse(init[q].get<std::string>()));
      a.set_final(q, s.parse(fin[q].get<std::string>()));
    }
    for (const auto& [letter, m] : j.at("transitions").items()) {
      const int l = letter.size() == 1 ? a.alphabet().index(letter[0]) : -1;
      if (l < 0) throw UsageError("transition letter '" + letter + "' is not in the alphabet");
      if (m.size() != n) throw UsageError("transition matrix for '" + letter + "' has the wrong size");
      for (State p = 0; p < n; ++p) {
        if (m[p].size() != n) throw UsageError("transition matrix for '" + letter + "' has the wrong size");
        for (State q = 0; q < n; ++q) a.add_transition(p, static_cast<std::size_t>(l), q, s.parse(m[p][q].get<std::string>()));
      }
    }
    if (accepting) {
      accepting->assign(n, false);
      if (j.contains("accepting"))
        for (const auto& q : j.at("accepting")) accepting->at(q.get<std::size_t>()) = true;
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed automaton JSON: ") + e.what(), 1, 1);
  }
}

}  // namespace wldl
