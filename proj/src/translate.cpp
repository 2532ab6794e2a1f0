#include "wldl/translate.hpp"

#include <map>
#include <utility>

#include "wldl/error.hpp"
#include "wldl/finite_semantics.hpp"
#include "wldl/omega.hpp"
#include "wldl/syntax.hpp"

namespace wldl {

namespace {

using NodePair = std::pair<const Node*, const Node*>;

bool is_weighted_true(const Ast& a) {
  return a->op == Op::Embed && a->kid(0)->op == Op::True;
}

std::vector<bool> letter_mask(const Ast& prop, const Alphabet& alphabet) {
  std::vector<bool> mask(alphabet.size());
  for (std::size_t i = 0; i < alphabet.size(); ++i) mask[i] = prop_holds(prop, alphabet[i]);
  return mask;
}

bool all_letters(const std::vector<bool>& mask) {
  for (bool b : mask)
    if (!b) return false;
  return true;
}

// Σ_a 1a
Ast any_letter(Semiring s, const Alphabet& alphabet) {
  Ast r;
  for (char c : alphabet.letters()) {
    Ast l = ast::letter(s.one(), c);
    r = r ? ast::sum(r, l) : l;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Classical LDL to NFA

class NfaBuilder {
 public:
  NfaBuilder(const Alphabet& alphabet, const CompileOptions& opt) : alphabet_(alphabet), opt_(opt) {}

  Nfa formula(const Ast& psi) {
    const Node& n = *psi;
    switch (n.op) {
      case Op::True: return nfa_universal(alphabet_);
      case Op::False: return nfa_empty(alphabet_);
      case Op::Atom: {
        const char a = n.letter;
        return nfa_concat(nfa_letters(alphabet_, [a](char c) { return c == a; }), nfa_universal(alphabet_));
      }
      case Op::Not: return nfa_complement(formula(n.kid(0)), opt_.max_states);
      case Op::And: return reduce(nfa_product(formula(n.kid(0)), formula(n.kid(1))), opt_.max_states);
      case Op::Or: return reduce(nfa_union(formula(n.kid(0)), formula(n.kid(1))), opt_.max_states);
      case Op::Diamond: return diamond(n.kid(0), n.kid(1));
      default: throw UsageError("not a classical LDL formula");
    }
  }

  // L(⟨θ⟩ψ)
  Nfa diamond(const Ast& theta, const Ast& psi) {
    const NodePair key{theta.get(), psi.get()};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Nfa r = reduce(diamond_uncached(theta, psi), opt_.max_states);
    check_budget(r);
    memo_.emplace(key, r);
    return r;
  }

 private:
  Nfa diamond_uncached(const Ast& theta, const Ast& psi) {
    const Node& n = *theta;
    switch (n.op) {
      case Op::Step: {
        const Ast& prop = n.kid(0);
        return nfa_concat(nfa_letters(alphabet_, [&](char c) { return prop_holds(prop, c); }), formula(psi));
      }
      case Op::Test: return nfa_product(formula(n.kid(0)), formula(psi));
      case Op::Choice: return nfa_union(diamond(n.kid(0), psi), diamond(n.kid(1), psi));
      case Op::Seq: return nfa_concat(diamond(n.kid(0), ast::tt()), diamond(n.kid(1), psi));
      case Op::Iter: {
        // ⟨θ^n⟩ψ with 1 ≤ n ≤ |w|; empty chunks can be dropped except the
        // last one, which is then allowed only if some chunk has length ≥ 2.
        const Nfa t = nfa_drop_epsilon(diamond(n.kid(0), ast::tt()));
        const Nfa p = diamond(n.kid(0), psi);
        const Nfa star = nfa_union(nfa_epsilon(alphabet_), nfa_plus(t));
        Nfa r = nfa_concat(star, nfa_drop_epsilon(p));
        if (accepts_empty(p)) {
          const Nfa any = nfa_letters(alphabet_, [](char) { return true; });
          const Nfa long_chunk = nfa_product(t, nfa_concat(any, nfa_concat(any, nfa_universal(alphabet_))));
          r = nfa_union(r, nfa_concat(nfa_concat(star, long_chunk), star));
        }
        return r;
      }
      default: throw UsageError("not a finite classical path");
    }
  }

  void check_budget(const Nfa& n) const {
    if (n.size() > opt_.max_states) throw StateBudgetExceeded(opt_.max_states);
  }

  const Alphabet& alphabet_;
  const CompileOptions& opt_;
  std::map<NodePair, Nfa> memo_;
};

// ---------------------------------------------------------------------------
// Weighted LDL to expressions

class GreBuilder {
 public:
  GreBuilder(Semiring s, const Alphabet& alphabet, const CompileOptions& opt)
      : s_(s), alphabet_(alphabet), nfa_(alphabet, opt), opt_(opt) {}

  Ast formula(const Ast& phi) {
    const Node& n = *phi;
    switch (n.op) {
      case Op::Const: {
        // kε + kε·(1A)^+
        const Ast k = ast::eps(*n.weight);
        return ast::sum(k, ast::cauchy(k, ast::plus(any_letter(s_, alphabet_))));
      }
      case Op::Embed: return classical(n.kid(0));
      case Op::OPlus: return ast::sum(formula(n.kid(0)), formula(n.kid(1)));
      case Op::OTimes: return ast::hadamard(formula(n.kid(0)), formula(n.kid(1)));
      case Op::Diamond: return diamond(n.kid(0), n.kid(1));
      default: throw UsageError("not a weighted LDL formula");
    }
  }

  Ast classical(const Ast& psi) {
    return dfa_to_zero_one_re(minimize(determinize(nfa_.formula(psi), opt_.max_states)), s_);
  }

  Ast diamond(const Ast& rho, const Ast& phi) {
    const NodePair key{rho.get(), phi.get()};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Ast r = diamond_uncached(rho, phi);
    memo_.emplace(key, r);
    return r;
  }

 private:
  Ast diamond_uncached(const Ast& rho, const Ast& phi) {
    const Node& n = *rho;
    switch (n.op) {
      case Op::Step: {
        const auto mask = letter_mask(n.kid(0), alphabet_);
        const Ast first = all_letters(mask) ? any_letter(s_, alphabet_) : letter_sum(n.kid(0), s_, alphabet_);
        return ast::cauchy(first, formula(phi));
      }
      case Op::Test:
        if (is_weighted_true(phi)) return formula(n.kid(0));
        if (is_weighted_true(n.kid(0))) return formula(phi);
        return ast::hadamard(formula(n.kid(0)), formula(phi));
      case Op::Choice: return ast::sum(diamond(n.kid(0), phi), diamond(n.kid(1), phi));
      case Op::Seq: return ast::cauchy(diamond(n.kid(0), ast::weighted_true()), diamond(n.kid(1), phi));
      case Op::Iter: {
        const Ast t = diamond(n.kid(0), ast::weighted_true());
        const Ast p = diamond(n.kid(0), phi);
        return ast::sum(ast::cauchy(ast::plus(t), p), p);
      }
      default: throw UsageError("not a finite weighted path");
    }
  }

  Semiring s_;
  const Alphabet& alphabet_;
  NfaBuilder nfa_;
  const CompileOptions& opt_;
  std::map<NodePair, Ast> memo_;
};

// ---------------------------------------------------------------------------
// Weighted LDL to automata

Wfa scaled(Wfa a, const Weight& k) {
  for (State q = 0; q < a.size(); ++q)
    if (!a.initial(q).is_zero()) a.set_initial(q, k * a.initial(q));
  return wfa_trim(a);
}

class WfaBuilder {
 public:
  WfaBuilder(Semiring s, const Alphabet& alphabet, const CompileOptions& opt)
      : s_(s), alphabet_(alphabet), nfa_(alphabet, opt), opt_(opt) {}

  Wfa formula(const Ast& phi) {
    const Node& n = *phi;
    switch (n.op) {
      case Op::Const: return wfa_constant(s_, alphabet_, *n.weight);
      case Op::Embed: {
        Nfa nfa = nfa_.formula(n.kid(0));
        const bool negation_free = !any_node(n.kid(0), [](const Node& x) { return x.op == Op::Not; });
        if (s_.idempotent() && negation_free) return wfa_from_nfa(nfa, s_);
        return wfa_from_dfa(minimize(determinize(nfa, opt_.max_states)), s_);
      }
      case Op::OPlus: return checked(wfa_sum(formula(n.kid(0)), formula(n.kid(1))));
      case Op::OTimes: return product(n.kid(0), n.kid(1));
      case Op::Diamond: return diamond(n.kid(0), n.kid(1));
      default: throw UsageError("not a weighted LDL formula");
    }
  }

  Wfa diamond(const Ast& rho, const Ast& phi) {
    const NodePair key{rho.get(), phi.get()};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Wfa r = checked(diamond_uncached(rho, phi));
    memo_.emplace(key, r);
    return r;
  }

 private:
  Wfa diamond_uncached(const Ast& rho, const Ast& phi) {
    const Node& n = *rho;
    switch (n.op) {
      case Op::Step: return wfa_prefix(letter_mask(n.kid(0), alphabet_), formula(phi));
      case Op::Test: return product(n.kid(0), phi);
      case Op::Choice: return wfa_sum(diamond(n.kid(0), phi), diamond(n.kid(1), phi));
      case Op::Seq: return wfa_cauchy(diamond(n.kid(0), ast::weighted_true()), diamond(n.kid(1), phi));
      case Op::Iter: {
        const Wfa p = diamond(n.kid(0), phi);
        return wfa_sum(wfa_cauchy(wfa_plus(diamond(n.kid(0), ast::weighted_true())), p), p);
      }
      default: throw UsageError("not a finite weighted path");
    }
  }

  Wfa product(const Ast& x, const Ast& y) {
    if (is_weighted_true(x) || (x->op == Op::Const && x->weight->is_one())) return formula(y);
    if (is_weighted_true(y) || (y->op == Op::Const && y->weight->is_one())) return formula(x);
    if (x->op == Op::Const) return scaled(formula(y), *x->weight);
    if (y->op == Op::Const) return scaled(formula(x), *y->weight);
    return wfa_hadamard(formula(x), formula(y));
  }

  Wfa checked(Wfa a) const {
    if (a.size() > opt_.max_states) throw StateBudgetExceeded(opt_.max_states);
    return a;
  }

  Semiring s_;
  const Alphabet& alphabet_;
  NfaBuilder nfa_;
  const CompileOptions& opt_;
  std::map<NodePair, Wfa> memo_;
};

// ---------------------------------------------------------------------------
// ω translations

Ast zero_omega(Semiring s, const Alphabet& alphabet) {
  return ast::omega(ast::letter(s.zero(), alphabet[0]));
}

class GreOmegaBuilder {
 public:
  GreOmegaBuilder(Semiring s, const Alphabet& alphabet, const CompileOptions& opt)
      : s_(s), alphabet_(alphabet), opt_(opt), finite_(s, alphabet, opt) {}

  Ast formula(const Ast& zeta) {
    const Node& n = *zeta;
    switch (n.op) {
      case Op::Const: return ast::cauchy(ast::eps(*n.weight), ast::omega(any_letter(s_, alphabet_)));
      case Op::Embed: return nba_to_zero_one_omega_re(ldlo_to_nba(n.kid(0), alphabet_, opt_), s_);
      case Op::OPlus: return ast::sum(formula(n.kid(0)), formula(n.kid(1)));
      case Op::OTimes: return ast::hadamard(formula(n.kid(0)), formula(n.kid(1)));
      case Op::Diamond: return diamond(n.kid(0), n.kid(1));
      default: throw UsageError("not a weighted LDL-omega formula");
    }
  }

 private:
  Ast diamond(const Ast& pi, const Ast& zeta) {
    const Node& n = *pi;
    switch (n.op) {
      case Op::Step: return ast::cauchy(letter_sum(n.kid(0), s_, alphabet_), formula(zeta));
      case Op::Test:
        if (is_weighted_true(zeta)) return formula(n.kid(0));
        if (is_weighted_true(n.kid(0))) return formula(zeta);
        return ast::hadamard(formula(n.kid(0)), formula(zeta));
      case Op::Choice: return ast::sum(diamond(n.kid(0), zeta), diamond(n.kid(1), zeta));
      case Op::Seq:
        return ast::cauchy(finite_.diamond(n.kid(0), ast::weighted_true()), diamond(n.kid(1), zeta));
      case Op::OmegaIter:
        if (!is_weighted_true(zeta)) return zero_omega(s_, alphabet_);
        return ast::omega(finite_.diamond(n.kid(0), ast::weighted_true()));
      default: throw UsageError("not a weighted LDL-omega path");
    }
  }

  Semiring s_;
  const Alphabet& alphabet_;
  const CompileOptions& opt_;
  GreBuilder finite_;
};

Ast greo_rec(const Ast& e, const Alphabet& alphabet) {
  const Node& n = *e;
  switch (n.op) {
    case Op::Sum: return ast::oplus(greo_rec(n.kid(0), alphabet), greo_rec(n.kid(1), alphabet));
    case Op::Hadamard:
      return ast::diamond(ast::test(greo_rec(n.kid(0), alphabet)), greo_rec(n.kid(1), alphabet));
    case Op::Cauchy: {
      const Ast f = gre_to_wldl(n.kid(0), alphabet);
      return ast::diamond(ast::seq(ast::test(f), ast::test(greo_rec(n.kid(1), alphabet))), ast::weighted_true());
    }
    case Op::Omega:
      return ast::diamond(ast::omega_iter(ast::test(gre_to_wldl(n.kid(0), alphabet))), ast::weighted_true());
    default: throw UsageError("not an omega expression");
  }
}

}  // namespace

Ast letter_sum(const Ast& prop, Semiring s, const Alphabet& alphabet) {
  Ast r;
  for (char c : alphabet.letters()) {
    if (!prop_holds(prop, c)) continue;
    Ast l = ast::letter(s.one(), c);
    r = r ? ast::sum(r, l) : l;
  }
  return r ? r : ast::eps(s.zero());
}

Nfa ldl_to_nfa(const Ast& psi, const Alphabet& alphabet, const CompileOptions& opt) {
  NfaBuilder b(alphabet, opt);
  return b.formula(psi);
}

Ast gre_to_wldl(const Ast& e, const Alphabet& alphabet) {
  const Node& n = *e;
  switch (n.op) {
    case Op::Letter:
      if (n.letter == 0) return ast::otimes(ast::constant(*n.weight), ast::embed(none_of(alphabet)));
      return ast::diamond(ast::test(ast::otimes(ast::constant(*n.weight), ast::embed(ast::atom(n.letter)))),
                          ast::embed(expand_last(alphabet)));
    case Op::Sum: return ast::oplus(gre_to_wldl(n.kid(0), alphabet), gre_to_wldl(n.kid(1), alphabet));
    case Op::Cauchy:
      return ast::diamond(ast::seq(ast::test(gre_to_wldl(n.kid(0), alphabet)),
                                   ast::test(gre_to_wldl(n.kid(1), alphabet))),
                          ast::weighted_true());
    case Op::Plus:
      return ast::diamond(ast::iter(ast::test(gre_to_wldl(n.kid(0), alphabet))), ast::weighted_true());
    case Op::Hadamard:
      return ast::diamond(ast::test(gre_to_wldl(n.kid(0), alphabet)), gre_to_wldl(n.kid(1), alphabet));
    default: throw UsageError("not a finite rational expression");
  }
}

Ast wldl_to_gre(const Ast& phi, Semiring s, const Alphabet& alphabet, const CompileOptions& opt) {
  check_proper(phi, s);
  GreBuilder b(s, alphabet, opt);
  return b.formula(phi);
}

Wfa wldl_to_wfa(const Ast& phi, Semiring s, const Alphabet& alphabet, const CompileOptions& opt) {
  check_proper(phi, s);
  WfaBuilder b(s, alphabet, opt);
  return b.formula(phi);
}

EquivResult wldl_equiv(const Ast& phi1, const Ast& phi2, Semiring s, const Alphabet& alphabet,
                       const CompileOptions& opt) {
  if (!s.field()) throw NotAField(std::string(s.name()));
  return wfa_equiv_field(wldl_to_wfa(phi1, s, alphabet, opt), wldl_to_wfa(phi2, s, alphabet, opt));
}

Ast greo_to_wldlo(const Ast& e, const Alphabet& alphabet) { return greo_rec(e, alphabet); }

Ast wldlo_to_greo(const Ast& zeta, Semiring s, const Alphabet& alphabet, const CompileOptions& opt) {
  if (!s.idempotent()) throw UnsupportedOmegaSemiring(std::string(s.name()));
  check_proper(zeta, s);
  GreOmegaBuilder b(s, alphabet, opt);
  return b.formula(zeta);
}

}  // namespace wldl
