#include "wldl/finite_semantics.hpp"

#include <unordered_map>
#include <vector>

#include "wldl/error.hpp"
#include "wldl/syntax.hpp"

namespace wldl {

namespace {

struct Key {
  const Node* a;
  const Node* b;
  std::uint32_t i;
  std::uint32_t j;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = std::hash<const void*>{}(k.a);
    h = h * 31 + std::hash<const void*>{}(k.b);
    return h * 1000003 + (static_cast<std::size_t>(k.i) << 16) + k.j;
  }
};

// Classical LDL on infix subwords w[i..j), each treated as a word of its own.
class ClassicalEval {
 public:
  explicit ClassicalEval(const Word& w) : w_(w) {}

  bool sat(const Ast& psi, std::uint32_t i, std::uint32_t j) {
    const Node& n = *psi;
    switch (n.op) {
      case Op::True: return true;
      case Op::False: return false;
      case Op::Atom: return i < j && w_[i] == n.letter;
      case Op::Not: return !sat(n.kid(0), i, j);
      case Op::And: return sat(n.kid(0), i, j) && sat(n.kid(1), i, j);
      case Op::Or: return sat(n.kid(0), i, j) || sat(n.kid(1), i, j);
      case Op::Diamond: return diamond(n.kid(0), n.kid(1), i, j);
      default: throw UsageError("not a classical LDL formula");
    }
  }

  // w[i..j) ⊨ ⟨θ⟩ψ
  bool diamond(const Ast& theta, const Ast& psi, std::uint32_t i, std::uint32_t j) {
    const Key key{theta.get(), psi.get(), i, j};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const bool r = diamond_uncached(theta, psi, i, j);
    memo_.emplace(key, r);
    return r;
  }

 private:
  bool diamond_uncached(const Ast& theta, const Ast& psi, std::uint32_t i, std::uint32_t j) {
    const Node& n = *theta;
    switch (n.op) {
      case Op::Step: return i < j && prop_holds(n.kid(0), w_[i]) && sat(psi, i + 1, j);
      case Op::Test: return sat(n.kid(0), i, j) && sat(psi, i, j);
      case Op::Choice: return diamond(n.kid(0), psi, i, j) || diamond(n.kid(1), psi, i, j);
      case Op::Seq:
        for (std::uint32_t k = i; k <= j; ++k)
          if (diamond(n.kid(0), ast::tt(), i, k) && diamond(n.kid(1), psi, k, j)) return true;
        return false;
      case Op::Iter: {
        // ⟨θ^n⟩ψ for 1 ≤ n ≤ |w|: n-1 chunks satisfying ⟨θ⟩true, then ⟨θ⟩ψ.
        const std::uint32_t len = j - i;
        std::vector<char> reach(len + 1, 0);
        reach[0] = 1;
        for (std::uint32_t round = 1; round <= len; ++round) {
          for (std::uint32_t k = 0; k <= len; ++k)
            if (reach[k] && diamond(n.kid(0), psi, i + k, j)) return true;
          std::vector<char> next(len + 1, 0);
          for (std::uint32_t k = 0; k <= len; ++k) {
            if (!reach[k]) continue;
            for (std::uint32_t m = k; m <= len; ++m)
              if (!next[m] && diamond(n.kid(0), ast::tt(), i + k, i + m)) next[m] = 1;
          }
          if (next == reach) break;
          reach = std::move(next);
        }
        return false;
      }
      default: throw UsageError("not a classical path");
    }
  }

  const Word& w_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

class WeightedEval {
 public:
  WeightedEval(const Word& w, Semiring s) : w_(w), s_(s), classical_(w) {}

  Weight value(const Ast& phi, std::uint32_t i, std::uint32_t j) {
    const Node& n = *phi;
    switch (n.op) {
      case Op::Const: return *n.weight;
      case Op::Embed: return indicator(s_, classical_.sat(n.kid(0), i, j));
      case Op::OPlus: return value(n.kid(0), i, j) + value(n.kid(1), i, j);
      case Op::OTimes: {
        Weight l = value(n.kid(0), i, j);
        if (l.is_zero()) return l;
        return l * value(n.kid(1), i, j);
      }
      case Op::Diamond: return diamond(n.kid(0), n.kid(1), i, j);
      default: throw UsageError("not a weighted LDL formula");
    }
  }

  // ‖⟨ρ⟩φ‖(w[i..j))
  Weight diamond(const Ast& rho, const Ast& phi, std::uint32_t i, std::uint32_t j) {
    const Key key{rho.get(), phi.get(), i, j};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Weight r = diamond_uncached(rho, phi, i, j);
    memo_.emplace(key, r);
    return r;
  }

 private:
  Weight diamond_uncached(const Ast& rho, const Ast& phi, std::uint32_t i, std::uint32_t j) {
    const Node& n = *rho;
    switch (n.op) {
      case Op::Step:
        if (i < j && prop_holds(n.kid(0), w_[i])) return value(phi, i + 1, j);
        return s_.zero();
      case Op::Test: {
        Weight l = value(n.kid(0), i, j);
        if (l.is_zero()) return l;
        return l * value(phi, i, j);
      }
      case Op::Choice: return diamond(n.kid(0), phi, i, j) + diamond(n.kid(1), phi, i, j);
      case Op::Seq: {
        Weight total = s_.zero();
        for (std::uint32_t k = i; k <= j; ++k) {
          Weight l = diamond(n.kid(0), ast::weighted_true(), i, k);
          if (!l.is_zero()) total += l * diamond(n.kid(1), phi, k, j);
        }
        return total;
      }
      case Op::Iter: {
        // S(i,j) = ⟨ρ⟩φ(i,j) + Σ_{i<k≤j} ⟨ρ⟩true(i,k)·S(k,j); properness makes
        // every non-final chunk nonempty, so at most |w|+1 factors occur.
        Weight total = diamond(n.kid(0), phi, i, j);
        for (std::uint32_t k = i + 1; k <= j; ++k) {
          Weight l = diamond(n.kid(0), ast::weighted_true(), i, k);
          if (!l.is_zero()) total += l * diamond(rho, phi, k, j);
        }
        return total;
      }
      default: throw UsageError("not a finite weighted path");
    }
  }

  const Word& w_;
  Semiring s_;
  ClassicalEval classical_;
  std::unordered_map<Key, Weight, KeyHash> memo_;
};

class GreEval {
 public:
  GreEval(const Word& w, Semiring s) : w_(w), s_(s) {}

  Weight value(const Ast& e, std::uint32_t i, std::uint32_t j) {
    const Key key{e.get(), nullptr, i, j};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Weight r = uncached(e, i, j);
    memo_.emplace(key, r);
    return r;
  }

 private:
  Weight uncached(const Ast& e, std::uint32_t i, std::uint32_t j) {
    const Node& n = *e;
    switch (n.op) {
      case Op::Letter:
        if (n.letter == 0) return i == j ? *n.weight : s_.zero();
        return j == i + 1 && w_[i] == n.letter ? *n.weight : s_.zero();
      case Op::Sum: return value(n.kid(0), i, j) + value(n.kid(1), i, j);
      case Op::Hadamard: {
        Weight l = value(n.kid(0), i, j);
        if (l.is_zero()) return l;
        return l * value(n.kid(1), i, j);
      }
      case Op::Cauchy: {
        Weight total = s_.zero();
        for (std::uint32_t k = i; k <= j; ++k) {
          Weight l = value(n.kid(0), i, k);
          if (!l.is_zero()) total += l * value(n.kid(1), k, j);
        }
        return total;
      }
      case Op::Plus: {
        Weight total = value(n.kid(0), i, j);
        for (std::uint32_t k = i + 1; k < j; ++k) {
          Weight l = value(n.kid(0), i, k);
          if (!l.is_zero()) total += l * value(e, k, j);
        }
        return total;
      }
      default: throw UsageError("not a finite rational expression");
    }
  }

  const Word& w_;
  Semiring s_;
  std::unordered_map<Key, Weight, KeyHash> memo_;
};

const Word kEmpty;

void check_proper_rec(const Ast& a, Semiring s) {
  if (a->op == Op::Embed) return;
  for (const auto& k : a->kids) check_proper_rec(k, s);
  if (a->op == Op::Iter || a->op == Op::OmegaIter) {
    WeightedEval ev(kEmpty, s);
    if (!ev.diamond(a->kid(0), ast::weighted_true(), 0, 0).is_zero())
      throw ImproperIteration(print(a->kid(0), Sort::WPath));
  }
}

// Classical LTL at position i of w; positions past the end behave as ε.
bool ltl_at(const Ast& psi, const Word& w, std::size_t i) {
  const Node& n = *psi;
  const std::size_t len = w.size();
  switch (n.op) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return i < len && w[i] == n.letter;
    case Op::Not: return !ltl_at(n.kid(0), w, i);
    case Op::And: return ltl_at(n.kid(0), w, i) && ltl_at(n.kid(1), w, i);
    case Op::Or: return ltl_at(n.kid(0), w, i) || ltl_at(n.kid(1), w, i);
    case Op::Next: return i + 1 < len && ltl_at(n.kid(0), w, i + 1);
    case Op::Until:
      for (std::size_t k = i; k < len; ++k) {
        if (ltl_at(n.kid(1), w, k)) return true;
        if (!ltl_at(n.kid(0), w, k)) return false;
      }
      return false;
    default: throw UsageError("not a classical LTL formula");
  }
}

// Weighted LTL on every suffix, computed bottom-up: result[i] = ‖φ‖(w≥i),
// with result[|w|] the value on ε.
std::vector<Weight> wltl_suffixes(const Ast& phi, const Word& w, Semiring s) {
  const Node& n = *phi;
  const std::size_t len = w.size();
  std::vector<Weight> out(len + 1, s.zero());
  switch (n.op) {
    case Op::Const:
      std::fill(out.begin(), out.end(), *n.weight);
      return out;
    case Op::Embed:
      for (std::size_t i = 0; i <= len; ++i) out[i] = indicator(s, ltl_at(n.kid(0), w, i));
      return out;
    case Op::OPlus:
    case Op::OTimes: {
      auto l = wltl_suffixes(n.kid(0), w, s);
      auto r = wltl_suffixes(n.kid(1), w, s);
      for (std::size_t i = 0; i <= len; ++i) out[i] = n.op == Op::OPlus ? l[i] + r[i] : l[i] * r[i];
      return out;
    }
    case Op::Next: {
      auto x = wltl_suffixes(n.kid(0), w, s);
      for (std::size_t i = 0; i <= len; ++i) out[i] = x[std::min(i + 1, len)];
      return out;
    }
    case Op::BoxTimes: {
      auto x = wltl_suffixes(n.kid(0), w, s);
      out[len] = s.one();
      for (std::size_t i = len; i-- > 0;) out[i] = x[i] * out[i + 1];
      return out;
    }
    case Op::Until: {
      // ‖φ U ψ‖(w≥i) = ψ(i) + φ(i)·‖φ U ψ‖(w≥i+1), and zero on ε
      auto l = wltl_suffixes(n.kid(0), w, s);
      auto r = wltl_suffixes(n.kid(1), w, s);
      out[len] = s.zero();
      for (std::size_t i = len; i-- > 0;) out[i] = r[i] + l[i] * out[i + 1];
      return out;
    }
    default: throw UsageError("not a weighted LTL formula");
  }
}

}  // namespace

bool prop_holds(const Ast& prop, char letter) {
  const Node& n = *prop;
  switch (n.op) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return n.letter == letter;
    case Op::Not: return !prop_holds(n.kid(0), letter);
    case Op::And: return prop_holds(n.kid(0), letter) && prop_holds(n.kid(1), letter);
    case Op::Or: return prop_holds(n.kid(0), letter) || prop_holds(n.kid(1), letter);
    default: throw UsageError("not a propositional formula");
  }
}

bool sat_ldl(const Ast& psi, const Word& w) {
  ClassicalEval ev(w);
  return ev.sat(psi, 0, static_cast<std::uint32_t>(w.size()));
}

void check_proper(const Ast& phi, Semiring semiring) { check_proper_rec(phi, semiring); }

bool is_proper_path(const Ast& rho, Semiring semiring) {
  check_proper_rec(rho, semiring);
  WeightedEval ev(kEmpty, semiring);
  return ev.diamond(rho, ast::weighted_true(), 0, 0).is_zero();
}

Weight eval_wldl(const Ast& phi, const Word& w, Semiring semiring) {
  check_proper(phi, semiring);
  WeightedEval ev(w, semiring);
  return ev.value(phi, 0, static_cast<std::uint32_t>(w.size()));
}

void check_proper_gre(const Ast& e, Semiring semiring) {
  for (const auto& k : e->kids) check_proper_gre(k, semiring);
  if (e->op == Op::Plus || e->op == Op::Omega) {
    GreEval ev(kEmpty, semiring);
    if (!ev.value(e->kid(0), 0, 0).is_zero()) throw ImproperPlus(print(e->kid(0), Sort::Gre));
  }
}

Weight eval_gre(const Ast& e, const Word& w, Semiring semiring) {
  check_proper_gre(e, semiring);
  GreEval ev(w, semiring);
  return ev.value(e, 0, static_cast<std::uint32_t>(w.size()));
}

bool sat_ltl(const Ast& psi, const Word& w) { return ltl_at(psi, w, 0); }

Weight eval_wltl(const Ast& phi, const Word& w, Semiring semiring) {
  return wltl_suffixes(phi, w, semiring)[0];
}

}  // namespace wldl
